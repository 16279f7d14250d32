// Copyright 2026 The qiso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QISO_REDUCTIONS_GRAPH_LIBRARY_HPP
#define QISO_REDUCTIONS_GRAPH_LIBRARY_HPP

#include <map>

#include "qiso/pauli/graph.hpp"

namespace qiso {

/// Upper-triangle adjacency bits in row-major order (pair (u, v), u < v).
inline uint64_t adjacency_code(const Graph &g) {
    uint64_t code = 0;
    int bit = 0;
    for (int u = 0; u < g.n(); u++) {
        for (int v = u + 1; v < g.n(); v++, bit++) {
            if (g.has_edge(u, v)) {
                code |= uint64_t{1} << bit;
            }
        }
    }
    return code;
}

/// Smallest adjacency code over all relabelings; equal iff the graphs are isomorphic. n <= 8.
inline uint64_t canonical_code(const Graph &g) {
    require(g.n() <= 8, ErrorKind::TooLarge, "canonical_code only for n <= 8");
    std::vector<int> perm(static_cast<size_t>(g.n()));
    std::iota(perm.begin(), perm.end(), 0);
    uint64_t best = ~uint64_t{0};
    do {
        best = std::min(best, adjacency_code(g.relabel(perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// One representative per isomorphism class on n vertices, ordered by canonical code.
inline std::vector<Graph> isomorphism_class_representatives(int n) {
    std::map<uint64_t, Graph> reps;
    for (const Graph &g : all_graphs(n)) {
        reps.emplace(canonical_code(g), g);
    }
    std::vector<Graph> out;
    for (auto &[code, g] : reps) {
        out.push_back(g);
    }
    return out;
}

struct GraphPair {
    std::string name;
    Graph g1, g2;
};

/// Non-isomorphic pairs with equal vertex count, edge count and degree sequence on 2..max_n
/// vertices, followed by the path P4 against the star K_{1,3}.
inline std::vector<GraphPair> nonisomorphic_library(int max_n = 5) {
    require(max_n >= 2 && max_n <= 6, ErrorKind::TooLarge, "library only for 2 <= max_n <= 6");
    std::vector<GraphPair> out;
    for (int n = 2; n <= max_n; n++) {
        auto reps = isomorphism_class_representatives(n);
        for (size_t a = 0; a < reps.size(); a++) {
            for (size_t b = a + 1; b < reps.size(); b++) {
                const Graph &g1 = reps[a], &g2 = reps[b];
                if (g1.edge_count() > 0 && g1.edge_count() == g2.edge_count() &&
                    g1.degree_sequence() == g2.degree_sequence()) {
                    out.push_back({"n" + std::to_string(n) + "_" + std::to_string(adjacency_code(g1)) + "_vs_" +
                                       std::to_string(adjacency_code(g2)),
                                   g1, g2});
                }
            }
        }
    }
    out.push_back({"path4_vs_star3", Graph::path(4), Graph::star(3)});
    return out;
}

}  // namespace qiso

#endif
