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

#ifndef QISO_PAULI_GRAPH_HPP
#define QISO_PAULI_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qiso/error.hpp"

namespace qiso {

/// Simple undirected graph on at most 64 vertices, adjacency stored as bit rows.
class Graph {
   public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(static_cast<size_t>(n), 0) {
        require(n >= 0 && n <= 64, ErrorKind::TooLarge, "graph vertex count out of range");
    }
    Graph(int n, const std::vector<std::pair<int, int>> &edges) : Graph(n) {
        for (auto [u, v] : edges) {
            add_edge(u, v);
        }
    }

    static Graph path(int n) {
        Graph g(n);
        for (int i = 0; i + 1 < n; i++) {
            g.add_edge(i, i + 1);
        }
        return g;
    }
    static Graph cycle(int n) {
        Graph g = path(n);
        if (n >= 3) {
            g.add_edge(n - 1, 0);
        }
        return g;
    }
    static Graph star(int leaves) {
        Graph g(leaves + 1);
        for (int i = 1; i <= leaves; i++) {
            g.add_edge(0, i);
        }
        return g;
    }
    static Graph complete(int n) {
        Graph g(n);
        for (int i = 0; i < n; i++) {
            for (int j = i + 1; j < n; j++) {
                g.add_edge(i, j);
            }
        }
        return g;
    }

    void add_edge(int u, int v) {
        require(u >= 0 && u < n_ && v >= 0 && v < n_, ErrorKind::OutOfRange,
                "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
        require(u != v, ErrorKind::InvalidArgument, "self loops are not allowed");
        adj_[static_cast<size_t>(u)] |= uint64_t{1} << v;
        adj_[static_cast<size_t>(v)] |= uint64_t{1} << u;
    }

    int n() const {
        return n_;
    }
    bool has_edge(int u, int v) const {
        return (adj_.at(static_cast<size_t>(u)) >> v) & 1;
    }
    uint64_t neighbours(int v) const {
        return adj_.at(static_cast<size_t>(v));
    }
    int degree(int v) const {
        return std::popcount(neighbours(v));
    }
    int edge_count() const {
        int s = 0;
        for (uint64_t r : adj_) {
            s += std::popcount(r);
        }
        return s / 2;
    }
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < n_; u++) {
            for (int v = u + 1; v < n_; v++) {
                if (has_edge(u, v)) {
                    e.emplace_back(u, v);
                }
            }
        }
        return e;
    }
    std::vector<int> degree_sequence() const {
        std::vector<int> d;
        for (int v = 0; v < n_; v++) {
            d.push_back(degree(v));
        }
        std::sort(d.begin(), d.end());
        return d;
    }

    /// Graph with edge (perm[u], perm[v]) for every edge (u, v).
    Graph relabel(const std::vector<int> &perm) const {
        require(static_cast<int>(perm.size()) == n_, ErrorKind::DimensionMismatch, "relabel size mismatch");
        Graph g(n_);
        for (auto [u, v] : edges()) {
            g.add_edge(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]);
        }
        return g;
    }

    bool operator==(const Graph &o) const = default;

    /// Plain text: n on the first line, then one "u v" pair per line. '#' starts a comment.
    static Graph parse_edge_list(const std::string &text) {
        std::istringstream in(text);
        std::string line;
        int n = -1;
        std::vector<std::pair<int, int>> edges;
        int lineno = 0;
        while (std::getline(in, line)) {
            lineno++;
            auto hash = line.find('#');
            if (hash != std::string::npos) {
                line = line.substr(0, hash);
            }
            std::istringstream ls(line);
            std::vector<long long> nums;
            long long x;
            while (ls >> x) {
                nums.push_back(x);
            }
            std::string rest;
            ls.clear();
            if (ls >> rest) {
                throw Error(ErrorKind::Parse, "edge list line " + std::to_string(lineno) + ": unexpected token");
            }
            if (nums.empty()) {
                continue;
            }
            if (n < 0) {
                require(nums.size() == 1 && nums[0] >= 0 && nums[0] <= 64, ErrorKind::Parse,
                        "edge list must start with a vertex count in [0, 64]");
                n = static_cast<int>(nums[0]);
                continue;
            }
            require(nums.size() == 2, ErrorKind::Parse, "edge list line " + std::to_string(lineno) + ": need 'u v'");
            require(nums[0] >= 0 && nums[0] < n && nums[1] >= 0 && nums[1] < n, ErrorKind::Parse,
                    "edge list line " + std::to_string(lineno) + ": vertex out of range");
            require(nums[0] != nums[1], ErrorKind::Parse, "edge list line " + std::to_string(lineno) + ": self loop");
            edges.emplace_back(static_cast<int>(nums[0]), static_cast<int>(nums[1]));
        }
        require(n >= 0, ErrorKind::Parse, "empty edge list");
        return Graph(n, edges);
    }

    std::string to_edge_list() const {
        std::ostringstream out;
        out << n_ << "\n";
        for (auto [u, v] : edges()) {
            out << u << " " << v << "\n";
        }
        return out.str();
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> a(static_cast<size_t>(n_), std::vector<int>(static_cast<size_t>(n_), 0));
        for (int u = 0; u < n_; u++) {
            for (int v = 0; v < n_; v++) {
                a[static_cast<size_t>(u)][static_cast<size_t>(v)] = has_edge(u, v) ? 1 : 0;
            }
        }
        return a;
    }

    static Graph from_adjacency(const std::vector<std::vector<int>> &a) {
        int n = static_cast<int>(a.size());
        Graph g(n);
        for (int u = 0; u < n; u++) {
            require(static_cast<int>(a[static_cast<size_t>(u)].size()) == n, ErrorKind::Parse, "adjacency not square");
            for (int v = 0; v < n; v++) {
                int e = a[static_cast<size_t>(u)][static_cast<size_t>(v)];
                int et = a[static_cast<size_t>(v)][static_cast<size_t>(u)];
                require(e == 0 || e == 1, ErrorKind::Parse, "adjacency entries must be 0/1");
                require(e == et, ErrorKind::Parse, "adjacency not symmetric");
                require(u != v || e == 0, ErrorKind::Parse, "adjacency diagonal must be zero");
                if (u < v && e) {
                    g.add_edge(u, v);
                }
            }
        }
        return g;
    }

   private:
    int n_ = 0;
    std::vector<uint64_t> adj_;
};

/// Brute-force isomorphism search; returns perm with g1.relabel(perm) == g2. Only for n <= 9.
inline std::optional<std::vector<int>> find_isomorphism(const Graph &g1, const Graph &g2) {
    if (g1.n() != g2.n() || g1.edge_count() != g2.edge_count() || g1.degree_sequence() != g2.degree_sequence()) {
        return std::nullopt;
    }
    require(g1.n() <= 9, ErrorKind::TooLarge, "brute-force isomorphism only for n <= 9");
    std::vector<int> perm(static_cast<size_t>(g1.n()));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (g1.relabel(perm) == g2) {
            return perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

/// All simple graphs on n vertices (2^{n(n-1)/2} of them), n <= 6.
inline std::vector<Graph> all_graphs(int n) {
    require(n >= 0 && n <= 6, ErrorKind::TooLarge, "all_graphs only for n <= 6");
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; u++) {
        for (int v = u + 1; v < n; v++) {
            slots.emplace_back(u, v);
        }
    }
    std::vector<Graph> out;
    for (uint64_t m = 0; m < (uint64_t{1} << slots.size()); m++) {
        Graph g(n);
        for (size_t i = 0; i < slots.size(); i++) {
            if ((m >> i) & 1) {
                g.add_edge(slots[i].first, slots[i].second);
            }
        }
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace qiso

#endif
