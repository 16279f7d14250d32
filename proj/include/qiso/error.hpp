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

#ifndef QISO_ERROR_HPP
#define QISO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qiso {

enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    OutOfRange,
    NotPositive,
    NotUnitary,
    NotAbelian,
    TooLarge,
    Parse,
    Unsupported,
};

inline const char *error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument:
            return "invalid_argument";
        case ErrorKind::DimensionMismatch:
            return "dimension_mismatch";
        case ErrorKind::OutOfRange:
            return "out_of_range";
        case ErrorKind::NotPositive:
            return "not_positive";
        case ErrorKind::NotUnitary:
            return "not_unitary";
        case ErrorKind::NotAbelian:
            return "not_abelian";
        case ErrorKind::TooLarge:
            return "too_large";
        case ErrorKind::Parse:
            return "parse";
        case ErrorKind::Unsupported:
            return "unsupported";
    }
    return "unknown";
}

/// Every failure raised by the library. The kind is stable and machine readable.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {
    }
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string &msg) {
    if (!cond) {
        throw Error(kind, msg);
    }
}

}  // namespace qiso

#endif
