// Copyright 2026 The spinent Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file error.hpp
 * Error type shared by every spinent module.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spinent {

enum class ErrorKind {
    NotHermitian,
    DimensionTooLarge,
    DimensionMismatch,
    SiteOutOfRange,
    TooManySites,
    InvalidSpec,
    InvalidState,
    InvalidParams,
    NonPositiveTemperature,
    NotAntiferromagnetic,
    NonUniformG,
    TooFewPoints,
    SingularJacobian,
    MalformedRow,
    EmptyDataset,
    Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SiteOutOfRange: return "SiteOutOfRange";
    case ErrorKind::TooManySites: return "TooManySites";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorKind::NotAntiferromagnetic: return "NotAntiferromagnetic";
    case ErrorKind::NonUniformG: return "NonUniformG";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

/// Exception carrying a machine-checkable kind. `detail()` holds a line
/// number for parse errors and an iteration index for fit failures.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message, std::size_t detail = 0)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind), detail_(detail) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t detail() const noexcept { return detail_; }

  private:
    ErrorKind kind_;
    std::size_t detail_;
};

inline void require_positive_temperature(double temperature) {
    if (!(temperature > 0.0)) {
        throw Error(ErrorKind::NonPositiveTemperature,
                    "temperature must be > 0 K, got " +
                        std::to_string(temperature));
    }
}

} // namespace spinent
