// Copyright 2026 The rgan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RGAN_ERROR_HPP
#define RGAN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace rgan {

enum class ErrorKind {
    NonPositiveDensity,
    BoxOutOfDomain,
    ZeroMarginal,
    InsufficientResolution,
    DegenerateJacobian,
    RootNotBracketed,
    DiscriminatorOutOfRange,
    ParamsOutOfBox,
    NetTooLarge,
    NonConvergence,
    IntegralDivergent,
    ConfigInvalid,
    Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorKind::BoxOutOfDomain: return "BoxOutOfDomain";
    case ErrorKind::ZeroMarginal: return "ZeroMarginal";
    case ErrorKind::InsufficientResolution: return "InsufficientResolution";
    case ErrorKind::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorKind::RootNotBracketed: return "RootNotBracketed";
    case ErrorKind::DiscriminatorOutOfRange: return "DiscriminatorOutOfRange";
    case ErrorKind::ParamsOutOfBox: return "ParamsOutOfBox";
    case ErrorKind::NetTooLarge: return "NetTooLarge";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::IntegralDivergent: return "IntegralDivergent";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

/// Single exception type for the library; `kind()` carries the error class.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

} // namespace rgan

#endif // RGAN_ERROR_HPP
