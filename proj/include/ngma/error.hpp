// ngma-sim: rate-level simulator for multi-antenna NOMA/SDMA multiple access
// Copyright (C) 2026 The ngma-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef NGMA_ERROR_HPP
#define NGMA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ngma
{

enum class ErrorKind
{
    InvalidSpec,
    DimensionError,
    InvalidUser,
    NotCoClustered,
    InvalidClusterSize,
    Overloaded,
    RankDeficient,
    ZeroChannel,
    SearchTooLarge,
    Infeasible
};

constexpr std::string_view to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::InvalidSpec:
        return "InvalidSpec";
    case ErrorKind::DimensionError:
        return "DimensionError";
    case ErrorKind::InvalidUser:
        return "InvalidUser";
    case ErrorKind::NotCoClustered:
        return "NotCoClustered";
    case ErrorKind::InvalidClusterSize:
        return "InvalidClusterSize";
    case ErrorKind::Overloaded:
        return "Overloaded";
    case ErrorKind::RankDeficient:
        return "RankDeficient";
    case ErrorKind::ZeroChannel:
        return "ZeroChannel";
    case ErrorKind::SearchTooLarge:
        return "SearchTooLarge";
    case ErrorKind::Infeasible:
        return "Infeasible";
    }
    return "Unknown";
}

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string &message)
{
    if (!condition)
        throw Error(kind, message);
}

} // namespace ngma

#endif
