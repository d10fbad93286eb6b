#pragma once

#include <stdexcept>
#include <string>

namespace gadk {

// Base type for every library error so the CLI boundary can map the whole
// family to one exit code.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct ContractError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct StaleCacheError : Error { using Error::Error; };
struct CorruptionError : Error { using Error::Error; };
struct UndefinedMetricError : Error { using Error::Error; };

}  // namespace gadk
