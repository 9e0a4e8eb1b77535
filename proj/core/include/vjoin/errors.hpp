#pragma once

#include <stdexcept>
#include <string>

namespace vjoin {

/// Invalid parameters, mismatched dimensions, or an index that does not fit
/// the requested join variant.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or truncated on-disk data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wrong magic bytes or an unsupported format version.
class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace vjoin
