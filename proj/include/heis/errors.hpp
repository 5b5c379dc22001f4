#pragma once

#include <stdexcept>
#include <string>

namespace heis {

/// A lattice series whose terms do not shrink (the line function has no decay).
class TruncationError : public std::runtime_error {
  public:
    explicit TruncationError(const std::string &what) : std::runtime_error(what) {}
};

/// Singular values too close to the nullity threshold to decide a dimension.
class IllConditionedError : public std::runtime_error {
  public:
    explicit IllConditionedError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace heis
