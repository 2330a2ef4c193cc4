#pragma once

#include <stdexcept>
#include <string>

namespace miao {

/// Constant or otherwise unusable input series.
class DegenerateSeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rank-deficient regressor matrix (e.g. two identical series).
class CollinearityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace miao
