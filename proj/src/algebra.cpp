#include "strel/algebra.hpp"

#include <cmath>

namespace strel {

bool DistanceDomain::contains(Distance d) const noexcept {
  if (d == infinity()) return true;
  if (!std::isfinite(d) || d < 0.0) return false;
  return kind_ == Kind::real || std::floor(d) == d;
}

}  // namespace strel
