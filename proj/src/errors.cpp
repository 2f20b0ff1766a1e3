#include "tailspace/errors.hpp"

namespace tailspace {

CapacityError::CapacityError(int n, int n_max)
    : std::length_error("dimension n=" + std::to_string(n) +
                        " exceeds dense capacity n_max=" + std::to_string(n_max)),
      n_(n),
      n_max_(n_max) {}

}  // namespace tailspace
