#pragma once

// Solver paths shared by distance.cpp; not part of the public API.

#include "tailspace/distance.hpp"

namespace tailspace::detail {

// Restarted primal-dual hybrid gradient for p = 1 and p = inf.
DistanceResult l1_first_order(const BooleanFunction& f, const SpectralSet& levels, const DistanceOptions& opts);
DistanceResult linf_first_order(const BooleanFunction& f, const SpectralSet& levels, const DistanceOptions& opts);

// Newton paths for p in (1, inf), p != 2.
DistanceResult smooth_distance(const BooleanFunction& f, const SpectralSet& levels, double p,
                               const DistanceOptions& opts);

// Zero the coefficients outside `keep` in place.
void restrict_spectrum(std::vector<double>& coeffs, const SpectralSet& keep);

// Fill value/lower/gap from an exact-feasible g (spectrum on I) and a dual h
// (spectrum off I, already normalized).
void finish_dense(DistanceResult& r, const BooleanFunction& f, Spectrum g, BooleanFunction h, double tol);

}  // namespace tailspace::detail
