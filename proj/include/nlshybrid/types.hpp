#pragma once

#include <complex>
#include <Eigen/Core>

namespace nlshybrid {

using Real = double;
using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Frequency convention used throughout.
//
// Frequencies are measured in cycles per tooth: the n-th torus harmonic is
// e_n(x) = exp(2*pi*i*n*x) on the unit cell x in [0,1).  In these units the
// free Schroedinger semigroup acts on a tone of frequency xi by the symbol
// exp(-i*t*xi^2); the spatial variable of the corresponding constant-
// coefficient equation is x_internal = 2*pi*x.  The rescaling constant below
// is recorded in run manifests so results can be mapped to other unit
// choices.
inline constexpr Real kSpatialRescale = 6.283185307179586476925286766559;

}  // namespace nlshybrid
