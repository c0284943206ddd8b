#pragma once

// Exact-arithmetic core: rationals, polynomials in t, dense linear algebra over
// Q and Q(t), limits of subspace families at t = 0 and polynomial interpolation.

#include <cstddef>
#include <span>
#include <vector>

#include "kchow/matrix.hpp"
#include "kchow/poly.hpp"
#include "kchow/rat.hpp"

namespace kchow::exact {

/// Kernel of a matrix with entries in Q[t], taken over the field Q(t). The
/// returned vectors are polynomial and primitive.
std::vector<PolyVec> rational_function_kernel(const std::vector<PolyVec>& rows, std::size_t cols);

/// Limit at t = 0 of the subspace spanned by `basis` (vectors in Q[t]^M that are
/// independent over Q(t)).
///
/// While the values at t = 0 are dependent with relation c, the participating
/// vector of highest degree (lowest index on ties) is replaced by
/// (sum c_i v_i(t)) / t^nu, nu maximal. Each replacement strictly enlarges the
/// Q[t]-lattice inside its saturation, so the loop ends; the bound
/// D * max degree * M catches inputs dependent over Q(t) (MalformedInput).
std::vector<RatVec> limit_subspace(const std::vector<PolyVec>& basis);

struct Sample {
  long r = 0;
  Rat value;
};

Rat eval_poly(const RatVec& coeffs, const Rat& x);

/// Coefficients (lowest power first) of the unique polynomial of the given degree
/// through `samples`. Every `verify` sample must lie on it exactly, otherwise
/// VerificationFailed: the sampled function is not yet polynomial on that range.
RatVec interpolate_poly(std::span<const Sample> samples, std::size_t degree, std::span<const Sample> verify);

/// f(r) = poly(r) + (-1)^r alternating(r).
struct QuasiPoly {
  RatVec poly;
  RatVec alternating;
};

Rat eval_quasi_poly(const QuasiPoly& q, long r);

/// As interpolate_poly for a period-2 quasi-polynomial whose polynomial part has
/// the given degree and whose alternating part has degree alt_degree. Needs
/// degree + alt_degree + 2 samples that determine it (both parities present),
/// otherwise std::invalid_argument.
QuasiPoly interpolate_quasi_poly(std::span<const Sample> samples, std::size_t degree, std::size_t alt_degree,
                                 std::span<const Sample> verify);

/// Exact least-squares polynomial fit via the normal equations.
RatVec least_squares_poly(std::span<const Sample> samples, std::size_t degree);

}  // namespace kchow::exact
