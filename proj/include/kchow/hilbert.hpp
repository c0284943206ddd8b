#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "kchow/exact.hpp"
#include "kchow/geometry.hpp"

namespace kchow::hilbert {

using exact::Int;
using exact::Rat;
using exact::RatMatrix;
using exact::RatVec;
using geometry::DiagonalOnePS;
using geometry::WeightedCycle;

using Exponent = std::vector<int>;

/// Degree-d monomials in n+1 variables, lexicographically descending
/// (x0^d first). Column basis for H^0(P^n, O(d)).
class MonomialBasis {
 public:
  MonomialBasis(std::size_t n, std::size_t d);

  std::size_t n() const { return n_; }
  std::size_t degree() const { return d_; }
  std::size_t size() const { return exps_.size(); }
  const Exponent& operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<Exponent>& exponents() const { return exps_; }
  /// Throws std::out_of_range for an exponent outside the basis.
  std::size_t index_of(const Exponent& e) const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<Exponent> exps_;
  std::map<Exponent, std::size_t> index_;
};

Int binomial(long n, long k);

/// Length of O/m^a at a smooth point of an n-fold: C(n+a-1, n).
std::int64_t fat_point_length(std::size_t n, std::size_t a);

/// H^0(I_Z^r(d)) data: vanishing order r*a_i at each support point.
struct FatPointSpec {
  WeightedCycle cycle;
  std::size_t degree = 0;
  std::size_t order_multiplier = 1;
};

/// One row per point p_i and multi-index beta with |beta| < r*a_i: the Hasse
/// derivative D^beta at p_i (that is, d^beta / beta!) in the affine chart of
/// p_i's first nonzero coordinate. Columns follow MonomialBasis(n, d).
RatMatrix jet_vanishing_matrix(const FatPointSpec& spec);

/// Number of rows jet_vanishing_matrix would have.
std::size_t jet_condition_count(const FatPointSpec& spec);

std::size_t h0_with_vanishing(const FatPointSpec& spec);

/// Sign of the weight carried by a monomial section. Calibrated end to end:
/// with -1, blowing up P^2 at a heavy point and degenerating along its
/// destabilising 1-PS gives a negative Futaki invariant.
inline constexpr int kSectionWeightSign = -1;

std::int64_t pairing(const DiagonalOnePS& alpha, const Exponent& m);
/// kSectionWeightSign * <w, m>.
std::int64_t monomial_weight(const DiagonalOnePS& alpha, const Exponent& m);

/// Trace of the induced action on all of H^0(P^n, O(d)).
Rat section_trace(const DiagonalOnePS& alpha, std::size_t n, std::size_t d);
/// Trace on a subspace given by a basis in monomial coordinates. The subspace
/// must split along weight blocks (SubspaceNotWeightHomogeneous otherwise).
Rat section_trace(const DiagonalOnePS& alpha, std::size_t n, std::size_t d, const std::vector<RatVec>& subspace);

/// Dimension of each weight block <w, m> of a weight-homogeneous subspace.
std::map<std::int64_t, std::size_t> weight_block_dims(const DiagonalOnePS& alpha, const MonomialBasis& basis,
                                                      const std::vector<RatVec>& subspace);

/// h^0 = c0 k^n + c1 k^(n-1) + ..., tr = b0 k^(n+1) + b1 k^n + ...
struct ExpansionCoeffs {
  Rat c0, c1, b0, b1;
  friend bool operator==(const ExpansionCoeffs&, const ExpansionCoeffs&) = default;
};

/// c1*b0/c0 - b1. Throws ZeroLeadingCoefficient when c0 = 0.
Rat futaki_from_coeffs(const ExpansionCoeffs& e);

/// Effect of changing the linearisation by lambda per unit of the polarisation:
/// A'_k = A_k + k*lambda*I.
ExpansionCoeffs lifting_shift(const ExpansionCoeffs& e, const Rat& lambda);

/// Coefficients of (P^n, O(1)) with the induced action, extracted by exact
/// interpolation of the full section spaces.
ExpansionCoeffs base_coeffs(std::size_t n, const DiagonalOnePS& alpha);

/// Weight of the induced action on the fibre of O(1) over lim alpha(t) q.
Rat fibre_weight(const geometry::ProjectivePoint& q, const DiagonalOnePS& alpha);

struct CentralPrediction {
  ExpansionCoeffs coeffs;
  /// b0' and b1' carry an unquantified O(1) in gamma; c0', c1' are exact.
  bool b_terms_have_order_one_slack = true;
};

/// Explicit terms for the central fibre coefficients (expansions in r):
///   c0' = c0 g^n - sum a^n / n!
///   c1' = c1 g^(n-1) - sum a^(n-1) / (2 (n-2)!)
///   b0' = b0 g^(n+1) - sum_q l(q) (sum_{A_q} a^n) g / n!
///   b1' = b1 g^n - sum_q l(q) (sum_{A_q} a^(n-1)) g / (2 (n-2)!)
/// with A_q the points colliding at q and l(q) = fibre_weight(q). Needs n >= 2.
CentralPrediction predicted_central_coeffs(const WeightedCycle& z, const DiagonalOnePS& alpha, long gamma,
                                           const ExpansionCoeffs& base);

Rat factorial(std::size_t k);

}  // namespace kchow::hilbert
