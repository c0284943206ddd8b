#pragma once

// The degeneration induced by a diagonal 1-PS on the section spaces of the
// blowup, taken degreewise: H^0(I_{Z_t}^r(gamma r)) as a family over t, its
// limit at t = 0, and the Donaldson-Futaki invariant of the central fibre.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "kchow/exact.hpp"
#include "kchow/geometry.hpp"
#include "kchow/hilbert.hpp"

namespace kchow::testconfig {

using exact::PolyVec;
using exact::Rat;
using exact::RatVec;
using geometry::DiagonalOnePS;
using geometry::ProjectivePoint;
using geometry::WeightedCycle;
using hilbert::ExpansionCoeffs;
using hilbert::FatPointSpec;

/// Polynomial basis of H^0(I_{Z_t}^r(d)) with Z_t = alpha(t) Z.
struct SectionFamily {
  std::size_t n = 0;
  std::size_t degree = 0;
  DiagonalOnePS alpha;
  std::vector<PolyVec> basis;
};

/// Kernel over Q(t) of the jet matrix at the moved points. Throws RankDrop when
/// the generic dimension disagrees with the specialisations t = 1 and a random t.
SectionFamily moving_section_family(const FatPointSpec& spec, const DiagonalOnePS& alpha);

/// Limit at t = 0 of the family. Throws NotWeightHomogeneous when the limit does
/// not split along weight blocks, VerificationFailed when dimension is lost.
std::vector<RatVec> central_fibre_sections(const SectionFamily& family);

/// Dimension of each block <w, m> = k of the central fibre's section space.
using WeightProfile = std::map<std::int64_t, std::size_t>;

/// Profile read off the weight filtration of H^0(I_Z^r(d)): the limit of
/// D(t)^-1 U is spanned by the top-weight parts of the elements of U, so the
/// block of weight k has dimension dim(U n F_<=k) - dim(U n F_<k).
WeightProfile initial_weight_profile(const FatPointSpec& spec, const DiagonalOnePS& alpha);

/// The same profile through moving_section_family and central_fibre_sections.
WeightProfile limit_weight_profile(const FatPointSpec& spec, const DiagonalOnePS& alpha);

std::size_t profile_dimension(const WeightProfile& p);
/// Trace of the induced action: sum of kSectionWeightSign * k * dim.
Rat profile_trace(const WeightProfile& p);

struct TestConfigSpec {
  WeightedCycle z;
  DiagonalOnePS alpha;
  long gamma = 1;
  /// Empty means default_r_samples(n).
  std::vector<long> r_samples;
};

/// {2, ..., n+5}.
std::vector<long> default_r_samples(std::size_t n);

struct RSample {
  long r = 0;
  std::size_t degree = 0;
  std::size_t dimension = 0;
  Rat trace;
};

struct DFResult {
  long gamma = 0;
  std::vector<RSample> samples;
  /// Coefficients as extracted, and after the shift by gamma * lambda_gamma.
  ExpansionCoeffs central;
  ExpansionCoeffs normalized;
  Rat lambda_gamma;
  /// Empty when the traces are polynomial in r. Otherwise the coefficients of
  /// the (-1)^r part of the trace, of degree below n so b0, b1 are untouched.
  RatVec alternating_trace;
  Rat F_exact;
  /// Level-1 Chow weight of sum a_i^(n-1) p_i.
  Rat chow_weight;
  /// F(P^n) g^n - CH g / (2 (n-2)!), written through the fibre weights; n >= 2.
  std::optional<Rat> F_predicted_leading;
  std::optional<ExpansionCoeffs> predicted_central;
  std::size_t dimension_checks = 0;
  std::size_t trace_checks = 0;
};

/// The traces are fitted by a polynomial of degree n+1; when the held-out samples
/// reject that, by one plus (-1)^r times a polynomial of degree s = 0, 1, ... < n
/// while samples remain (collisions into a fat point can need generators in
/// degree 2 of the limit ring).
/// Throws PolynomialityFailed when the held-out samples do not fit, and
/// JetsNotSeparated when O(gamma r) does not separate the jets at Z.
DFResult df_invariant(const TestConfigSpec& spec);

struct CoeffDeviation {
  long gamma = 0;
  ExpansionCoeffs fitted;
  ExpansionCoeffs explicit_terms;
  ExpansionCoeffs deviation;  // fitted - explicit
};

struct ExpansionReport {
  std::vector<DFResult> results;
  std::size_t fit_degree = 0;
  /// Least-squares fit of F(gamma) of degree n, constant term first.
  RatVec fit;
  RatVec residuals;
  Rat leading_coefficient;
  /// -CH / (2 (n-2)!), the expected coefficient of gamma^n.
  Rat expected_leading;
  /// Least-squares line through F(gamma), and its exact expected slope.
  RatVec linear_fit;
  Rat expected_slope;
  std::vector<CoeffDeviation> deviations;
};

/// Needs n >= 2 and at least 4 gammas.
ExpansionReport expansion_comparison(const WeightedCycle& z, const DiagonalOnePS& alpha,
                                     const std::vector<long>& gammas, const std::vector<long>& r_samples);

struct ClusterDiagnostic {
  ProjectivePoint limit;
  std::size_t members = 0;
  std::int64_t length = 0;          // sum of fat_point_length(n, a) over the cluster
  std::size_t vanishing_order = 0;  // largest s with every limit section in m_q^s
};

struct ProbeDegree {
  std::size_t degree = 0;
  /// Reduced row echelon basis of the limit.
  std::vector<RatVec> sections;
  std::vector<ClusterDiagnostic> clusters;
  /// The limit equals the forms vanishing to the reported orders at the limits.
  bool fat_point_system = false;
};

ProbeDegree central_fibre_piece(const WeightedCycle& z, const DiagonalOnePS& alpha, std::size_t degree);
std::vector<ProbeDegree> central_fibre_cycle(const WeightedCycle& z, const DiagonalOnePS& alpha,
                                             const std::vector<std::size_t>& degrees);

}  // namespace kchow::testconfig
