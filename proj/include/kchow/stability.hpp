#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "kchow/geometry.hpp"
#include "kchow/matrix.hpp"

namespace kchow::stability {

using exact::Rat;
using exact::RatMatrix;
using geometry::ChowCycle;
using geometry::DiagonalOnePS;
using geometry::ProjectivePoint;
using geometry::WeightedCycle;

/// min{w_i - sum(w)/(n+1) : x_i != 0}.
Rat mumford_weight(const ProjectivePoint& x, const DiagonalOnePS& alpha);

/// sum m_i * mumford_weight(x_i, alpha), the weight at polarisation level 1.
Rat chow_weight(const ChowCycle& z, const DiagonalOnePS& alpha);

/// Masses taken from the multiplicities. On P^n1 x P^n2, alpha carries n1+n2+2
/// weights (first factor, then second) and the weight is read on the Segre image.
Rat chow_weight(const WeightedCycle& z, const DiagonalOnePS& alpha);

/// Weight at level gamma, computed on the degree-gamma Veronese image with the
/// monomial pairings and full-space traces of the hilbert module.
Rat chow_weight_at_level(const ChowCycle& z, const DiagonalOnePS& alpha, long gamma);

/// A linear subspace of P^n spanned by support points; `spanning` is the
/// lexicographically first basis among the support points it contains.
struct Subspace {
  std::vector<ProjectivePoint> spanning;
  std::vector<std::size_t> support_indices;  // positions of `spanning` in the cycle
  std::size_t dim = 0;                        // projective dimension k
};

struct SubspaceRatio {
  Subspace subspace;
  std::int64_t mass = 0;  // |V n Z| with multiplicity
  Rat ratio;              // mass / (k+1)
};

/// Every distinct proper subspace spanned by a subset of the support, ordered by
/// (dimension, spanning index set).
std::vector<SubspaceRatio> subspace_ratios(const ChowCycle& z);

/// The subspace maximising mass/(k+1), when that exceeds m/(n+1). Ties go to
/// lower dimension, then the lexicographically smaller spanning index set.
std::optional<SubspaceRatio> find_unstable_subspace(const ChowCycle& z);

struct Destabilizer {
  /// Columns are the adapted basis: the first k+1 span V.
  RatMatrix basis;
  /// Weights in the adapted coordinates.
  DiagonalOnePS ops;
  Rat chow_weight;
};

/// Weights n-k on V and -(k+1) on the complement, in coordinates adapted to V.
/// Throws SubspaceNotSpannedBySupport when V is not a proper span of support points.
Destabilizer destabilizer_from_subspace(const ChowCycle& z, const Subspace& v);

/// Chow weight of alpha acting diagonally in the coordinates given by the
/// columns of `basis`.
Rat chow_weight_in_basis(const ChowCycle& z, const RatMatrix& basis, const DiagonalOnePS& alpha);

struct InstabilityCertificate {
  std::size_t n = 0;
  /// 0 on P^n; on a product, the factor whose projection is unstable.
  int factor = 0;
  SubspaceRatio violation;
  std::int64_t total_mass = 0;
  Rat threshold;  // m / (n+1)
  Destabilizer destabilizer;
};

enum class Status { stable, strictly_semistable, unstable };
const char* to_string(Status s);

struct StabilityVerdict {
  Status status = Status::stable;
  std::optional<InstabilityCertificate> certificate;
  /// Subspaces whose ratio equals m/(n+1).
  std::vector<SubspaceRatio> witness_ratios;
};

StabilityVerdict classify(const ChowCycle& z);

/// Projective ambients use the multiplicities as masses. On a product, unstable
/// iff a projection is unstable and stable iff both projections are.
StabilityVerdict classify(const WeightedCycle& z);

struct SearchResult {
  Rat max_weight;
  DiagonalOnePS ops;
  RatMatrix basis;
};

/// Maximises the Chow weight over integer weights in [-B, B]^(n+1), in the
/// standard basis and in every basis adapted to an independent set of support
/// points (completed by standard vectors). Ties: smallest weight vector, then
/// earliest basis.
SearchResult exhaustive_ops_search(const ChowCycle& z, int bound);

}  // namespace kchow::stability
