#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

#include "kchow/rat.hpp"

namespace kchow::geometry {

using exact::Rat;
using exact::RatVec;

/// P^n polarised by O(1), or P^n1 x P^n2 polarised by O(1,1).
struct Ambient {
  enum class Kind { projective, product };
  Kind kind = Kind::projective;
  std::size_t n1 = 1;
  std::size_t n2 = 0;

  static Ambient projective(std::size_t n);
  static Ambient product(std::size_t n1, std::size_t n2);

  bool is_projective() const { return kind == Kind::projective; }
  std::size_t dimension() const { return is_projective() ? n1 : n1 + n2; }
  std::size_t factor_count() const { return is_projective() ? 1 : 2; }
  /// Projective dimension of factor 1 or 2.
  std::size_t factor_dim(int factor) const { return factor == 1 ? n1 : n2; }

  friend bool operator==(const Ambient&, const Ambient&) = default;
};

/// A point of P^n in canonical scaling: its first nonzero coordinate is 1.
class ProjectivePoint {
 public:
  /// Throws ZeroPoint for the zero vector.
  explicit ProjectivePoint(RatVec coords);
  static ProjectivePoint of(std::initializer_list<long> coords);

  const RatVec& coords() const { return coords_; }
  const Rat& operator[](std::size_t i) const { return coords_[i]; }
  /// n for a point of P^n.
  std::size_t dim() const { return coords_.size() - 1; }
  std::size_t pivot() const;

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) { return exact::lex_less(a.coords_, b.coords_); }

 private:
  RatVec coords_;
};

/// One support point with its multiplicity; product ambients carry two factors.
struct WeightedPoint {
  std::vector<ProjectivePoint> factors;
  std::int64_t mult = 1;

  const ProjectivePoint& point() const { return factors.front(); }
};

/// Z = sum a_i p_i with distinct points, a_i >= 1, sorted lexicographically.
struct WeightedCycle {
  Ambient ambient;
  std::vector<WeightedPoint> points;

  std::int64_t total_multiplicity() const;
  bool empty() const { return points.empty(); }
  friend bool operator==(const WeightedCycle& a, const WeightedCycle& b);
};

struct RawPoint {
  std::vector<RatVec> factors;
  std::int64_t mult = 1;
};

/// Integer weights of a diagonal 1-PS acting on ambient coordinates.
struct DiagonalOnePS {
  std::vector<std::int64_t> weights;

  std::size_t size() const { return weights.size(); }
  std::int64_t operator[](std::size_t i) const { return weights[i]; }
  std::int64_t sum() const;
  DiagonalOnePS shifted(std::int64_t c) const;
  DiagonalOnePS negated() const;
  friend bool operator==(const DiagonalOnePS&, const DiagonalOnePS&) = default;
};

struct MassPoint {
  ProjectivePoint point;
  std::int64_t mass = 1;
};

/// A weighted 0-cycle on P^n as it enters the Chow variety: points with masses.
struct ChowCycle {
  std::size_t n = 1;
  std::vector<MassPoint> points;

  std::int64_t total_mass() const;
};

WeightedCycle normalize_cycle(const Ambient& ambient, const std::vector<RawPoint>& raw);
/// Convenience for P^n cycles with integer coordinates.
WeightedCycle make_cycle(std::size_t n, const std::vector<std::pair<std::vector<long>, std::int64_t>>& pts);

/// The Chow cycle sum a_i^(n-1) p_i of a cycle on P^n.
ChowCycle chow_multiplicities(const WeightedCycle& z);
/// Masses as given (for cycles already in Chow form).
ChowCycle as_chow_cycle(const WeightedCycle& z);

/// min{w_i : p_i != 0}, without normalisation.
std::int64_t min_weight(const ProjectivePoint& p, const DiagonalOnePS& alpha);

/// lim_{t->0} alpha(t) p: keeps the coordinates of minimal weight.
ProjectivePoint limit_point(const ProjectivePoint& p, const DiagonalOnePS& alpha);

/// Support points grouped by their common limit under alpha.
std::map<ProjectivePoint, std::vector<WeightedPoint>> collision_clusters(const WeightedCycle& z,
                                                                       const DiagonalOnePS& alpha);

/// Pushforward to factor 1 or 2 of a product ambient.
WeightedCycle project_cycle(const WeightedCycle& z, int factor);

/// Throws DimensionMismatch unless alpha has one weight per coordinate of p.
void check_weights(const ProjectivePoint& p, const DiagonalOnePS& alpha);

}  // namespace kchow::geometry
