#include "kchow/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "kchow/errors.hpp"

namespace kchow::geometry {

Ambient Ambient::projective(std::size_t n) {
  if (n < 1) throw InputError("ambient dimension must be at least 1");
  return Ambient{Kind::projective, n, 0};
}

Ambient Ambient::product(std::size_t n1, std::size_t n2) {
  if (n1 < 1 || n2 < 1) throw InputError("product factors must have dimension at least 1");
  return Ambient{Kind::product, n1, n2};
}

ProjectivePoint::ProjectivePoint(RatVec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw DimensionMismatch("a projective point needs at least two coordinates");
  auto first = std::find_if(coords_.begin(), coords_.end(), [](const Rat& x) { return sgn(x) != 0; });
  if (first == coords_.end()) throw ZeroPoint("all coordinates of a projective point are zero");
  const Rat scale = 1 / *first;
  for (auto& x : coords_) x *= scale;
}

ProjectivePoint ProjectivePoint::of(std::initializer_list<long> coords) {
  RatVec v;
  for (long c : coords) v.emplace_back(c);
  return ProjectivePoint(std::move(v));
}

std::size_t ProjectivePoint::pivot() const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (sgn(coords_[i]) != 0) return i;
  return 0;  // unreachable: the zero vector is rejected on construction
}

std::int64_t WeightedCycle::total_multiplicity() const {
  std::int64_t s = 0;
  for (const auto& p : points) s += p.mult;
  return s;
}

bool operator==(const WeightedCycle& a, const WeightedCycle& b) {
  if (!(a.ambient == b.ambient) || a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].mult != b.points[i].mult || a.points[i].factors != b.points[i].factors) return false;
  }
  return true;
}

std::int64_t DiagonalOnePS::sum() const {
  std::int64_t s = 0;
  for (auto w : weights) s += w;
  return s;
}

DiagonalOnePS DiagonalOnePS::shifted(std::int64_t c) const {
  DiagonalOnePS out = *this;
  for (auto& w : out.weights) w += c;
  return out;
}

DiagonalOnePS DiagonalOnePS::negated() const {
  DiagonalOnePS out = *this;
  for (auto& w : out.weights) w = -w;
  return out;
}

std::int64_t ChowCycle::total_mass() const {
  std::int64_t s = 0;
  for (const auto& p : points) s += p.mass;
  return s;
}

namespace {

bool factors_less(const std::vector<ProjectivePoint>& a, const std::vector<ProjectivePoint>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::int64_t checked_pow(std::int64_t base, std::size_t exp) {
  std::int64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::int64_t>::max() / base)
      throw InputError("multiplicity power overflows 64-bit integers");
    r *= base;
  }
  return r;
}

}  // namespace

WeightedCycle normalize_cycle(const Ambient& ambient, const std::vector<RawPoint>& raw) {
  WeightedCycle z{ambient, {}};
  std::vector<WeightedPoint> pts;
  for (const auto& rp : raw) {
    if (rp.mult < 1) throw InputError("multiplicities must be positive integers");
    if (rp.factors.size() != ambient.factor_count())
      throw DimensionMismatch("point has " + std::to_string(rp.factors.size()) + " factors, ambient expects " +
                              std::to_string(ambient.factor_count()));
    WeightedPoint wp;
    wp.mult = rp.mult;
    for (std::size_t f = 0; f < rp.factors.size(); ++f) {
      if (rp.factors[f].size() != ambient.factor_dim(static_cast<int>(f) + 1) + 1)
        throw DimensionMismatch("point has " + std::to_string(rp.factors[f].size()) + " coordinates, expected " +
                                std::to_string(ambient.factor_dim(static_cast<int>(f) + 1) + 1));
      wp.factors.emplace_back(rp.factors[f]);
    }
    pts.push_back(std::move(wp));
  }
  std::stable_sort(pts.begin(), pts.end(),
                   [](const WeightedPoint& a, const WeightedPoint& b) { return factors_less(a.factors, b.factors); });
  for (auto& p : pts) {
    if (!z.points.empty() && z.points.back().factors == p.factors)
      z.points.back().mult += p.mult;
    else
      z.points.push_back(std::move(p));
  }
  return z;
}

WeightedCycle make_cycle(std::size_t n, const std::vector<std::pair<std::vector<long>, std::int64_t>>& pts) {
  std::vector<RawPoint> raw;
  for (const auto& [coords, mult] : pts) {
    RatVec v;
    for (long c : coords) v.emplace_back(c);
    raw.push_back(RawPoint{{v}, mult});
  }
  return normalize_cycle(Ambient::projective(n), raw);
}

ChowCycle chow_multiplicities(const WeightedCycle& z) {
  if (!z.ambient.is_projective()) throw InputError("chow_multiplicities: ambient must be projective");
  const std::size_t n = z.ambient.n1;
  ChowCycle out{n, {}};
  for (const auto& p : z.points) out.points.push_back({p.point(), checked_pow(p.mult, n - 1)});
  return out;
}

ChowCycle as_chow_cycle(const WeightedCycle& z) {
  if (!z.ambient.is_projective()) throw InputError("as_chow_cycle: ambient must be projective");
  ChowCycle out{z.ambient.n1, {}};
  for (const auto& p : z.points) out.points.push_back({p.point(), p.mult});
  return out;
}

void check_weights(const ProjectivePoint& p, const DiagonalOnePS& alpha) {
  if (alpha.size() != p.coords().size())
    throw DimensionMismatch("1-PS has " + std::to_string(alpha.size()) + " weights, point has " +
                            std::to_string(p.coords().size()) + " coordinates");
}

std::int64_t min_weight(const ProjectivePoint& p, const DiagonalOnePS& alpha) {
  check_weights(p, alpha);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < p.coords().size(); ++i)
    if (sgn(p[i]) != 0) best = std::min(best, alpha[i]);
  return best;
}

ProjectivePoint limit_point(const ProjectivePoint& p, const DiagonalOnePS& alpha) {
  const std::int64_t mu = min_weight(p, alpha);
  RatVec c = p.coords();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (alpha[i] != mu) c[i] = 0;
  return ProjectivePoint(std::move(c));
}

std::map<ProjectivePoint, std::vector<WeightedPoint>> collision_clusters(const WeightedCycle& z,
                                                                       const DiagonalOnePS& alpha) {
  if (!z.ambient.is_projective()) throw InputError("collision_clusters: ambient must be projective");
  std::map<ProjectivePoint, std::vector<WeightedPoint>> clusters;
  for (const auto& p : z.points) clusters[limit_point(p.point(), alpha)].push_back(p);
  return clusters;
}

WeightedCycle project_cycle(const WeightedCycle& z, int factor) {
  if (z.ambient.is_projective()) throw InputError("project_cycle: ambient is not a product");
  if (factor != 1 && factor != 2) throw InputError("project_cycle: factor must be 1 or 2");
  std::vector<RawPoint> raw;
  for (const auto& p : z.points)
    raw.push_back(RawPoint{{p.factors[static_cast<std::size_t>(factor - 1)].coords()}, p.mult});
  return normalize_cycle(Ambient::projective(z.ambient.factor_dim(factor)), raw);
}

}  // namespace kchow::geometry
