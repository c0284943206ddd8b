#include "kchow/stability.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "kchow/errors.hpp"
#include "kchow/hilbert.hpp"

namespace kchow::stability {

using exact::RatVec;

namespace {

struct LexLess {
  bool operator()(const std::vector<RatVec>& a, const std::vector<RatVec>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), exact::lex_less);
  }
};

void check_cycle(const ChowCycle& z) {
  for (const auto& p : z.points) {
    if (p.point.dim() != z.n) throw DimensionMismatch("cycle point does not lie in P^" + std::to_string(z.n));
    if (p.mass < 1) throw InputError("cycle masses must be positive");
  }
}

std::vector<RatVec> coords_of(const ChowCycle& z, const std::vector<std::size_t>& idx) {
  std::vector<RatVec> out;
  for (auto i : idx) out.push_back(z.points[i].point.coords());
  return out;
}

// Index sets of linearly independent support points, 1 <= size <= max_size, in
// lexicographic order.
void independent_subsets(const ChowCycle& z, std::size_t max_size, std::size_t start, std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
  for (std::size_t i = start; i < z.points.size(); ++i) {
    cur.push_back(i);
    if (exact::rank(RatMatrix::from_rows(coords_of(z, cur), z.n + 1)) == cur.size()) {
      out.push_back(cur);
      if (cur.size() < max_size) independent_subsets(z, max_size, i + 1, cur, out);
    }
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> independent_subsets(const ChowCycle& z, std::size_t max_size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  independent_subsets(z, max_size, 0, cur, out);
  return out;
}

// Columns: the given vectors, then standard vectors completing them to a basis.
RatMatrix adapted_basis(const std::vector<RatVec>& vs, std::size_t n) {
  std::vector<RatVec> cols = vs;
  for (std::size_t j = 0; j <= n && cols.size() <= n; ++j) {
    RatVec e(n + 1, Rat(0));
    e[j] = 1;
    cols.push_back(e);
    if (exact::rank(RatMatrix::from_rows(cols, n + 1)) < cols.size()) cols.pop_back();
  }
  RatMatrix b(n + 1, n + 1);
  for (std::size_t c = 0; c <= n; ++c)
    for (std::size_t r = 0; r <= n; ++r) b(r, c) = cols[c][r];
  return b;
}

Rat threshold(const ChowCycle& z) { return Rat(z.total_mass()) / static_cast<long>(z.n + 1); }

}  // namespace

Rat mumford_weight(const ProjectivePoint& x, const DiagonalOnePS& alpha) {
  geometry::check_weights(x, alpha);
  const Rat mean = Rat(alpha.sum()) / static_cast<long>(alpha.size());
  return Rat(geometry::min_weight(x, alpha)) - mean;
}

Rat chow_weight(const ChowCycle& z, const DiagonalOnePS& alpha) {
  check_cycle(z);
  Rat s = 0;
  for (const auto& p : z.points) s += mumford_weight(p.point, alpha) * p.mass;
  return s;
}

Rat chow_weight(const WeightedCycle& z, const DiagonalOnePS& alpha) {
  if (z.ambient.is_projective()) return chow_weight(geometry::as_chow_cycle(z), alpha);
  const std::size_t n1 = z.ambient.n1, n2 = z.ambient.n2;
  if (alpha.size() != n1 + n2 + 2)
    throw DimensionMismatch("a 1-PS on P^" + std::to_string(n1) + " x P^" + std::to_string(n2) + " needs " +
                            std::to_string(n1 + n2 + 2) + " weights");
  // Segre coordinates z_ij = x_i y_j carry weight w_i + v_j.
  Rat mean = 0;
  for (std::size_t i = 0; i <= n1; ++i)
    for (std::size_t j = 0; j <= n2; ++j) mean += alpha[i] + alpha[n1 + 1 + j];
  mean /= static_cast<long>((n1 + 1) * (n2 + 1));
  Rat s = 0;
  for (const auto& wp : z.points) {
    const auto& x = wp.factors.at(0);
    const auto& y = wp.factors.at(1);
    auto best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i <= n1; ++i)
      for (std::size_t j = 0; j <= n2; ++j)
        if (sgn(x[i]) != 0 && sgn(y[j]) != 0) best = std::min(best, alpha[i] + alpha[n1 + 1 + j]);
    s += (Rat(best) - mean) * wp.mult;
  }
  return s;
}

Rat chow_weight_at_level(const ChowCycle& z, const DiagonalOnePS& alpha, long gamma) {
  check_cycle(z);
  if (gamma < 1) throw InputError("polarisation level must be at least 1");
  if (alpha.size() != z.n + 1) throw DimensionMismatch("1-PS must have n+1 weights");
  hilbert::MonomialBasis basis(z.n, static_cast<std::size_t>(gamma));
  const Rat mean = hilbert::kSectionWeightSign * hilbert::section_trace(alpha, z.n, static_cast<std::size_t>(gamma)) /
                   static_cast<long>(basis.size());
  Rat s = 0;
  for (const auto& p : z.points) {
    auto best = std::numeric_limits<std::int64_t>::max();
    for (const auto& m : basis.exponents()) {
      bool nonzero = true;
      for (std::size_t i = 0; i <= z.n; ++i)
        if (m[i] > 0 && sgn(p.point[i]) == 0) nonzero = false;
      if (nonzero) best = std::min(best, hilbert::pairing(alpha, m));
    }
    s += (Rat(best) - mean) * p.mass;
  }
  return s;
}

std::vector<SubspaceRatio> subspace_ratios(const ChowCycle& z) {
  check_cycle(z);
  std::map<std::vector<RatVec>, bool, LexLess> seen;
  std::vector<SubspaceRatio> out;
  for (const auto& subset : independent_subsets(z, z.n)) {
    auto key = exact::span_basis(coords_of(z, subset), z.n + 1);
    if (!seen.emplace(key, true).second) continue;
    SubspaceRatio sr;
    sr.subspace.dim = subset.size() - 1;
    for (std::size_t i = 0; i < z.points.size(); ++i) {
      const auto& p = z.points[i];
      if (!exact::in_span(key, p.point.coords())) continue;
      sr.mass += p.mass;
      if (sr.subspace.support_indices.size() <= sr.subspace.dim) {
        auto trial = sr.subspace.support_indices;
        trial.push_back(i);
        if (exact::rank(RatMatrix::from_rows(coords_of(z, trial), z.n + 1)) == trial.size()) {
          sr.subspace.support_indices = trial;
          sr.subspace.spanning.push_back(p.point);
        }
      }
    }
    sr.ratio = Rat(sr.mass) / static_cast<long>(sr.subspace.dim + 1);
    out.push_back(std::move(sr));
  }
  std::sort(out.begin(), out.end(), [](const SubspaceRatio& a, const SubspaceRatio& b) {
    if (a.subspace.dim != b.subspace.dim) return a.subspace.dim < b.subspace.dim;
    return a.subspace.support_indices < b.subspace.support_indices;
  });
  return out;
}

std::optional<SubspaceRatio> find_unstable_subspace(const ChowCycle& z) {
  const Rat t = threshold(z);
  std::optional<SubspaceRatio> best;
  for (auto& sr : subspace_ratios(z))
    if (sr.ratio > t && (!best || sr.ratio > best->ratio)) best = sr;
  return best;
}

Rat chow_weight_in_basis(const ChowCycle& z, const RatMatrix& basis, const DiagonalOnePS& alpha) {
  check_cycle(z);
  RatMatrix inv;
  try {
    inv = exact::inverse(basis);
  } catch (const std::domain_error&) {
    throw InputError("coordinate basis is singular");
  }
  Rat s = 0;
  for (const auto& p : z.points) s += mumford_weight(ProjectivePoint(inv * p.point.coords()), alpha) * p.mass;
  return s;
}

Destabilizer destabilizer_from_subspace(const ChowCycle& z, const Subspace& v) {
  check_cycle(z);
  const std::size_t n = z.n;
  if (v.spanning.empty() || v.spanning.size() != v.dim + 1 || v.dim >= n)
    throw SubspaceNotSpannedBySupport("V must be a proper subspace given by dim+1 spanning points");
  std::vector<RatVec> span;
  for (const auto& p : v.spanning) {
    bool in_support = std::any_of(z.points.begin(), z.points.end(), [&](const auto& q) { return q.point == p; });
    if (!in_support) throw SubspaceNotSpannedBySupport("spanning point is not in the support of the cycle");
    span.push_back(p.coords());
  }
  if (exact::rank(RatMatrix::from_rows(span, n + 1)) != span.size())
    throw SubspaceNotSpannedBySupport("spanning points are linearly dependent");

  Destabilizer d;
  d.basis = adapted_basis(span, n);
  const auto k = static_cast<std::int64_t>(v.dim);
  for (std::size_t i = 0; i <= n; ++i)
    d.ops.weights.push_back(i <= v.dim ? static_cast<std::int64_t>(n) - k : -(k + 1));
  d.chow_weight = chow_weight_in_basis(z, d.basis, d.ops);

  std::int64_t mass = 0;
  for (const auto& p : z.points)
    if (exact::in_span(exact::span_basis(span, n + 1), p.point.coords())) mass += p.mass;
  const Rat expected = Rat(static_cast<long>(n + 1) * mass - z.total_mass() * (k + 1));
  if (d.chow_weight != expected)
    throw VerificationFailed("destabilizer weight " + exact::to_string(d.chow_weight) + " differs from " +
                             exact::to_string(expected));
  return d;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::stable:
      return "stable";
    case Status::strictly_semistable:
      return "strictly_semistable";
    case Status::unstable:
      return "unstable";
  }
  return "?";
}

StabilityVerdict classify(const ChowCycle& z) {
  if (z.points.empty()) throw InputError("cannot classify an empty cycle");
  const Rat t = threshold(z);
  StabilityVerdict v;
  std::optional<SubspaceRatio> best;
  for (auto& sr : subspace_ratios(z)) {
    if (sr.ratio == t) v.witness_ratios.push_back(sr);
    if (sr.ratio > t && (!best || sr.ratio > best->ratio)) best = sr;
  }
  if (best) {
    v.status = Status::unstable;
    InstabilityCertificate c;
    c.n = z.n;
    c.total_mass = z.total_mass();
    c.threshold = t;
    c.destabilizer = destabilizer_from_subspace(z, best->subspace);
    c.violation = std::move(*best);
    v.certificate = std::move(c);
  } else {
    v.status = v.witness_ratios.empty() ? Status::stable : Status::strictly_semistable;
  }
  return v;
}

StabilityVerdict classify(const WeightedCycle& z) {
  if (z.ambient.is_projective()) return classify(geometry::as_chow_cycle(z));
  StabilityVerdict first = classify(geometry::as_chow_cycle(geometry::project_cycle(z, 1)));
  StabilityVerdict second = classify(geometry::as_chow_cycle(geometry::project_cycle(z, 2)));
  for (auto* v : {&first, &second}) {
    if (v->status != Status::unstable) continue;
    v->certificate->factor = v == &first ? 1 : 2;
    return std::move(*v);
  }
  StabilityVerdict out;
  out.status = first.status == Status::stable && second.status == Status::stable ? Status::stable
                                                                                  : Status::strictly_semistable;
  out.witness_ratios = first.witness_ratios;
  out.witness_ratios.insert(out.witness_ratios.end(), second.witness_ratios.begin(), second.witness_ratios.end());
  return out;
}

SearchResult exhaustive_ops_search(const ChowCycle& z, int bound) {
  check_cycle(z);
  if (bound < 0) throw InputError("weight bound must be nonnegative");
  const std::size_t n = z.n;
  std::vector<RatMatrix> bases{RatMatrix::identity(n + 1)};
  for (const auto& subset : independent_subsets(z, n + 1)) bases.push_back(adapted_basis(coords_of(z, subset), n));

  const auto dim = static_cast<std::int64_t>(n + 1);
  const std::int64_t m = z.total_mass();
  bool have = false;
  std::int64_t best = 0;
  std::vector<std::int64_t> best_w;
  std::size_t best_basis = 0;

  for (std::size_t b = 0; b < bases.size(); ++b) {
    // Only the zero pattern of each point in the new coordinates matters.
    RatMatrix inv = exact::inverse(bases[b]);
    std::vector<std::vector<std::size_t>> support;
    for (const auto& p : z.points) {
      RatVec c = inv * p.point.coords();
      std::vector<std::size_t> nz;
      for (std::size_t i = 0; i <= n; ++i)
        if (sgn(c[i]) != 0) nz.push_back(i);
      support.push_back(std::move(nz));
    }
    std::vector<std::int64_t> w(n + 1, -bound);
    while (true) {
      std::int64_t sum = 0;
      for (auto x : w) sum += x;
      std::int64_t s = -m * sum;
      for (std::size_t i = 0; i < z.points.size(); ++i) {
        std::int64_t mn = std::numeric_limits<std::int64_t>::max();
        for (auto j : support[i]) mn = std::min(mn, w[j]);
        s += dim * z.points[i].mass * mn;
      }
      if (!have || s > best || (s == best && w < best_w)) {
        have = true;
        best = s;
        best_w = w;
        best_basis = b;
      }
      std::size_t pos = n + 1;
      while (pos > 0 && w[pos - 1] == bound) w[--pos] = -bound;
      if (pos == 0) break;
      ++w[pos - 1];
    }
  }
  return SearchResult{Rat(best) / dim, DiagonalOnePS{best_w}, bases[best_basis]};
}

}  // namespace kchow::stability
