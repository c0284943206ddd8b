#include "kchow/hilbert.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "kchow/detail/jets.hpp"
#include "kchow/errors.hpp"

namespace kchow::hilbert {

namespace {

void compositions(std::size_t vars, int total, Exponent& cur, std::size_t pos, std::vector<Exponent>& out) {
  if (pos + 1 == vars) {
    cur[pos] = total;
    out.push_back(cur);
    return;
  }
  for (int k = total; k >= 0; --k) {
    cur[pos] = k;
    compositions(vars, total - k, cur, pos + 1, out);
  }
}

}  // namespace

MonomialBasis::MonomialBasis(std::size_t n, std::size_t d) : n_(n), d_(d) {
  Exponent cur(n + 1, 0);
  compositions(n + 1, static_cast<int>(d), cur, 0, exps_);
  for (std::size_t i = 0; i < exps_.size(); ++i) index_.emplace(exps_[i], i);
}

std::size_t MonomialBasis::index_of(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw std::out_of_range("monomial not in basis");
  return it->second;
}

Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rat factorial(std::size_t k) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return Rat(r);
}

std::int64_t fat_point_length(std::size_t n, std::size_t a) {
  if (n < 1 || a < 1) throw InputError("fat_point_length needs n >= 1 and a >= 1");
  Int b = binomial(static_cast<long>(n + a - 1), static_cast<long>(n));
  if (!b.fits_slong_p()) throw InputError("fat point length overflows");
  return b.get_si();
}

namespace detail {

std::vector<Exponent> multi_indices_below(std::size_t vars, std::size_t order) {
  std::vector<Exponent> out;
  if (vars == 0) {
    if (order > 0) out.emplace_back();
    return out;
  }
  Exponent cur(vars, 0);
  for (std::size_t s = 0; s < order; ++s) compositions(vars, static_cast<int>(s), cur, 0, out);
  return out;
}

}  // namespace detail

namespace {

void require_projective(const WeightedCycle& z, const char* what) {
  if (!z.ambient.is_projective()) throw InputError(std::string(what) + ": ambient must be projective");
}

}  // namespace

std::size_t jet_condition_count(const FatPointSpec& spec) {
  require_projective(spec.cycle, "jet_condition_count");
  const std::size_t n = spec.cycle.ambient.n1;
  std::size_t rows = 0;
  for (const auto& p : spec.cycle.points)
    rows += static_cast<std::size_t>(fat_point_length(n, spec.order_multiplier * static_cast<std::size_t>(p.mult)));
  return rows;
}

RatMatrix jet_vanishing_matrix(const FatPointSpec& spec) {
  require_projective(spec.cycle, "jet_vanishing_matrix");
  if (spec.order_multiplier < 1) throw InputError("order multiplier r must be at least 1");
  const std::size_t n = spec.cycle.ambient.n1;
  MonomialBasis basis(n, spec.degree);
  RatMatrix m(0, basis.size());
  for (const auto& wp : spec.cycle.points) {
    const auto& p = wp.point();
    const std::size_t chart = p.pivot();
    std::vector<Rat> local;
    std::vector<std::size_t> local_index;
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == chart) continue;
      local.push_back(p[i] / p[chart]);
      local_index.push_back(i);
    }
    const std::size_t order = spec.order_multiplier * static_cast<std::size_t>(wp.mult);
    for (auto& row : detail::jet_rows<Rat>(local, local_index, basis, order)) m.append_row(row);
  }
  return m;
}

std::size_t h0_with_vanishing(const FatPointSpec& spec) {
  RatMatrix j = jet_vanishing_matrix(spec);
  return j.cols() - exact::rank(j);
}

std::int64_t pairing(const DiagonalOnePS& alpha, const Exponent& m) {
  if (alpha.size() != m.size()) throw DimensionMismatch("1-PS weight count does not match the number of variables");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < m.size(); ++i) s += alpha[i] * m[i];
  return s;
}

std::int64_t monomial_weight(const DiagonalOnePS& alpha, const Exponent& m) {
  return kSectionWeightSign * pairing(alpha, m);
}

Rat section_trace(const DiagonalOnePS& alpha, std::size_t n, std::size_t d) {
  MonomialBasis basis(n, d);
  Rat s = 0;
  for (const auto& m : basis.exponents()) s += monomial_weight(alpha, m);
  return s;
}

std::map<std::int64_t, std::size_t> weight_block_dims(const DiagonalOnePS& alpha, const MonomialBasis& basis,
                                                      const std::vector<RatVec>& subspace) {
  std::map<std::int64_t, std::vector<std::size_t>> blocks;
  for (std::size_t c = 0; c < basis.size(); ++c) blocks[pairing(alpha, basis[c])].push_back(c);

  std::map<std::int64_t, std::size_t> dims;
  std::size_t total = 0;
  for (const auto& [w, cols] : blocks) {
    RatMatrix proj(subspace.size(), cols.size());
    for (std::size_t i = 0; i < subspace.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) proj(i, j) = subspace[i][cols[j]];
    const std::size_t r = exact::rank(proj);
    if (r > 0) dims[w] = r;
    total += r;
  }
  const std::size_t dim = subspace.empty() ? 0 : exact::rank(RatMatrix::from_rows(subspace, basis.size()));
  if (total != dim)
    throw SubspaceNotWeightHomogeneous("subspace of dimension " + std::to_string(dim) +
                                       " projects onto weight blocks of total dimension " + std::to_string(total));
  return dims;
}

Rat section_trace(const DiagonalOnePS& alpha, std::size_t n, std::size_t d, const std::vector<RatVec>& subspace) {
  MonomialBasis basis(n, d);
  for (const auto& v : subspace)
    if (v.size() != basis.size()) throw DimensionMismatch("subspace vectors must have one entry per monomial");
  Rat s = 0;
  for (const auto& [w, dim] : weight_block_dims(alpha, basis, subspace))
    s += Rat(kSectionWeightSign * w) * static_cast<long>(dim);
  return s;
}

Rat futaki_from_coeffs(const ExpansionCoeffs& e) {
  if (sgn(e.c0) == 0) throw ZeroLeadingCoefficient("Futaki invariant needs c0 != 0");
  return e.c1 * e.b0 / e.c0 - e.b1;
}

ExpansionCoeffs lifting_shift(const ExpansionCoeffs& e, const Rat& lambda) {
  return ExpansionCoeffs{e.c0, e.c1, e.b0 + lambda * e.c0, e.b1 + lambda * e.c1};
}

ExpansionCoeffs base_coeffs(std::size_t n, const DiagonalOnePS& alpha) {
  if (alpha.size() != n + 1) throw DimensionMismatch("1-PS must have n+1 weights");
  std::vector<exact::Sample> dims;
  std::vector<exact::Sample> traces;
  for (std::size_t k = 1; k <= n + 4; ++k) {
    dims.push_back({static_cast<long>(k), Rat(binomial(static_cast<long>(k + n), static_cast<long>(n)))});
    traces.push_back({static_cast<long>(k), section_trace(alpha, n, k)});
  }
  std::span<const exact::Sample> d(dims), t(traces);
  RatVec h = exact::interpolate_poly(d.first(n + 1), n, d.subspan(n + 1));
  RatVec tr = exact::interpolate_poly(t.first(n + 2), n + 1, t.subspan(n + 2));
  return ExpansionCoeffs{h[n], h[n - 1], tr[n + 1], tr[n]};
}

Rat fibre_weight(const geometry::ProjectivePoint& q, const DiagonalOnePS& alpha) {
  return Rat(kSectionWeightSign * geometry::min_weight(q, alpha));
}

CentralPrediction predicted_central_coeffs(const WeightedCycle& z, const DiagonalOnePS& alpha, long gamma,
                                           const ExpansionCoeffs& base) {
  require_projective(z, "predicted_central_coeffs");
  const std::size_t n = z.ambient.n1;
  if (n < 2) throw InputError("predicted_central_coeffs needs n >= 2");
  const Rat g(gamma);
  auto power = [](const Rat& x, std::size_t e) {
    Rat r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= x;
    return r;
  };
  const Rat n_fact = factorial(n);
  const Rat half_fact = 2 * factorial(n - 2);

  Rat sum_n = 0, sum_n1 = 0, weighted_n = 0, weighted_n1 = 0;
  for (const auto& [q, members] : geometry::collision_clusters(z, alpha)) {
    const Rat lambda_q = fibre_weight(q, alpha);
    Rat cluster_n = 0, cluster_n1 = 0;
    for (const auto& p : members) {
      cluster_n += power(Rat(p.mult), n);
      cluster_n1 += power(Rat(p.mult), n - 1);
    }
    sum_n += cluster_n;
    sum_n1 += cluster_n1;
    weighted_n += lambda_q * cluster_n;
    weighted_n1 += lambda_q * cluster_n1;
  }

  CentralPrediction out;
  out.coeffs.c0 = base.c0 * power(g, n) - sum_n / n_fact;
  out.coeffs.c1 = base.c1 * power(g, n - 1) - sum_n1 / half_fact;
  out.coeffs.b0 = base.b0 * power(g, n + 1) - weighted_n * g / n_fact;
  out.coeffs.b1 = base.b1 * power(g, n) - weighted_n1 * g / half_fact;
  return out;
}

}  // namespace kchow::hilbert
