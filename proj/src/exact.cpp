#include "kchow/exact.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "kchow/errors.hpp"

namespace kchow::exact {

namespace {

PolyT lcm(const PolyT& a, const PolyT& b) { return exact_div(a * b, gcd(a, b)); }

}  // namespace

std::vector<PolyVec> rational_function_kernel(const std::vector<PolyVec>& rows, std::size_t cols) {
  std::vector<PolyVec> m;
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("rational_function_kernel: ragged rows");
    bool nonzero = std::any_of(r.begin(), r.end(), [](const PolyT& p) { return !p.is_zero(); });
    if (nonzero) m.push_back(primitive(r));
  }

  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t j = 0; j < cols && lead < m.size(); ++j) {
    std::size_t p = m.size();
    for (std::size_t i = lead; i < m.size(); ++i) {
      if (m[i][j].is_zero()) continue;
      if (p == m.size() || m[i][j].degree() < m[p][j].degree()) p = i;
    }
    if (p == m.size()) continue;
    std::swap(m[p], m[lead]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == lead || m[i][j].is_zero()) continue;
      PolyT g = gcd(m[lead][j], m[i][j]);
      PolyT a = exact_div(m[lead][j], g);
      PolyT b = exact_div(m[i][j], g);
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = a * m[i][k] - b * m[lead][k];
      bool nonzero = std::any_of(m[i].begin(), m[i].end(), [](const PolyT& q) { return !q.is_zero(); });
      if (nonzero) m[i] = primitive(m[i]);
    }
    pivots.push_back(j);
    ++lead;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  PolyT common(1);
  for (std::size_t i = 0; i < pivots.size(); ++i) common = lcm(common, m[i][pivots[i]]);

  std::vector<PolyVec> kernel;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    PolyVec v(cols);
    v[f] = common;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (m[i][f].is_zero()) continue;
      v[pivots[i]] = -(m[i][f] * exact_div(common, m[i][pivots[i]]));
    }
    kernel.push_back(primitive(std::move(v)));
  }
  return kernel;
}

std::vector<RatVec> limit_subspace(const std::vector<PolyVec>& basis) {
  if (basis.empty()) return {};
  const std::size_t dim = basis.size();
  const std::size_t len = basis.front().size();
  std::vector<PolyVec> vecs = basis;
  int max_deg = 0;
  for (const auto& v : vecs) {
    if (v.size() != len) throw MalformedInput("limit_subspace: vectors of different lengths");
    if (max_degree(v) < 0) throw MalformedInput("limit_subspace: zero vector in basis");
    max_deg = std::max(max_deg, max_degree(v));
  }
  const std::size_t bound = dim * static_cast<std::size_t>(std::max(1, max_deg)) * std::max<std::size_t>(1, len);

  for (std::size_t iter = 0; iter <= bound; ++iter) {
    // Columns of `at_zero` are the vectors evaluated at t = 0.
    RatMatrix at_zero(len, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < len; ++k) at_zero(k, i) = vecs[i][k].at_zero();
    RankKernel rk = rank_kernel(at_zero);
    if (rk.kernel_basis.empty()) {
      std::vector<RatVec> out;
      out.reserve(dim);
      for (const auto& v : vecs) out.push_back(eval(v, 0));
      return out;
    }
    const RatVec& c = rk.kernel_basis.front();
    std::size_t replace = dim;
    for (std::size_t i = 0; i < dim; ++i) {
      if (sgn(c[i]) == 0) continue;
      if (replace == dim || max_degree(vecs[i]) > max_degree(vecs[replace])) replace = i;
    }
    PolyVec combo(len);
    for (std::size_t i = 0; i < dim; ++i) {
      if (sgn(c[i]) == 0) continue;
      for (std::size_t k = 0; k < len; ++k) combo[k] += vecs[i][k] * c[i];
    }
    if (max_degree(combo) < 0) throw MalformedInput("limit_subspace: basis is dependent over Q(t)");
    const std::size_t nu = valuation(combo);
    for (auto& p : combo) p = p.divide_by_t_power(nu);
    vecs[replace] = std::move(combo);
  }
  throw MalformedInput("limit_subspace: iteration bound exceeded; basis is dependent over Q(t)");
}

Rat eval_poly(const RatVec& coeffs, const Rat& x) {
  Rat acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatVec interpolate_poly(std::span<const Sample> samples, std::size_t degree, std::span<const Sample> verify) {
  if (samples.size() != degree + 1)
    throw std::invalid_argument("interpolate_poly: need exactly degree+1 samples");
  if (verify.empty()) throw std::invalid_argument("interpolate_poly: no verification samples");
  std::set<long> seen;
  for (const auto& s : samples)
    if (!seen.insert(s.r).second) throw std::invalid_argument("interpolate_poly: repeated sample point");

  const std::size_t k = degree + 1;
  RatMatrix aug(k, k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    Rat p = 1;
    for (std::size_t j = 0; j < k; ++j) {
      aug(i, j) = p;
      p *= samples[i].r;
    }
    aug(i, k) = samples[i].value;
  }
  RatMatrix r = rref(aug);
  RatVec coeffs(k);
  for (std::size_t j = 0; j < k; ++j) coeffs[j] = r(j, k);

  for (const auto& s : verify) {
    Rat got = eval_poly(coeffs, Rat(s.r));
    if (got != s.value)
      throw VerificationFailed("interpolation does not reproduce sample at r=" + std::to_string(s.r) + ": expected " +
                               to_string(s.value) + ", polynomial gives " + to_string(got));
  }
  return coeffs;
}

Rat eval_quasi_poly(const QuasiPoly& q, long r) {
  const Rat alt = eval_poly(q.alternating, Rat(r));
  return eval_poly(q.poly, Rat(r)) + (r % 2 == 0 ? alt : Rat(-alt));
}

QuasiPoly interpolate_quasi_poly(std::span<const Sample> samples, std::size_t degree, std::size_t alt_degree,
                                 std::span<const Sample> verify) {
  const std::size_t k = degree + 1, a = alt_degree + 1;
  if (samples.size() != k + a) throw std::invalid_argument("interpolate_quasi_poly: need degree+alt_degree+2 samples");
  if (verify.empty()) throw std::invalid_argument("interpolate_quasi_poly: no verification samples");
  RatMatrix aug(k + a, k + a + 1);
  for (std::size_t i = 0; i < k + a; ++i) {
    const long r = samples[i].r;
    Rat p = 1;
    for (std::size_t j = 0; j < std::max(k, a); ++j) {
      if (j < k) aug(i, j) = p;
      if (j < a) aug(i, k + j) = r % 2 == 0 ? p : Rat(-p);
      p *= r;
    }
    aug(i, k + a) = samples[i].value;
  }
  std::vector<std::size_t> pivots;
  RatMatrix red = rref(aug, &pivots);
  if (pivots.size() != k + a || pivots.back() != k + a - 1)
    throw std::invalid_argument("interpolate_quasi_poly: samples do not determine the quasi-polynomial");
  QuasiPoly q{RatVec(k), RatVec(a)};
  for (std::size_t j = 0; j < k; ++j) q.poly[j] = red(j, k + a);
  for (std::size_t j = 0; j < a; ++j) q.alternating[j] = red(k + j, k + a);

  for (const auto& s : verify) {
    Rat got = eval_quasi_poly(q, s.r);
    if (got != s.value)
      throw VerificationFailed("quasi-polynomial fit does not reproduce sample at r=" + std::to_string(s.r) +
                               ": expected " + to_string(s.value) + ", fit gives " + to_string(got));
  }
  return q;
}

RatVec least_squares_poly(std::span<const Sample> samples, std::size_t degree) {
  const std::size_t k = degree + 1;
  if (samples.size() < k) throw std::invalid_argument("least_squares_poly: too few samples");
  RatMatrix normal(k, k + 1);
  for (const auto& s : samples) {
    RatVec powers(k);
    Rat p = 1;
    for (std::size_t j = 0; j < k; ++j) {
      powers[j] = p;
      p *= s.r;
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) normal(i, j) += powers[i] * powers[j];
      normal(i, k) += powers[i] * s.value;
    }
  }
  std::vector<std::size_t> pivots;
  RatMatrix r = rref(normal, &pivots);
  if (pivots.size() != k || pivots.back() != k - 1) throw std::invalid_argument("least_squares_poly: singular system");
  RatVec coeffs(k);
  for (std::size_t j = 0; j < k; ++j) coeffs[j] = r(j, k);
  return coeffs;
}

}  // namespace kchow::exact
