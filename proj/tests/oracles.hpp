#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library code it is used to check.

#include <cstdint>
#include <map>
#include <vector>

#include "kchow/rat.hpp"

namespace oracle {

using kchow::exact::Rat;
using Exp = std::vector<int>;

/// All exponent tuples of length `vars` and total degree `d`, by odometer.
inline std::vector<Exp> tuples(std::size_t vars, int d) {
  std::vector<Exp> out;
  Exp e(vars, 0);
  while (true) {
    int s = 0;
    for (int x : e) s += x;
    if (s == d) out.push_back(e);
    std::size_t i = 0;
    while (i < vars && e[i] == d) e[i++] = 0;
    if (i == vars) break;
    ++e[i];
  }
  return out;
}

/// Monomials of degree < a in n variables, counted one by one.
inline std::int64_t count_monomials_below(std::size_t n, int a) {
  std::int64_t c = 0;
  for (int d = 0; d < a; ++d) c += static_cast<std::int64_t>(tuples(n, d).size());
  return c;
}

/// sum over degree-d monomials of <w, m>.
inline Rat naive_pairing_sum(const std::vector<std::int64_t>& w, int d) {
  Rat s = 0;
  for (const auto& m : tuples(w.size(), d))
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * m[i];
  return s;
}

inline Rat binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  Rat r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Sparse multivariate polynomial.
struct Poly {
  std::map<Exp, Rat> terms;

  Poly derivative(std::size_t var) const {
    Poly p;
    for (const auto& [e, c] : terms) {
      if (e[var] == 0) continue;
      Exp f = e;
      --f[var];
      p.terms[f] += c * e[var];
    }
    return p;
  }

  Rat eval(const std::vector<Rat>& x) const {
    Rat s = 0;
    for (const auto& [e, c] : terms) {
      Rat t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) t *= x[i];
      s += t;
    }
    return s;
  }
};

/// All partial derivatives of order < s in the variables other than `chart`,
/// evaluated at x scaled so that x[chart] = 1, vanish.
inline bool vanishes_to_order(const Poly& f, std::vector<Rat> x, std::size_t chart, int s) {
  const Rat scale = x[chart];
  for (auto& v : x) v /= scale;
  std::vector<Poly> layer{f};
  for (int order = 0; order < s; ++order) {
    std::vector<Poly> next;
    for (const auto& g : layer) {
      if (g.eval(x) != 0) return false;
      for (std::size_t v = 0; v < x.size(); ++v)
        if (v != chart) next.push_back(g.derivative(v));
    }
    layer = std::move(next);
  }
  return true;
}

/// Hand-derived Donaldson-Futaki invariant of the blowup of P^2 at three
/// collinear unit points under w = (1,1,-2): the central fibre has
/// c0' = (g^2-3)/2, c1' = 3(g-1)/2, b0' = 3(g-1)/2, b1' = 3g/2.
inline Rat collinear_futaki(long g) {
  return Rat(9 * (g - 1) * (g - 1)) / Rat(2 * (g * g - 3)) - Rat(3 * g) / 2;
}

}  // namespace oracle
