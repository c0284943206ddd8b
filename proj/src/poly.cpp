#include "kchow/poly.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace kchow::exact {

PolyT::PolyT(const Rat& c) {
  if (sgn(c) != 0) c_.push_back(c);
}

PolyT::PolyT(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

PolyT PolyT::monomial(const Rat& c, std::size_t power) {
  std::vector<Rat> v(power + 1, Rat(0));
  v[power] = c;
  return PolyT(std::move(v));
}

void PolyT::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

std::size_t PolyT::valuation() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (sgn(c_[k]) != 0) return k;
  return 0;
}

Rat PolyT::eval(const Rat& t) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

PolyT PolyT::divide_by_t_power(std::size_t nu) const {
  if (is_zero() || nu == 0) return *this;
  if (valuation() < nu) throw std::domain_error("divide_by_t_power: not divisible");
  return PolyT(std::vector<Rat>(c_.begin() + static_cast<std::ptrdiff_t>(nu), c_.end()));
}

PolyT PolyT::monic() const {
  if (is_zero()) return *this;
  PolyT r = *this;
  Rat inv = 1 / leading();
  for (auto& x : r.c_) x *= inv;
  return r;
}

PolyT& PolyT::operator+=(const PolyT& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

PolyT& PolyT::operator-=(const PolyT& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

PolyT operator*(const PolyT& a, const PolyT& b) {
  if (a.is_zero() || b.is_zero()) return PolyT();
  std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return PolyT(std::move(out));
}

PolyT& PolyT::operator*=(const PolyT& o) { return *this = *this * o; }

PolyT& PolyT::operator*=(const Rat& s) {
  if (sgn(s) == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

PolyT PolyT::operator-() const {
  PolyT r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

std::pair<PolyT, PolyT> PolyT::divmod(const PolyT& a, const PolyT& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  PolyT rem = a;
  if (rem.degree() < b.degree()) return {PolyT(), rem};
  std::vector<Rat> q(static_cast<std::size_t>(rem.degree() - b.degree() + 1), Rat(0));
  const Rat inv_lead = 1 / b.leading();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    auto shift = static_cast<std::size_t>(rem.degree() - b.degree());
    Rat factor = rem.leading() * inv_lead;
    q[shift] = factor;
    for (std::size_t k = 0; k < b.c_.size(); ++k) rem.c_[k + shift] -= factor * b.c_[k];
    rem.trim();
  }
  return {PolyT(std::move(q)), rem};
}

PolyT gcd(PolyT a, PolyT b) {
  while (!b.is_zero()) {
    PolyT r = PolyT::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyT exact_div(const PolyT& a, const PolyT& b) {
  auto [q, r] = PolyT::divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("exact_div: nonzero remainder");
  return q;
}

RatVec eval(const PolyVec& v, const Rat& t) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(p.eval(t));
  return out;
}

int max_degree(const PolyVec& v) {
  int d = -1;
  for (const auto& p : v) d = std::max(d, p.degree());
  return d;
}

std::size_t valuation(const PolyVec& v) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& p : v)
    if (!p.is_zero()) best = std::min(best, p.valuation());
  return best == std::numeric_limits<std::size_t>::max() ? 0 : best;
}

PolyVec primitive(PolyVec v) {
  PolyT g;
  for (const auto& p : v) g = gcd(g, p);
  if (g.is_zero()) return v;
  for (auto& p : v) p = exact_div(p, g);
  auto first = std::find_if(v.begin(), v.end(), [](const PolyT& p) { return !p.is_zero(); });
  Rat scale = 1 / first->leading();
  for (auto& p : v) p *= scale;
  return v;
}

}  // namespace kchow::exact
