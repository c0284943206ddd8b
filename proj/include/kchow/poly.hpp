#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kchow/rat.hpp"

namespace kchow::exact {

/// Polynomial in the degeneration parameter t with rational coefficients.
/// coeff(k) is the coefficient of t^k; the stored list never ends in a zero.
class PolyT {
 public:
  PolyT() = default;
  PolyT(const Rat& c);  // NOLINT(google-explicit-constructor): constants promote freely
  PolyT(long c) : PolyT(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  explicit PolyT(std::vector<Rat> coeffs);

  static PolyT monomial(const Rat& c, std::size_t power);
  static PolyT t() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Lowest power with a nonzero coefficient. Zero polynomial has none: returns 0.
  std::size_t valuation() const;
  Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
  const std::vector<Rat>& coefficients() const { return c_; }
  const Rat& leading() const { return c_.back(); }

  Rat eval(const Rat& t) const;
  Rat at_zero() const { return coeff(0); }

  /// Exact division by t^nu; throws std::domain_error if the result is not polynomial.
  PolyT divide_by_t_power(std::size_t nu) const;
  PolyT monic() const;

  PolyT& operator+=(const PolyT& o);
  PolyT& operator-=(const PolyT& o);
  PolyT& operator*=(const PolyT& o);
  PolyT& operator*=(const Rat& s);
  friend PolyT operator+(PolyT a, const PolyT& b) { return a += b; }
  friend PolyT operator-(PolyT a, const PolyT& b) { return a -= b; }
  friend PolyT operator*(const PolyT& a, const PolyT& b);
  friend PolyT operator*(PolyT a, const Rat& s) { return a *= s; }
  friend PolyT operator*(const Rat& s, PolyT a) { return a *= s; }
  PolyT operator-() const;
  friend bool operator==(const PolyT& a, const PolyT& b) { return a.c_ == b.c_; }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<PolyT, PolyT> divmod(const PolyT& a, const PolyT& b);

 private:
  void trim();
  std::vector<Rat> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
PolyT gcd(PolyT a, PolyT b);
/// Exact quotient; throws std::domain_error when b does not divide a.
PolyT exact_div(const PolyT& a, const PolyT& b);

using PolyVec = std::vector<PolyT>;

RatVec eval(const PolyVec& v, const Rat& t);
int max_degree(const PolyVec& v);
/// Minimum valuation over nonzero entries.
std::size_t valuation(const PolyVec& v);
/// Divide by the monic gcd of the entries and scale the first nonzero entry to a
/// monic leading coefficient.
PolyVec primitive(PolyVec v);

}  // namespace kchow::exact
