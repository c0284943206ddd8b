#include "kchow/rat.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace kchow::exact {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& q) { return q.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Int parse_signed_int(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  std::string text(s.front() == '+' ? s.substr(1) : s);
  return Int(text, 10);
}

Int pow10(unsigned long e) {
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = parse_signed_int(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw std::invalid_argument("bad denominator: '" + std::string(text) + "'");
    return make_rat(num, Int(std::string(den_text), 10));
  }

  // Decimal with optional exponent.
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    Int ex = parse_signed_int(exp_text);
    if (!ex.fits_slong_p() || abs(ex) > 10000) throw std::invalid_argument("exponent out of range");
    exponent = ex.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot_pos = mantissa.find('.'); dot_pos != std::string_view::npos) {
    int_part = mantissa.substr(0, dot_pos);
    frac_part = mantissa.substr(dot_pos + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");

  std::string digits = std::string(int_part) + std::string(frac_part);
  Int num(digits.empty() ? std::string("0") : digits, 10);
  if (negative) num = -num;
  long scale = exponent - static_cast<long>(frac_part.size());
  if (scale >= 0) return Rat(num * pow10(static_cast<unsigned long>(scale)));
  return make_rat(num, pow10(static_cast<unsigned long>(-scale)));
}

bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return sgn(x) == 0; });
}

bool lex_less(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int denominator_lcm(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

}  // namespace kchow::exact
