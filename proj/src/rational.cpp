#include "csst/rational.hpp"

#include "csst/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <sstream>

namespace csst {

Rational pow2(long k) {
  Int one(1);
  if (k >= 0) return Rational(one << k, 1);
  return Rational(one, one << (-k));
}

Rational rational_pow(const Rational& base, unsigned exp) {
  Rational acc(1);
  Rational b = base;
  unsigned e = exp;
  while (e > 0) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

bool is_dyadic(const Rational& r) {
  Int den = denominator(r);
  return (den & (den - 1)) == 0;
}

std::string format_rational(const Rational& r) {
  Int num = numerator(r);
  Int den = denominator(r);
  if (den == 1) return num.str();
  if (is_dyadic(r)) {
    unsigned k = boost::multiprecision::lsb(den);
    return num.str() + "/2^" + std::to_string(k);
  }
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(Errc::Schema, "empty rational literal");
  // Unicode minus occasionally appears in hand-written inputs.
  const std::string uminus = "−";
  if (s.rfind(uminus, 0) == 0) s = "-" + s.substr(uminus.size());
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      auto dot = s.find('.');
      if (dot == std::string::npos) return Rational(Int(s), 1);
      std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
      if (head.empty() || head == "-" || head == "+") head += "0";
      bool neg = head[0] == '-';
      Int ip(head);
      Int scale = 1;
      Int frac = tail.empty() ? Int(0) : Int(tail);
      for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
      Rational out(ip, 1);
      Rational f(frac, scale);
      if (neg)
        out -= f;
      else
        out += f;
      return out;
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (den.rfind("2^", 0) == 0) {
      long k = std::stol(den.substr(2));
      return Rational(Int(num), 1) * pow2(-k);
    }
    return Rational(Int(num), Int(den));
  } catch (const std::exception& e) {
    fail(Errc::Schema, "bad rational literal '" + text + "'");
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string dyadic_decimal(const Rational& r) {
  if (!is_dyadic(r)) fail(Errc::InvalidInput, "not a dyadic rational: " + format_rational(r));
  Int num = numerator(r);
  Int den = denominator(r);
  unsigned k = (den == 1) ? 0 : boost::multiprecision::lsb(den);
  bool neg = num < 0;
  if (neg) num = -num;
  // a/2^k = a*5^k / 10^k
  Int five = 1;
  for (unsigned i = 0; i < k; ++i) five *= 5;
  Int scaled = num * five;
  std::string digits = scaled.str();
  std::string out;
  if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
  out = digits.substr(0, digits.size() - k);
  if (k > 0) {
    std::string frac = digits.substr(digits.size() - k);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  }
  if (neg && scaled != 0) out.insert(0, 1, '-');
  return out;
}

std::pair<Rational, Rational> sqrt_bounds(const Rational& r) {
  if (r < 0) fail(Errc::InvalidInput, "sqrt of negative rational");
  if (r == 0) return {Rational(0), Rational(0)};
  Int p = numerator(r), q = denominator(r);
  // sqrt(p/q) = sqrt(p*q*4^t) / (q*2^t); t fixed for ~2^-64 slack
  constexpr unsigned t = 32;
  Int pq = (p * q) << (2 * t);
  Int s = boost::multiprecision::sqrt(pq);
  Int den = q << t;
  Rational lb(s, den);
  Rational ub(s + 1, den);
  if (s * s == pq) ub = lb;
  return {lb, ub};
}

}  // namespace csst
