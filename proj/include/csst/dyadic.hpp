#pragma once

#include "csst/rational.hpp"
#include "csst/word.hpp"

#include <compare>
#include <string>

namespace csst {

/// Exact Gaussian-dyadic plane point (a + b*i) / 2^k.
/// Canonical form: k == 0, or at least one of a, b is odd.
struct DyadicPoint {
  Int a{0};
  Int b{0};
  unsigned k{0};

  DyadicPoint() = default;
  DyadicPoint(Int a_, Int b_, unsigned k_) : a(std::move(a_)), b(std::move(b_)), k(k_) {
    canonicalize();
  }
  static DyadicPoint integer(long re, long im) { return DyadicPoint(Int(re), Int(im), 0); }

  void canonicalize();

  Rational re() const { return Rational(a, Int(1) << k); }
  Rational im() const { return Rational(b, Int(1) << k); }

  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;
  friend auto operator<=>(const DyadicPoint& x, const DyadicPoint& y) {
    if (auto c = x.k <=> y.k; c != 0) return c;
    if (auto c = x.a.compare(y.a) <=> 0; c != 0) return c;
    return x.b.compare(y.b) <=> 0;
  }

  /// "re,im" with each coordinate in the artifact rational syntax.
  std::string str() const;
};

/// g_1(z) = z/2 - 1/2,  g_2(z) = conj(z)/2 + 1/2,  g_3(z) = (i/2)conj(z) + i/2.
DyadicPoint ifs_apply(int letter, const DyadicPoint& z);

/// g_w = g_{w_1} o ... o g_{w_n}; empty word is the identity.
DyadicPoint apply_word(const Word& w, const DyadicPoint& z);

/// Exact squared Euclidean distance |p - q|^2.
Rational euclidean_dist_sq(const DyadicPoint& p, const DyadicPoint& q);

}  // namespace csst
