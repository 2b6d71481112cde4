#include "csst/dyadic.hpp"

#include "csst/errors.hpp"

namespace csst {

void DyadicPoint::canonicalize() {
  while (k > 0 && (a & 1) == 0 && (b & 1) == 0) {
    a >>= 1;
    b >>= 1;
    --k;
  }
}

std::string DyadicPoint::str() const {
  return format_rational(re()) + "," + format_rational(im());
}

DyadicPoint ifs_apply(int letter, const DyadicPoint& z) {
  const Int unit = Int(1) << z.k;  // represents 1 at scale k
  switch (letter) {
    case 1:  // (a - 2^k + b i) / 2^{k+1}
      return DyadicPoint(z.a - unit, z.b, z.k + 1);
    case 2:  // (a + 2^k - b i) / 2^{k+1}
      return DyadicPoint(z.a + unit, -z.b, z.k + 1);
    case 3:  // (b + (a + 2^k) i) / 2^{k+1}
      return DyadicPoint(z.b, z.a + unit, z.k + 1);
    default:
      fail(Errc::InvalidInput, "IFS letter out of {1,2,3}");
  }
}

DyadicPoint apply_word(const Word& w, const DyadicPoint& z) {
  DyadicPoint out = z;
  for (std::size_t i = w.length(); i-- > 0;) out = ifs_apply(w.letter(i), out);
  return out;
}

Rational euclidean_dist_sq(const DyadicPoint& p, const DyadicPoint& q) {
  Rational dx = p.re() - q.re();
  Rational dy = p.im() - q.im();
  return dx * dx + dy * dy;
}

}  // namespace csst
