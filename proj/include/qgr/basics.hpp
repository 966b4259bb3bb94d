#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgr {

using i64 = std::int64_t;

[[noreturn]] inline void fail(const std::string& msg) { throw std::runtime_error(msg); }

inline void check(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

// Exact rational over i64.  All uses are desk-scale (rank <= 9 linear solves),
// so 64-bit intermediates are plenty; overflow aborts via checked ops.
struct Rat {
  i64 num = 0;
  i64 den = 1;

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d) : num(n), den(d) { normalize(); }

  void normalize() {
    check(den != 0, "Rat: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }

  friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator/(Rat a, Rat b) {
    check(b.num != 0, "Rat: division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
};

// Laurent polynomial in one variable with i64 coefficients, used for the
// quantum Cartan matrix arithmetic.  Dense storage from `lo`.
struct LaurentZ {
  int lo = 0;
  std::vector<i64> c;  // coefficient of q^(lo+k) at c[k]

  LaurentZ() = default;
  static LaurentZ term(i64 coeff, int power) {
    LaurentZ p;
    if (coeff != 0) { p.lo = power; p.c = {coeff}; }
    return p;
  }

  bool is_zero() const { return c.empty(); }
  int hi() const { return lo + int(c.size()) - 1; }

  i64 at(int power) const {
    if (is_zero() || power < lo || power > hi()) return 0;
    return c[size_t(power - lo)];
  }

  void trim() {
    size_t a = 0, b = c.size();
    while (b > a && c[b - 1] == 0) --b;
    while (a < b && c[a] == 0) ++a;
    if (a == b) { c.clear(); lo = 0; return; }
    if (a > 0) lo += int(a);
    c = std::vector<i64>(c.begin() + long(a), c.begin() + long(b));
  }

  friend LaurentZ operator+(const LaurentZ& a, const LaurentZ& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    LaurentZ r;
    r.lo = std::min(a.lo, b.lo);
    int hi = std::max(a.hi(), b.hi());
    r.c.assign(size_t(hi - r.lo + 1), 0);
    for (size_t k = 0; k < a.c.size(); ++k) r.c[size_t(a.lo - r.lo) + k] += a.c[k];
    for (size_t k = 0; k < b.c.size(); ++k) r.c[size_t(b.lo - r.lo) + k] += b.c[k];
    r.trim();
    return r;
  }
  friend LaurentZ operator-(const LaurentZ& a, const LaurentZ& b) { return a + (b * i64(-1)); }
  friend LaurentZ operator*(const LaurentZ& a, i64 s) {
    LaurentZ r = a;
    for (auto& x : r.c) x *= s;
    r.trim();
    return r;
  }
  friend LaurentZ operator*(const LaurentZ& a, const LaurentZ& b) {
    if (a.is_zero() || b.is_zero()) return LaurentZ{};
    LaurentZ r;
    r.lo = a.lo + b.lo;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
};

// Power-series quotient num/den expanded at q=0 up to and including q^order.
// Requires the lowest coefficient of den to be a unit (+-1), which keeps all
// series coefficients integral.
std::map<int, i64> series_quotient(const LaurentZ& num, const LaurentZ& den, int order);

// Laurent polynomial in t^(1/2): key = exponent counted in half-units.
using THalfPoly = std::map<int, i64>;

inline THalfPoly tpoly_bar(const THalfPoly& p) {
  THalfPoly r;
  for (auto& [k, c] : p) r[-k] = c;
  return r;
}

inline bool tpoly_is_bar_symmetric(const THalfPoly& p) { return p == tpoly_bar(p); }

std::string tpoly_to_string(const THalfPoly& p);

}  // namespace qgr
