#pragma once

// Exact rational arithmetic for win probabilities and LP coefficients.
// Thin wrapper over GMP's mpq_class that guarantees canonical form
// (lowest terms, positive denominator) on every construction path.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace tourney {

class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}            // NOLINT: implicit by design
  Rational(int n) : v_(n) {}             // NOLINT
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }

  // Accepts "num/den", an integer string, or a terminating decimal ("0.25").
  static Rational parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      mpz_class num, den;
      if (num.set_str(s.substr(0, slash), 10) != 0 ||
          den.set_str(s.substr(slash + 1), 10) != 0 || den == 0)
        throw std::invalid_argument("Rational::parse: bad fraction '" + s + "'");
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
      mpz_class num;
      if (num.set_str(s, 10) != 0)
        throw std::invalid_argument("Rational::parse: bad integer '" + s + "'");
      return Rational(num, mpz_class(1));
    }
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty()) frac = "0";
    mpz_class w, f, scale(1);
    if (w.set_str(whole, 10) != 0 || f.set_str(frac, 10) != 0 || f < 0)
      throw std::invalid_argument("Rational::parse: bad decimal '" + s + "'");
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    bool neg = !whole.empty() && whole[0] == '-';
    mpz_class num = w * scale + (neg ? -f : f);
    return Rational(num, scale);
  }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  double to_double() const { return v_.get_d(); }
  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  int sign() const { return sgn(v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
  mpq_class v_;
};

inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

// floor(p * 2^64), clamped to the u64 range; used to turn an exact match
// probability into a threshold for a uniform 64-bit draw.
inline std::uint64_t probability_threshold_u64(const Rational& p) {
  if (p.sign() <= 0) return 0;
  if (p >= Rational(1)) return UINT64_MAX;  // caller special-cases p == 1
  mpz_class scaled = (p.num() << 64) / p.den();
  // scaled < 2^64 is guaranteed by p < 1
  std::uint64_t lo = 0;
  for (int limb = 1; limb >= 0; --limb) {
    mpz_class part = (scaled >> (32 * limb)) & 0xffffffff;
    lo = (lo << 32) | part.get_ui();
  }
  return lo;
}

}  // namespace tourney
