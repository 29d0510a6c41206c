#pragma once

// Match matrices (pairwise win probabilities), win vectors, permutations,
// and the buff/nerf matrix surgery used in the bound proofs.
// Players are numbered 1..n throughout the public API.

#include <tourney/rational.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tourney {

struct TourneyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SizeGuardError : TourneyError {
  using TourneyError::TourneyError;
};

// Invalid matrix input; (i, j) is the first offending cell, 1-based.
struct ValidationError : TourneyError {
  int i, j;
  ValidationError(int i_, int j_, const std::string& what)
      : TourneyError("cell (" + std::to_string(i_) + "," + std::to_string(j_) +
                     "): " + what),
        i(i_), j(j_) {}
};

class WinVector {
public:
  WinVector() = default;
  explicit WinVector(std::vector<Rational> comps) : c_(std::move(comps)) {
    Rational sum;
    for (const auto& x : c_) {
      if (x.sign() < 0) throw TourneyError("WinVector: negative component");
      sum += x;
    }
    if (sum != Rational(1)) throw TourneyError("WinVector: components sum to " + sum.str());
  }
  static WinVector uniform(int n) {
    return WinVector(std::vector<Rational>(n, Rational(1, n)));
  }
  static WinVector unit(int n, int player) {
    std::vector<Rational> c(n, Rational(0));
    c.at(player - 1) = Rational(1);
    return WinVector(std::move(c));
  }

  int n() const { return static_cast<int>(c_.size()); }
  const Rational& operator[](int player) const { return c_.at(player - 1); }
  const std::vector<Rational>& components() const { return c_; }

  bool sorted_non_increasing() const {
    return std::is_sorted(c_.begin(), c_.end(),
                          [](const Rational& a, const Rational& b) { return b < a; });
  }

  friend bool operator==(const WinVector& a, const WinVector& b) { return a.c_ == b.c_; }
  friend bool operator!=(const WinVector& a, const WinVector& b) { return a.c_ != b.c_; }
  friend bool operator<(const WinVector& a, const WinVector& b) { return a.c_ < b.c_; }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < n(); ++i) s += (i ? ", " : "") + c_[i].str();
    return s + ")";
  }

private:
  std::vector<Rational> c_;
};

class Permutation {
public:
  explicit Permutation(std::vector<int> images) : map_(std::move(images)) {
    std::vector<bool> seen(map_.size(), false);
    for (int v : map_) {
      if (v < 1 || v > n() || seen[v - 1])
        throw TourneyError("Permutation: not a bijection on 1..n");
      seen[v - 1] = true;
    }
  }
  static Permutation identity(int n) {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) m[i] = i + 1;
    return Permutation(std::move(m));
  }
  static Permutation transposition(int n, int a, int b) {
    auto p = identity(n);
    std::swap(p.map_[a - 1], p.map_[b - 1]);
    return p;
  }

  int n() const { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_.at(i - 1); }

  Permutation inverse() const {
    std::vector<int> inv(n());
    for (int i = 1; i <= n(); ++i) inv[map_[i - 1] - 1] = i;
    return Permutation(std::move(inv));
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < n(); ++i) s += (i ? "," : "") + std::to_string(map_[i]);
    return s + ")";
  }

private:
  std::vector<int> map_;
};

inline std::vector<Permutation> all_permutations(int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i + 1;
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(m));
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

// An element of M_n: p_ii = 1/2, p_ij + p_ji = 1, entries in [0,1].
class MatchMatrix {
public:
  int n() const { return n_; }
  const Rational& p(int i, int j) const { return e_[(i - 1) * n_ + (j - 1)]; }
  bool interior() const { return interior_; }

  static MatchMatrix validate(const std::vector<std::vector<Rational>>& raw) {
    int n = static_cast<int>(raw.size());
    if (n < 1) throw TourneyError("MatchMatrix: empty");
    for (int i = 0; i < n; ++i)
      if (static_cast<int>(raw[i].size()) != n)
        throw TourneyError("MatchMatrix: not square");
    const Rational half(1, 2), one(1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Rational& v = raw[i][j];
        if (v.sign() < 0 || v > one)
          throw ValidationError(i + 1, j + 1, "entry " + v.str() + " outside [0,1]");
        if (i == j && v != half)
          throw ValidationError(i + 1, j + 1, "diagonal entry " + v.str() + " != 1/2");
        if (i != j && raw[i][j] + raw[j][i] != one)
          throw ValidationError(i + 1, j + 1,
                                raw[i][j].str() + " + " + raw[j][i].str() + " != 1");
      }
    }
    MatchMatrix m;
    m.n_ = n;
    m.e_.reserve(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.e_.push_back(raw[i][j]);
    m.interior_ = true;
    for (int i = 1; i <= n && m.interior_; ++i)
      for (int j = 1; j <= n; ++j)
        if (i != j && (m.p(i, j).is_zero() || m.p(i, j) == one)) {
          m.interior_ = false;
          break;
        }
    return m;
  }

  // Builds from the strict upper triangle (row-major): p_12, p_13, ..., p_{n-1,n}.
  static MatchMatrix from_upper(int n, const std::vector<Rational>& upper) {
    if (static_cast<int>(upper.size()) != n * (n - 1) / 2)
      throw TourneyError("MatchMatrix::from_upper: wrong entry count");
    std::vector<std::vector<Rational>> raw(n, std::vector<Rational>(n, Rational(1, 2)));
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        raw[i][j] = upper[k];
        raw[j][i] = Rational(1) - upper[k];
        ++k;
      }
    return validate(raw);
  }

  static MatchMatrix uniform(int n) {
    return from_upper(n, std::vector<Rational>(n * (n - 1) / 2, Rational(1, 2)));
  }

  std::vector<std::vector<Rational>> rows() const {
    std::vector<std::vector<Rational>> out(n_, std::vector<Rational>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out[i][j] = p(i + 1, j + 1);
    return out;
  }

  friend bool operator==(const MatchMatrix& a, const MatchMatrix& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }
  friend bool operator<(const MatchMatrix& a, const MatchMatrix& b) {
    return a.e_ < b.e_;
  }

private:
  int n_ = 0;
  std::vector<Rational> e_;
  bool interior_ = false;
};

// The 3-player matrix with p12 = p23 = 1/2, p13 = 1.
inline MatchMatrix pstar() {
  return MatchMatrix::from_upper(3, {Rational(1, 2), Rational(1), Rational(1, 2)});
}

// Rows non-decreasing left-to-right, columns non-increasing top-to-bottom.
// strict = true demands strict inequalities off the diagonal comparisons.
inline bool is_doubly_monotonic(const MatchMatrix& P, bool strict = false) {
  int n = P.n();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j < n; ++j) {
      if (strict ? !(P.p(i, j) < P.p(i, j + 1)) : P.p(i, j) > P.p(i, j + 1)) return false;
    }
  for (int j = 1; j <= n; ++j)
    for (int i = 1; i < n; ++i) {
      if (strict ? !(P.p(i, j) > P.p(i + 1, j)) : P.p(i, j) < P.p(i + 1, j)) return false;
    }
  return true;
}

// A matrix together with a verified double-monotonicity claim.
struct DoublyMonotonicWitness {
  MatchMatrix matrix;
  bool verified = false;

  static DoublyMonotonicWitness check(MatchMatrix P) {
    if (!is_doubly_monotonic(P))
      throw TourneyError("matrix is not doubly monotonic");
    return DoublyMonotonicWitness{std::move(P), true};
  }
};

// Q with q_{sigma(i) sigma(j)} = p_{ij}.
inline MatchMatrix permute_matrix(const MatchMatrix& P, const Permutation& sigma) {
  if (sigma.n() != P.n()) throw TourneyError("permute_matrix: size mismatch");
  int n = P.n();
  std::vector<std::vector<Rational>> raw(n, std::vector<Rational>(n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) raw[sigma(i) - 1][sigma(j) - 1] = P.p(i, j);
  return MatchMatrix::validate(raw);
}

// Makes player i a clone of player j: p'_ik = p_jk for k not in {i,j},
// p'_ij = 1/2. Rows/columns of other players are untouched.
inline MatchMatrix buff_to(const MatchMatrix& P, int i, int j) {
  if (i == j) throw TourneyError("buff_to: i == j");
  int n = P.n();
  auto raw = P.rows();
  for (int k = 1; k <= n; ++k) {
    if (k == i || k == j) continue;
    raw[i - 1][k - 1] = P.p(j, k);
    raw[k - 1][i - 1] = P.p(k, j);
  }
  raw[i - 1][j - 1] = Rational(1, 2);
  raw[j - 1][i - 1] = Rational(1, 2);
  return MatchMatrix::validate(raw);
}

// Off-diagonal values collide; each collision is a pair of (i,j) cells.
struct DistinctnessError : TourneyError {
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> collisions;
  explicit DistinctnessError(
      std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> c)
      : TourneyError("off-diagonal entries are not pairwise distinct"),
        collisions(std::move(c)) {}
};

// Half the minimum difference between two distinct numbers in the matrix:
// eps1 = min |p_ij - 1/2|, eps2 = min gap between entries of distinct pairs.
// Requires all off-diagonal entries pairwise distinct and != 1/2.
inline Rational epsilon_of(const MatchMatrix& P) {
  int n = P.n();
  std::vector<std::pair<Rational, std::pair<int, int>>> vals;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) vals.push_back({P.p(i, j), {i, j}});

  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> collisions;
  const Rational half(1, 2);
  for (const auto& [v, cell] : vals)
    if (v == half) collisions.push_back({cell, {cell.first, cell.first}});
  std::sort(vals.begin(), vals.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t k = 0; k + 1 < vals.size(); ++k)
    if (vals[k].first == vals[k + 1].first)
      collisions.push_back({vals[k].second, vals[k + 1].second});
  if (!collisions.empty()) throw DistinctnessError(std::move(collisions));

  std::optional<Rational> m;
  auto consider = [&m](const Rational& d) {
    if (!m || d < *m) m = d;
  };
  for (const auto& [v, cell] : vals) consider(abs(v - half));
  for (size_t k = 0; k + 1 < vals.size(); ++k)
    consider(vals[k + 1].first - vals[k].first);
  if (!m) throw TourneyError("epsilon_of: no off-diagonal entries");
  return *m * Rational(1, 2);
}

}  // namespace tourney
