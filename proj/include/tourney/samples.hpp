#pragma once

// Seeded sample matrices for the property checkers: the uniform matrix, the
// three-player boundary example, random interior matrices, random doubly
// monotonic matrices from strength ratios, and the 0/1 monotonic extremes.

#include <tourney/matrix.hpp>
#include <tourney/simulate.hpp>

#include <set>
#include <vector>

namespace tourney {

inline constexpr std::uint64_t kSampleSeed = 20250809;

inline MatchMatrix random_interior_matrix(int n, detail::SplitMix64& rng) {
  int m = n * (n - 1) / 2;
  std::vector<Rational> upper(m);
  for (int k = 0; k < m; ++k)
    upper[k] = Rational(1 + static_cast<long>(rng.next() % 63), 64);
  return MatchMatrix::from_upper(n, upper);
}

// Bradley-Terry style: descending distinct strengths s give p_ij = s_i/(s_i+s_j).
inline MatchMatrix random_doubly_monotonic(int n, detail::SplitMix64& rng) {
  std::set<long> strengths;
  while (static_cast<int>(strengths.size()) < n)
    strengths.insert(1 + static_cast<long>(rng.next() % 997));
  std::vector<long> s(strengths.rbegin(), strengths.rend());
  std::vector<Rational> upper;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) upper.push_back(Rational(s[i], s[i] + s[j]));
  return MatchMatrix::from_upper(n, upper);
}

// All matrices with off-diagonal entries in {0,1} that are doubly monotonic.
inline std::vector<MatchMatrix> zero_one_monotonic(int n) {
  int m = n * (n - 1) / 2;
  std::vector<MatchMatrix> out;
  for (long mask = 0; mask < (1L << m); ++mask) {
    std::vector<Rational> upper(m);
    for (int k = 0; k < m; ++k) upper[k] = Rational((mask >> k) & 1);
    MatchMatrix cand = MatchMatrix::from_upper(n, upper);
    if (is_doubly_monotonic(cand)) out.push_back(std::move(cand));
  }
  return out;
}

inline std::vector<MatchMatrix> standard_samples(int n,
                                                 std::uint64_t seed = kSampleSeed) {
  std::vector<MatchMatrix> out;
  out.push_back(MatchMatrix::uniform(n));
  if (n == 3) out.push_back(pstar());
  detail::SplitMix64 rng(seed);
  for (int k = 0; k < 10; ++k) out.push_back(random_interior_matrix(n, rng));
  for (int k = 0; k < 10; ++k) out.push_back(random_doubly_monotonic(n, rng));
  if (n <= 3)
    for (auto& m : zero_one_monotonic(n)) out.push_back(std::move(m));
  return out;
}

inline std::vector<DoublyMonotonicWitness> doubly_monotonic_samples(
    int n, std::uint64_t seed = kSampleSeed) {
  std::vector<DoublyMonotonicWitness> out;
  out.push_back(DoublyMonotonicWitness::check(MatchMatrix::uniform(n)));
  if (n == 3) out.push_back(DoublyMonotonicWitness::check(pstar()));
  detail::SplitMix64 rng(seed);
  for (int k = 0; k < 10; ++k)
    out.push_back(DoublyMonotonicWitness::check(random_doubly_monotonic(n, rng)));
  if (n <= 3)
    for (auto& m : zero_one_monotonic(n))
      out.push_back(DoublyMonotonicWitness::check(std::move(m)));
  return out;
}

// Random point of the probability simplex with small rational coordinates.
inline WinVector random_simplex_point(int n, detail::SplitMix64& rng) {
  std::vector<long> w(n);
  long total = 0;
  for (int i = 0; i < n; ++i) {
    w[i] = static_cast<long>(rng.next() % 97);
    total += w[i];
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  std::vector<Rational> comps(n);
  for (int i = 0; i < n; ++i) comps[i] = Rational(w[i], total);
  return WinVector(std::move(comps));
}

}  // namespace tourney
