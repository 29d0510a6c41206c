#pragma once

// Tournament maps: functions from match matrices to win distributions.
// Rational-valued throughout so map-backed tournaments stay exactly
// evaluable.

#include <tourney/matrix.hpp>
#include <tourney/tournament.hpp>

#include <functional>
#include <utility>

namespace tourney {

struct TournamentMap {
  int n = 0;
  std::function<WinVector(const MatchMatrix&)> eval;
  std::string name;

  WinVector operator()(const MatchMatrix& p) const {
    if (p.n() != n) throw TourneyError("TournamentMap: size mismatch");
    WinVector v = eval(p);
    if (v.n() != n) throw TourneyError("TournamentMap: bad output size");
    return v;
  }
};

// The map induced by a tournament: P |-> wv(T, P).
inline TournamentMap induced_map(const Tournament& t) {
  TournamentMap f;
  f.n = t.n;
  f.name = "induced(" + t.name + ")";
  f.eval = [t](const MatchMatrix& p) { return exact_win_vector(t, p).win_vector; };
  return f;
}

// h_i(M) = (1 / C(n,2)) * sum_{j != i} m_ij; strictly honest and symmetric.
inline TournamentMap uniform_strict_map(int n) {
  if (n < 2) throw TourneyError("uniform_strict_map: n must be >= 2");
  TournamentMap f;
  f.n = n;
  f.name = "h";
  f.eval = [n](const MatchMatrix& p) {
    Rational scale(2, static_cast<long>(n) * (n - 1));
    std::vector<Rational> comps(n);
    for (int i = 1; i <= n; ++i) {
      Rational s;
      for (int j = 1; j <= n; ++j)
        if (j != i) s += p.p(i, j);
      comps[i - 1] = s * scale;
    }
    return WinVector(std::move(comps));
  };
  return f;
}

// f = (1 - eps/2) g + (eps/2) h; within eps/2 of g in sup norm and strictly
// honest whenever g is honest.
inline TournamentMap strictify_map(const TournamentMap& g, const Rational& eps) {
  if (eps.sign() <= 0 || eps > Rational(1))
    throw TourneyError("strictify_map: eps outside (0,1]");
  TournamentMap h = uniform_strict_map(g.n);
  TournamentMap f;
  f.n = g.n;
  f.name = "strictify(" + g.name + "," + eps.str() + ")";
  Rational wh = eps / Rational(2), wg = Rational(1) - wh;
  f.eval = [g, h, wg, wh](const MatchMatrix& p) {
    WinVector a = g(p), b = h(p);
    std::vector<Rational> comps(g.n);
    for (int i = 1; i <= g.n; ++i) comps[i - 1] = wg * a[i] + wh * b[i];
    return WinVector(std::move(comps));
  };
  return f;
}

inline TournamentMap constant_map(int n, WinVector v) {
  TournamentMap f;
  f.n = n;
  f.name = "constant";
  f.eval = [v = std::move(v)](const MatchMatrix&) { return v; };
  return f;
}

}  // namespace tourney
