#pragma once

// Exact feasibility of the Newton-polyhedron system
//
//     λ ≥ 0,   Σ_j λ_j = scale,   Σ_j λ_j p_j ≤ a   (componentwise)
//
// solved by a Phase-I simplex over GMP rationals with Bland's rule. Both
// outcomes are certified: a feasible λ, or a Farkas cut (w, c) with w ≥ 0,
// w·p_j ≥ c/scale for every point and w·a < c. The cut is valid for the whole
// polyhedron scale·conv(p_j) + R^n_{≥0}, so callers can cache it.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "edgereg/monomial.hpp"

namespace edgereg {

struct NewtonLpResult {
  bool feasible = false;
  std::vector<mpq_class> lambda;  // when feasible
  std::vector<mpq_class> cut_w;   // when infeasible
  mpq_class cut_c;                // when infeasible: w·x ≥ cut_c on the polyhedron
  std::size_t pivots = 0;
};

inline NewtonLpResult solve_newton_lp(std::span<const ExponentVector> points, unsigned scale,
                                      std::span<const Exponent> target) {
  const std::size_t n = target.size();
  const std::size_t np = points.size();
  if (np == 0) throw std::invalid_argument("Newton LP needs at least one point");
  for (const auto& p : points)
    if (p.size() != n) throw ContextMismatch();

  // Columns: λ_0..λ_{np-1}, σ_0..σ_{n-1}, artificial r.
  // Rows: 0 is Σλ + r = scale, 1..n are Σ λ_j p_j + σ = a.
  const std::size_t cols = np + n + 1;
  const std::size_t rows = n + 1;
  const std::size_t rcol = np + n;
  std::vector<std::vector<mpq_class>> t(rows, std::vector<mpq_class>(cols + 1, 0));
  for (std::size_t j = 0; j < np; ++j) {
    t[0][j] = 1;
    for (std::size_t i = 0; i < n; ++i) t[i + 1][j] = points[j][i];
  }
  t[0][rcol] = 1;
  t[0][cols] = scale;
  for (std::size_t i = 0; i < n; ++i) {
    t[i + 1][np + i] = 1;
    t[i + 1][cols] = target[i];
  }
  std::vector<std::size_t> basis(rows);
  basis[0] = rcol;
  for (std::size_t i = 0; i < n; ++i) basis[i + 1] = np + i;

  // Reduced costs for minimising r: d = c - c_B B^{-1} A, objective row kept
  // explicitly and updated with each pivot.
  std::vector<mpq_class> d(cols + 1, 0);
  for (std::size_t j = 0; j <= cols; ++j) d[j] = -t[0][j];
  d[rcol] = 0;

  NewtonLpResult res;
  mpq_class ratio, best;
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (d[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = rows;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      ratio = t[i][cols] / t[i][enter];
      if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) throw std::logic_error("Phase-I simplex is bounded below; unbounded ray is impossible");
    ++res.pivots;
    const mpq_class piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const mpq_class f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    if (d[enter] != 0) {
      const mpq_class f = d[enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[leave][j] != 0) d[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  // Objective value is -d[cols].
  const mpq_class objective = -d[cols];
  if (objective == 0) {
    res.feasible = true;
    res.lambda.assign(np, 0);
    for (std::size_t i = 0; i < rows; ++i)
      if (basis[i] < np) res.lambda[basis[i]] = t[i][cols];
    return res;
  }

  // y = c_B B^{-1}; B^{-1} sits in the columns of the initial basis
  // (r for row 0, σ_i for row i+1). With y_k = -d of those columns up to the
  // cost of the initial basic variable.
  std::vector<mpq_class> y(rows);
  y[0] = 1 - d[rcol];
  for (std::size_t i = 0; i < n; ++i) y[i + 1] = -d[np + i];
  res.cut_w.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.cut_w[i] = -y[i + 1];
  res.cut_c = y[0] * scale;
  return res;
}

}  // namespace edgereg
