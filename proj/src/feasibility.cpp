#include "tads/feasibility.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace tads {

namespace {

// Dense two-phase simplex on standard form:
//   minimize c'z  subject to  A z = rhs,  z >= 0.
// Dantzig pricing with a switch to Bland's rule after bland_factor*(m+n)
// pivots, so the solver terminates on degenerate instances.
struct Simplex {
  enum class Outcome { Optimal, Infeasible, Unbounded, IterationLimit };

  Matrix tableau;            // (m+1) x (total+1); last row = reduced costs
  std::vector<int> basis;    // basic variable per row
  Index m = 0, n = 0;        // constraint rows, structural columns
  Index total = 0;           // structural + artificial columns
  long iterations = 0;
  const LpOptions& opts;

  explicit Simplex(const LpOptions& o) : opts(o) {}

  Outcome solve(const Matrix& A, const Vector& rhs, const Vector& cost, Vector* z_out,
                double* obj_out) {
    m = A.rows();
    n = A.cols();
    total = n + m;  // one artificial per row
    tableau.setZero(m + 1, total + 1);
    tableau.block(0, 0, m, n) = A;
    tableau.block(0, n, m, m) = Matrix::Identity(m, m);
    tableau.block(0, total, m, 1) = rhs;
    for (Index i = 0; i < m; ++i) {
      if (tableau(i, total) < 0.0) tableau.row(i) = -tableau.row(i);
    }
    basis.resize(m);
    for (Index i = 0; i < m; ++i) basis[i] = static_cast<int>(n + i);

    // Phase 1: minimize the artificial sum.
    Vector phase1 = Vector::Zero(total);
    phase1.segment(n, m).setOnes();
    set_objective(phase1);
    Outcome r = iterate(total);
    if (r != Outcome::Optimal) return r;
    if (tableau(m, total) > 1e-7) return Outcome::Infeasible;
    if (!expel_artificials()) return Outcome::IterationLimit;

    // Phase 2 over the structural columns only.
    Vector full = Vector::Zero(total);
    full.head(n) = cost;
    set_objective(full);
    r = iterate(n);
    if (r != Outcome::Optimal) return r;

    if (z_out) {
      z_out->setZero(n);
      for (Index i = 0; i < m; ++i)
        if (basis[i] >= 0 && basis[i] < n) (*z_out)[basis[i]] = tableau(i, total);
    }
    if (obj_out) *obj_out = tableau(m, total);
    return Outcome::Optimal;
  }

private:
  // Rebuilds the reduced-cost row  (c_B B^-1 A - c)  for the current basis.
  void set_objective(const Vector& cost) {
    tableau.row(m).setZero();
    for (Index j = 0; j <= total; ++j) {
      double v = (j < total) ? -cost[j] : 0.0;
      for (Index i = 0; i < m; ++i) {
        if (basis[i] >= 0) v += cost[basis[i]] * tableau(i, j);
      }
      tableau(m, j) = v;
    }
  }

  Outcome iterate(Index allowed_cols) {
    const long bland_after = static_cast<long>(opts.bland_factor) * (m + total);
    for (;;) {
      if (++iterations > opts.max_iterations) return Outcome::IterationLimit;
      const bool bland = iterations > bland_after;

      Index enter = -1;
      double best = opts.reduced_cost_tol;
      for (Index j = 0; j < allowed_cols; ++j) {
        double rc = tableau(m, j);
        if (rc > best) {
          enter = j;
          if (bland) break;  // first improving column
          best = rc;
        } else if (bland && rc > opts.reduced_cost_tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Outcome::Optimal;

      Index leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < m; ++i) {
        double a = tableau(i, enter);
        if (a > 1e-11) {
          double ratio = tableau(i, total) / a;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && leave >= 0 && basis[i] < basis[leave])) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return Outcome::Unbounded;
      pivot(leave, enter);
    }
  }

  void pivot(Index row, Index col) {
    tableau.row(row) /= tableau(row, col);
    for (Index i = 0; i <= m; ++i) {
      if (i == row) continue;
      double f = tableau(i, col);
      if (f != 0.0) tableau.row(i) -= f * tableau.row(row);
    }
    basis[row] = static_cast<int>(col);
  }

  // Pivots zero-level artificial variables out of the basis; rows that admit
  // no structural pivot are redundant and get neutralized.
  bool expel_artificials() {
    for (Index i = 0; i < m; ++i) {
      if (basis[i] < n) continue;
      Index col = -1;
      for (Index j = 0; j < n; ++j) {
        if (std::abs(tableau(i, j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      } else {
        tableau.row(i).setZero();
        basis[i] = -1;
      }
    }
    return true;
  }
};

struct StandardLp {
  Matrix A;
  Vector rhs;
  Vector cost;
  Index cols = 0;

  StandardLp(Index rows, Index columns) : cols(columns) {
    A.setZero(rows, columns);
    rhs.setZero(rows);
    cost.setZero(columns);
  }
};

constexpr double kSlackCap = 1.0;

}  // namespace

LpVerdict check_feasible(const Polytope& S, const LpOptions& opts) {
  const Index n = S.dim;

  // Constant constraints (zero normal) are decided directly.
  std::vector<const Constraint*> rows;
  rows.reserve(S.constraints.size());
  for (const auto& c : S.constraints) {
    if (c.normal.size() != n)
      throw DimensionError("constraint dim " + std::to_string(c.normal.size()) +
                           " in polytope of dim " + std::to_string(n));
    if (c.normal.isZero(0.0)) {
      bool ok = c.strict ? c.offset < 0.0 : c.offset <= 0.0;
      if (!ok) return LpVerdict{LpStatus::Infeasible, std::nullopt, std::nullopt};
      continue;
    }
    rows.push_back(&c);
  }
  if (rows.empty()) {
    return LpVerdict{LpStatus::Feasible, Vector::Zero(n), kSlackCap};
  }

  // Variables: x = u - v, shared slack s = p - q on strict rows, one surplus
  // slack per row, plus the cap row  s <= kSlackCap.
  const Index m = static_cast<Index>(rows.size()) + 1;
  const Index vu = 0, vv = n, vp = 2 * n, vq = 2 * n + 1, vslack = 2 * n + 2;
  StandardLp lp(m, vslack + m);
  for (Index i = 0; i + 1 < m; ++i) {
    const Constraint& c = *rows[i];
    lp.A.row(i).segment(vu, n) = c.normal.transpose();
    lp.A.row(i).segment(vv, n) = -c.normal.transpose();
    if (c.strict) {
      lp.A(i, vp) = 1.0;
      lp.A(i, vq) = -1.0;
    }
    lp.A(i, vslack + i) = 1.0;
    lp.rhs[i] = -c.offset;
  }
  lp.A(m - 1, vp) = 1.0;
  lp.A(m - 1, vq) = -1.0;
  lp.A(m - 1, vslack + m - 1) = 1.0;
  lp.rhs[m - 1] = kSlackCap;
  lp.cost[vp] = -1.0;  // maximize s
  lp.cost[vq] = 1.0;

  Simplex solver(opts);
  Vector z;
  double obj = 0.0;
  auto outcome = solver.solve(lp.A, lp.rhs, lp.cost, &z, &obj);

  switch (outcome) {
    case Simplex::Outcome::Infeasible:
      return LpVerdict{LpStatus::Infeasible, std::nullopt, std::nullopt};
    case Simplex::Outcome::Unbounded:
      return LpVerdict{LpStatus::UnboundedSlack, std::nullopt, std::nullopt};
    case Simplex::Outcome::IterationLimit:
      return LpVerdict{LpStatus::Indeterminate, std::nullopt, std::nullopt};
    case Simplex::Outcome::Optimal:
      break;
  }

  const double slack = -obj;  // objective was q - p
  Vector x = z.segment(vu, n) - z.segment(vv, n);
  if (slack <= 0.0) return LpVerdict{LpStatus::Infeasible, std::nullopt, slack};
  if (slack <= opts.strict_margin)
    return LpVerdict{LpStatus::Indeterminate, std::nullopt, slack};

  // A witness is only ever reported after re-checking it against the raw
  // constraints; numerical doubt degrades to Indeterminate, never Feasible.
  for (const auto& c : S.constraints) {
    if (c.normal.size() == 0) continue;
    double v = c.eval(x);
    if (c.strict ? v > -opts.strict_margin : v > opts.primal_tol)
      return LpVerdict{LpStatus::Indeterminate, std::nullopt, slack};
  }
  return LpVerdict{LpStatus::Feasible, std::move(x), slack};
}

MappedClosestPoint closest_point_linf_mapped(const Polytope& S,
                                             const AffineFunction& map,
                                             const Vector& x0,
                                             const LpOptions& opts) {
  const Index k = S.dim;
  if (map.input_dim() != k)
    throw DimensionError("closest-point map expects dim " +
                         std::to_string(map.input_dim()) + ", polytope has " +
                         std::to_string(k));
  if (map.output_dim() != x0.size())
    throw DimensionError("closest-point center dim " + std::to_string(x0.size()) +
                         " vs map output " + std::to_string(map.output_dim()));

  std::vector<const Constraint*> rows;
  for (const auto& c : S.constraints) {
    if (c.normal.isZero(0.0)) {
      bool ok = c.strict ? c.offset < 0.0 : c.offset <= 0.0;
      if (!ok) throw Error("closest point requested on infeasible polytope");
      continue;
    }
    rows.push_back(&c);
  }

  const Index d = x0.size();
  const Index m = static_cast<Index>(rows.size()) + 2 * d;
  const Index vu = 0, vv = k, vt = 2 * k, vslack = 2 * k + 1;
  StandardLp lp(m, vslack + m);
  Index r = 0;
  for (const Constraint* cp : rows) {
    lp.A.row(r).segment(vu, k) = cp->normal.transpose();
    lp.A.row(r).segment(vv, k) = -cp->normal.transpose();
    lp.A(r, vslack + r) = 1.0;
    lp.rhs[r] = -cp->offset - (cp->strict ? opts.strict_margin : 0.0);
    ++r;
  }
  for (Index j = 0; j < d; ++j) {
    // map_j(w) - x0_j <= t   and   x0_j - map_j(w) <= t
    lp.A.row(r).segment(vu, k) = map.weight.row(j);
    lp.A.row(r).segment(vv, k) = -map.weight.row(j);
    lp.A(r, vt) = -1.0;
    lp.A(r, vslack + r) = 1.0;
    lp.rhs[r] = x0[j] - map.bias[j];
    ++r;
    lp.A.row(r).segment(vu, k) = -map.weight.row(j);
    lp.A.row(r).segment(vv, k) = map.weight.row(j);
    lp.A(r, vt) = -1.0;
    lp.A(r, vslack + r) = 1.0;
    lp.rhs[r] = map.bias[j] - x0[j];
    ++r;
  }
  lp.cost[vt] = 1.0;

  Simplex solver(opts);
  Vector z;
  double obj = 0.0;
  auto outcome = solver.solve(lp.A, lp.rhs, lp.cost, &z, &obj);
  if (outcome == Simplex::Outcome::Infeasible)
    throw Error("closest point requested on infeasible polytope");
  if (outcome != Simplex::Outcome::Optimal)
    throw Error("closest-point LP did not converge");

  MappedClosestPoint out;
  out.argument = z.segment(vu, k) - z.segment(vv, k);
  out.point = map(out.argument);
  out.distance = obj;
  return out;
}

ClosestPoint closest_point_linf(const Polytope& S, const Vector& x0,
                                const LpOptions& opts) {
  auto mc = closest_point_linf_mapped(S, AffineFunction::identity(S.dim), x0, opts);
  return ClosestPoint{std::move(mc.argument), mc.distance};
}

std::string dump_constraints(const Polytope& S) {
  std::ostringstream os;
  os << "polytope dim=" << S.dim << " constraints=" << S.constraints.size() << "\n";
  for (const auto& c : S.constraints) {
    os << "  [";
    for (Index j = 0; j < c.normal.size(); ++j) {
      if (j) os << " ";
      os << c.normal[j];
    }
    os << "] * x + " << c.offset << (c.strict ? " < 0" : " <= 0") << "\n";
  }
  return os.str();
}

}  // namespace tads
