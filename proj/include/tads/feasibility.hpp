#pragma once

#include "tads/affine.hpp"

#include <optional>
#include <string>

namespace tads {

struct LpOptions {
  double primal_tol = 1e-7;        // feasibility tolerance on returned witnesses
  double reduced_cost_tol = 1e-9;  // optimality tolerance in the simplex
  double strict_margin = 1e-9;     // minimum slack for strict inequalities
  int bland_factor = 5;            // switch to Bland's rule after bland_factor*(rows+cols) pivots
  long max_iterations = 100000;
};

enum class LpStatus { Feasible, Infeasible, UnboundedSlack, Indeterminate };

struct LpVerdict {
  LpStatus status = LpStatus::Indeterminate;
  std::optional<Vector> witness;  // maximum-slack interior point when feasible
  std::optional<double> slack;    // optimal slack of the strict constraints

  bool feasible() const { return status == LpStatus::Feasible; }
  bool infeasible() const { return status == LpStatus::Infeasible; }
};

/// Decides emptiness of a polytope by maximizing a shared slack on the strict
/// constraints (capped at 1). Feasible iff the optimal slack clears
/// strict_margin; optimal slack in (0, strict_margin] is reported
/// Indeterminate rather than decided. Deterministic for fixed input.
LpVerdict check_feasible(const Polytope& S, const LpOptions& opts = {});

struct ClosestPoint {
  Vector point;
  double distance = 0.0;
};

/// Minimizes ||y - x0||_inf over y in S, with strict constraints tightened by
/// strict_margin. Throws on infeasible S.
ClosestPoint closest_point_linf(const Polytope& S, const Vector& x0,
                                const LpOptions& opts = {});

struct MappedClosestPoint {
  Vector argument;  // optimal w in S
  Vector point;     // map(w)
  double distance = 0.0;
};

/// Minimizes ||map(w) - x0||_inf over w in S. closest_point_linf is the
/// special case map = identity.
MappedClosestPoint closest_point_linf_mapped(const Polytope& S,
                                             const AffineFunction& map,
                                             const Vector& x0,
                                             const LpOptions& opts = {});

/// Plain-text constraint dump for failure triage.
std::string dump_constraints(const Polytope& S);

}  // namespace tads
