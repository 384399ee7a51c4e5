#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tads {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shape or input/output dimension disagreement; the message names both shapes.
class DimensionError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// x |-> Wx + b in canonical (weight, bias) form.
struct AffineFunction {
  Matrix weight;  // m x n
  Vector bias;    // m

  AffineFunction() = default;
  AffineFunction(Matrix w, Vector b);

  Index input_dim() const { return weight.cols(); }
  Index output_dim() const { return weight.rows(); }

  Vector operator()(const Vector& x) const;

  static AffineFunction identity(Index n);
  static AffineFunction zero(Index out_dim, Index in_dim);
  static AffineFunction constant(Vector value, Index in_dim);
};

AffineFunction operator+(const AffineFunction& a, const AffineFunction& b);
AffineFunction operator*(double s, const AffineFunction& a);
AffineFunction operator-(const AffineFunction& a);

/// outer(inner(x)) = (W2 W1) x + (W2 b1 + b2).
AffineFunction compose(const AffineFunction& outer, const AffineFunction& inner);

bool approx_equal(const AffineFunction& a, const AffineFunction& b, double tol);

/// Oriented affine inequality; TRUE iff <normal,x> + offset > 0.
/// Points exactly on the hyperplane take the FALSE side.
struct LinearPredicate {
  Vector normal;
  double offset = 0.0;

  LinearPredicate() = default;
  LinearPredicate(Vector w, double b);

  Index dim() const { return normal.size(); }
  bool holds_at(const Vector& x) const { return normal.dot(x) + offset > 0.0; }
};

/// Rewrites a predicate over y = a(x) as a predicate over x. Collapses to the
/// constant truth value when the rewritten normal vanishes.
std::variant<LinearPredicate, bool> substitute(const LinearPredicate& p,
                                               const AffineFunction& a);

/// Deterministic structural key: coefficients scaled by 1/|normal|_inf and
/// rounded to 12 significant digits. Invariant under positive rescaling,
/// orientation-preserving under negative rescaling.
std::string predicate_key(const LinearPredicate& p);

/// Structural key for affine terminals: shape plus coefficients rounded to
/// 12 significant digits (no rescaling; s*f differs from f).
std::string affine_key(const AffineFunction& a);

enum class NormKind { One, Two, Infinity };

double norm(const Vector& v, NormKind kind);

/// One halfspace <normal,x> + offset <= 0, or < 0 when strict.
struct Constraint {
  Vector normal;
  double offset = 0.0;
  bool strict = false;

  double eval(const Vector& x) const { return normal.dot(x) + offset; }
  bool satisfied_at(const Vector& x, double tol = 0.0) const {
    double v = eval(x);
    return strict ? v < -0.0 + tol : v <= tol;  // tol relaxes, not tightens
  }
};

/// Conjunction of halfspaces; an empty constraint list is all of R^dim.
struct Polytope {
  Index dim = 0;
  std::vector<Constraint> constraints;

  static Polytope whole_space(Index n) { return Polytope{n, {}}; }

  /// Closed axis-aligned box |x_j - center_j| <= radius.
  static Polytope box(const Vector& center, double radius);

  Polytope& add(Vector normal, double offset, bool strict = false);
  bool contains(const Vector& x, double tol = 0.0) const;
};

namespace detail {
/// 12-significant-digit decimal rendering used by the structural keys.
std::string round12(double v);
}  // namespace detail

}  // namespace tads
