#include "tads/affine.hpp"

#include <cmath>
#include <cstdio>

namespace tads {

namespace {

std::string shape_of(const AffineFunction& a) {
  return std::to_string(a.output_dim()) + "x" + std::to_string(a.input_dim());
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw Error(std::string(what) + " contains NaN/Inf");
}

}  // namespace

AffineFunction::AffineFunction(Matrix w, Vector b)
    : weight(std::move(w)), bias(std::move(b)) {
  if (bias.size() != weight.rows())
    throw DimensionError("affine bias length " + std::to_string(bias.size()) +
                         " does not match weight rows " +
                         std::to_string(weight.rows()));
  require_finite(weight, "affine weight");
  require_finite(bias, "affine bias");
}

Vector AffineFunction::operator()(const Vector& x) const {
  if (x.size() != input_dim())
    throw DimensionError("affine " + shape_of(*this) + " applied to vector of length " +
                         std::to_string(x.size()));
  return weight * x + bias;
}

AffineFunction AffineFunction::identity(Index n) {
  return AffineFunction(Matrix::Identity(n, n), Vector::Zero(n));
}

AffineFunction AffineFunction::zero(Index out_dim, Index in_dim) {
  return AffineFunction(Matrix::Zero(out_dim, in_dim), Vector::Zero(out_dim));
}

AffineFunction AffineFunction::constant(Vector value, Index in_dim) {
  Matrix w = Matrix::Zero(value.size(), in_dim);
  return AffineFunction(std::move(w), std::move(value));
}

AffineFunction operator+(const AffineFunction& a, const AffineFunction& b) {
  if (a.input_dim() != b.input_dim() || a.output_dim() != b.output_dim())
    throw DimensionError("affine sum of " + shape_of(a) + " and " + shape_of(b));
  return AffineFunction(a.weight + b.weight, a.bias + b.bias);
}

AffineFunction operator*(double s, const AffineFunction& a) {
  if (!std::isfinite(s)) throw Error("affine scale by non-finite scalar");
  return AffineFunction(s * a.weight, s * a.bias);
}

AffineFunction operator-(const AffineFunction& a) { return -1.0 * a; }

AffineFunction compose(const AffineFunction& outer, const AffineFunction& inner) {
  if (outer.input_dim() != inner.output_dim())
    throw DimensionError("affine composition: outer " + shape_of(outer) +
                         " after inner " + shape_of(inner));
  return AffineFunction(outer.weight * inner.weight,
                        outer.weight * inner.bias + outer.bias);
}

bool approx_equal(const AffineFunction& a, const AffineFunction& b, double tol) {
  if (a.input_dim() != b.input_dim() || a.output_dim() != b.output_dim()) return false;
  return (a.weight - b.weight).cwiseAbs().maxCoeff() <= tol &&
         (a.bias - b.bias).cwiseAbs().maxCoeff() <= tol;
}

LinearPredicate::LinearPredicate(Vector w, double b) : normal(std::move(w)), offset(b) {
  if (normal.size() == 0 || normal.isZero(0.0))
    throw Error("linear predicate with zero normal; fold to a constant instead");
  if (!normal.allFinite() || !std::isfinite(offset))
    throw Error("linear predicate with non-finite coefficients");
}

std::variant<LinearPredicate, bool> substitute(const LinearPredicate& p,
                                               const AffineFunction& a) {
  if (p.dim() != a.output_dim())
    throw DimensionError("predicate over " + std::to_string(p.dim()) +
                         " dims substituted through affine " + shape_of(a));
  Vector w = a.weight.transpose() * p.normal;
  double b = p.normal.dot(a.bias) + p.offset;
  if (w.isZero(0.0)) return b > 0.0;
  return LinearPredicate(std::move(w), b);
}

namespace detail {

std::string round12(double v) {
  if (v == 0.0) return "0";  // collapses -0 as well
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

}  // namespace detail

std::string predicate_key(const LinearPredicate& p) {
  double scale = 1.0 / p.normal.cwiseAbs().maxCoeff();
  std::string key = "p:";
  for (Index i = 0; i < p.normal.size(); ++i) {
    key += detail::round12(p.normal[i] * scale);
    key += ',';
  }
  key += ';';
  key += detail::round12(p.offset * scale);
  return key;
}

std::string affine_key(const AffineFunction& a) {
  std::string key = "a:" + std::to_string(a.output_dim()) + "x" +
                    std::to_string(a.input_dim()) + ":";
  for (Index r = 0; r < a.weight.rows(); ++r)
    for (Index c = 0; c < a.weight.cols(); ++c) {
      key += detail::round12(a.weight(r, c));
      key += ',';
    }
  key += ';';
  for (Index i = 0; i < a.bias.size(); ++i) {
    key += detail::round12(a.bias[i]);
    key += ',';
  }
  return key;
}

double norm(const Vector& v, NormKind kind) {
  switch (kind) {
    case NormKind::One: return v.lpNorm<1>();
    case NormKind::Two: return v.norm();
    case NormKind::Infinity: return v.lpNorm<Eigen::Infinity>();
  }
  throw Error("unknown norm kind");
}

Polytope Polytope::box(const Vector& center, double radius) {
  Polytope s = whole_space(center.size());
  for (Index j = 0; j < center.size(); ++j) {
    Vector up = Vector::Zero(center.size());
    up[j] = 1.0;
    s.add(up, -(center[j] + radius));        //  x_j - c - r <= 0
    s.add(-up, center[j] - radius);          // -x_j + c - r <= 0
  }
  return s;
}

Polytope& Polytope::add(Vector normal, double offset, bool strict) {
  if (normal.size() != dim)
    throw DimensionError("constraint of dim " + std::to_string(normal.size()) +
                         " added to polytope of dim " + std::to_string(dim));
  constraints.push_back(Constraint{std::move(normal), offset, strict});
  return *this;
}

bool Polytope::contains(const Vector& x, double tol) const {
  for (const auto& c : constraints)
    if (!c.satisfied_at(x, tol)) return false;
  return true;
}

}  // namespace tads
