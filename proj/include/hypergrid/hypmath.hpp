#pragma once

// Hyperbolic geometry in the Minkowski hyperboloid model.
//
// H^N is the upper sheet of <p,p> = -1 in R^(N+1) with the bilinear form
// <a,b> = a0*b0 + ... + a(N-1)*b(N-1) - aN*bN. The last coordinate is timelike.
// N is 2 (the plane) or 3 (space). Everything here is a pure function on values.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

namespace hg::hyp {

template <int N>
using Vec = std::array<double, N + 1>;

template <int N>
using Mat = std::array<std::array<double, N + 1>, N + 1>;

inline constexpr double kConstructTol = 1e-9;
inline constexpr double kCompositionTol = 1e-8;
// Isometry products are re-orthonormalized after this many compositions.
inline constexpr int kRenormalizeEvery = 64;

template <int N>
constexpr double minkowski_inner(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (int i = 0; i < N; ++i) s += a[i] * b[i];
  return s - a[N] * b[N];
}

// Runtime-length variant; vectors of different length are a usage error.
inline double minkowski_inner(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("minkowski_inner: length mismatch");
  double s = 0.0;
  const std::size_t n = a.size() - 1;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s - a[n] * b[n];
}

template <int N>
constexpr Vec<N> add(const Vec<N>& a, const Vec<N>& b) {
  Vec<N> r{};
  for (int i = 0; i <= N; ++i) r[i] = a[i] + b[i];
  return r;
}

template <int N>
constexpr Vec<N> scale(const Vec<N>& a, double s) {
  Vec<N> r{};
  for (int i = 0; i <= N; ++i) r[i] = a[i] * s;
  return r;
}

template <int N>
constexpr Vec<N> axpy(double s, const Vec<N>& x, const Vec<N>& y) {
  Vec<N> r{};
  for (int i = 0; i <= N; ++i) r[i] = s * x[i] + y[i];
  return r;
}

template <int N>
constexpr Vec<N> origin_vec() {
  Vec<N> r{};
  r[N] = 1.0;
  return r;
}

// Relative tolerance for norm checks: far points have large coordinates and
// the rounding error of <p,p> scales with their square.
template <int N>
double norm_tolerance(const Vec<N>& v, double tol) {
  return tol * std::max(1.0, v[N] * v[N]);
}

/// A point of H^N.
template <int N>
class Point {
 public:
  Point() : v_(origin_vec<N>()) {}

  /// Checked constructor: throws std::invalid_argument unless the vector lies
  /// on the upper sheet within tolerance.
  explicit Point(const Vec<N>& v) : v_(v) {
    if (!(v[N] >= 1.0 - kConstructTol) ||
        std::abs(minkowski_inner<N>(v, v) + 1.0) > norm_tolerance<N>(v, kConstructTol))
      throw std::invalid_argument("Point: not on the upper hyperboloid sheet");
  }

  /// Rescales a timelike future-pointing vector onto the hyperboloid.
  static Point normalized(const Vec<N>& v) {
    const double q = -minkowski_inner<N>(v, v);
    if (!(q > 0.0) || v[N] <= 0.0)
      throw std::domain_error("Point::normalized: vector is not future timelike");
    Point p;
    p.v_ = scale<N>(v, 1.0 / std::sqrt(q));
    return p;
  }

  static Point origin() { return Point(); }

  const Vec<N>& vec() const { return v_; }
  double operator[](int i) const { return v_[i]; }

 private:
  Vec<N> v_;
};

/// A unit spacelike tangent vector at a base point.
template <int N>
class Direction {
 public:
  Direction(const Point<N>& base, const Vec<N>& v) : base_(base), v_(v) {
    const double tol = norm_tolerance<N>(base.vec(), kConstructTol);
    if (std::abs(minkowski_inner<N>(v, v) - 1.0) > tol * std::max(1.0, v[N] * v[N]))
      throw std::invalid_argument("Direction: not unit spacelike");
    if (std::abs(minkowski_inner<N>(v, base.vec())) > tol * std::max(1.0, std::abs(v[N])))
      throw std::invalid_argument("Direction: not tangent at base");
  }

  /// Projects v onto the tangent space at base and normalizes it.
  static Direction tangent(const Point<N>& base, const Vec<N>& v) {
    const Vec<N>& b = base.vec();
    Vec<N> t = axpy<N>(minkowski_inner<N>(v, b), b, v);
    const double q = minkowski_inner<N>(t, t);
    if (!(q > 0.0)) throw std::domain_error("Direction::tangent: degenerate vector");
    return Direction(base, scale<N>(t, 1.0 / std::sqrt(q)));
  }

  const Point<N>& base() const { return base_; }
  const Vec<N>& vec() const { return v_; }

 private:
  Point<N> base_;
  Vec<N> v_;
};

/// Unit spacelike normal; the plane is {p : <p,n> = 0}.
template <int N>
class PlaneNormal {
 public:
  explicit PlaneNormal(const Vec<N>& n) : n_(n) {
    if (std::abs(minkowski_inner<N>(n, n) - 1.0) > norm_tolerance<N>(n, kConstructTol))
      throw std::invalid_argument("PlaneNormal: not unit spacelike");
  }
  const Vec<N>& vec() const { return n_; }

 private:
  Vec<N> n_;
};

template <int N>
constexpr Mat<N> identity_mat() {
  Mat<N> m{};
  for (int i = 0; i <= N; ++i) m[i][i] = 1.0;
  return m;
}

template <int N>
constexpr Mat<N> mat_mul(const Mat<N>& a, const Mat<N>& b) {
  Mat<N> r{};
  for (int i = 0; i <= N; ++i)
    for (int k = 0; k <= N; ++k) {
      const double aik = a[i][k];
      for (int j = 0; j <= N; ++j) r[i][j] += aik * b[k][j];
    }
  return r;
}

template <int N>
constexpr Vec<N> mat_apply(const Mat<N>& m, const Vec<N>& v) {
  Vec<N> r{};
  for (int i = 0; i <= N; ++i) {
    double s = 0.0;
    for (int j = 0; j <= N; ++j) s += m[i][j] * v[j];
    r[i] = s;
  }
  return r;
}

// max |M^T J M - J|
template <int N>
double form_defect(const Mat<N>& m) {
  double worst = 0.0;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      double s = 0.0;
      for (int k = 0; k <= N; ++k) s += (k == N ? -1.0 : 1.0) * m[k][i] * m[k][j];
      const double want = (i == j) ? (i == N ? -1.0 : 1.0) : 0.0;
      worst = std::max(worst, std::abs(s - want));
    }
  return worst;
}

/// Form-preserving linear map of the upper sheet onto itself.
template <int N>
class Isometry {
 public:
  Isometry() : m_(identity_mat<N>()) {}

  /// Checked: throws std::invalid_argument when the matrix does not preserve
  /// the Minkowski form or swaps the sheets.
  explicit Isometry(const Mat<N>& m) : m_(m) {
    const double tol = kCompositionTol * std::max(1.0, m[N][N] * m[N][N]);
    if (!(m[N][N] > 0.0) || form_defect<N>(m) > tol)
      throw std::invalid_argument("Isometry: matrix does not preserve the Minkowski form");
  }

  static Isometry identity() { return Isometry(); }
  static Isometry unchecked(const Mat<N>& m) {
    Isometry r;
    r.m_ = m;
    return r;
  }

  const Mat<N>& mat() const { return m_; }

  Vec<N> apply(const Vec<N>& v) const { return mat_apply<N>(m_, v); }
  Point<N> apply(const Point<N>& p) const { return Point<N>::normalized(apply(p.vec())); }

  /// (a * b)(x) = a(b(x))
  friend Isometry operator*(const Isometry& a, const Isometry& b) {
    return unchecked(mat_mul<N>(a.m_, b.m_));
  }

  /// J M^T J
  Isometry inverse() const {
    Mat<N> r{};
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= N; ++j) {
        const double si = (i == N) ? -1.0 : 1.0;
        const double sj = (j == N) ? -1.0 : 1.0;
        r[i][j] = si * sj * m_[j][i];
      }
    return unchecked(r);
  }

 private:
  Mat<N> m_;
};

using Point2 = Point<2>;
using Point3 = Point<3>;
using Isometry2 = Isometry<2>;
using Isometry3 = Isometry<3>;

template <int N>
double distance(const Point<N>& a, const Point<N>& b) {
  return std::acosh(std::max(1.0, -minkowski_inner<N>(a.vec(), b.vec())));
}

template <int N>
Vec<N> geodesic_vec(const Vec<N>& p, const Vec<N>& v, double t) {
  const double c = std::cosh(t), s = std::sinh(t);
  Vec<N> r{};
  for (int i = 0; i <= N; ++i) r[i] = p[i] * c + v[i] * s;
  return r;
}

/// p cosh t + v sinh t
template <int N>
Point<N> geodesic_at(const Point<N>& p, const Direction<N>& v, double t) {
  if (std::abs(minkowski_inner<N>(v.vec(), p.vec())) >
      norm_tolerance<N>(p.vec(), kConstructTol) * std::max(1.0, std::abs(v.vec()[N])))
    throw std::invalid_argument("geodesic_at: direction not tangent at point");
  return Point<N>::normalized(geodesic_vec<N>(p.vec(), v.vec(), t));
}

/// Velocity of the geodesic at parameter t.
template <int N>
Vec<N> geodesic_velocity(const Vec<N>& p, const Vec<N>& v, double t) {
  const double c = std::cosh(t), s = std::sinh(t);
  Vec<N> r{};
  for (int i = 0; i <= N; ++i) r[i] = p[i] * s + v[i] * c;
  return r;
}

/// Pure translation taking the origin to p along the geodesic joining them.
template <int N>
Isometry<N> translation_to(const Point<N>& p) {
  // Boost with rapidity acosh(p_N) along the unit spatial direction of p:
  //   M = I + (p_N - 1) u u^T on the spatial block, plus the boost column/row.
  const Vec<N>& v = p.vec();
  const double ct = v[N];
  double r2 = 0.0;
  for (int i = 0; i < N; ++i) r2 += v[i] * v[i];
  Mat<N> m = identity_mat<N>();
  if (r2 == 0.0) return Isometry<N>::unchecked(m);
  const double k = (ct - 1.0) / r2;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) m[i][j] += k * v[i] * v[j];
    m[i][N] = v[i];
    m[N][i] = v[i];
  }
  m[N][N] = ct;
  return Isometry<N>::unchecked(m);
}

/// x -> x - 2<x,n>n, the reflection in the plane of n.
template <int N>
Isometry<N> reflect_in_plane(const PlaneNormal<N>& pn) {
  const Vec<N>& n = pn.vec();
  Mat<N> m = identity_mat<N>();
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      const double sj = (j == N) ? -1.0 : 1.0;
      m[i][j] -= 2.0 * n[i] * n[j] * sj;
    }
  return Isometry<N>::unchecked(m);
}

/// Smallest t >= 0 with <p cosh t + v sinh t, n> = 0.
///
/// The crossing parameter solves tanh t = -<p,n>/<v,n>. A ray lying inside
/// the plane (both products zero) returns 0, as does a ray starting on it.
template <int N>
std::optional<double> ray_plane_hit_vec(const Vec<N>& p, const Vec<N>& v, const Vec<N>& n) {
  const double a = minkowski_inner<N>(p, n);
  const double b = minkowski_inner<N>(v, n);
  if (a == 0.0) return 0.0;
  if (b == 0.0) return std::nullopt;
  const double q = -a / b;
  if (q < 0.0 || q >= 1.0) return std::nullopt;
  return std::atanh(q);
}

template <int N>
std::optional<double> ray_plane_hit(const Point<N>& p, const Direction<N>& v,
                                    const PlaneNormal<N>& n) {
  return ray_plane_hit_vec<N>(p.vec(), v.vec(), n.vec());
}

struct DiskPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;
};

struct BallPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Generalized stereographic projection (x, y, z) -> (x, y) / (w + z).
/// w = 1 is the Poincare disk.
inline DiskPoint to_disk(const Vec<2>& p, double w = 1.0) {
  if (!(w >= 1.0)) throw std::invalid_argument("to_disk: w must be >= 1");
  const double den = w + p[2];
  return {p[0] / den, p[1] / den};
}

inline DiskPoint to_disk(const Point2& p, double w = 1.0) { return to_disk(p.vec(), w); }

inline BallPoint to_ball(const Point3& p) {
  const auto& v = p.vec();
  const double den = 1.0 + v[3];
  return {v[0] / den, v[1] / den, v[2] / den};
}

/// Minkowski Gram-Schmidt on the rows of m, timelike row first.
///
/// Throws std::domain_error when the rows are degenerate.
template <int N>
Isometry<N> reorthonormalize(const Isometry<N>& iso) {
  // Rows of an isometry are J-orthonormal (M J M^T = J), so the row vectors
  // are orthonormalized against the form, starting from the timelike one.
  Mat<N> m = iso.mat();
  auto row_dot = [](const std::array<double, N + 1>& a, const std::array<double, N + 1>& b) {
    return minkowski_inner<N>(a, b);
  };
  {
    auto& t = m[N];
    const double q = -row_dot(t, t);
    if (!(q > 0.0)) throw std::domain_error("reorthonormalize: degenerate timelike row");
    const double s = 1.0 / std::sqrt(q);
    for (auto& x : t) x *= s;
    if (t[N] < 0.0)
      for (auto& x : t) x = -x;
  }
  for (int i = 0; i < N; ++i) {
    auto& r = m[i];
    // remove components along the timelike row (<t,t> = -1)
    {
      const double c = row_dot(r, m[N]);
      for (int k = 0; k <= N; ++k) r[k] += c * m[N][k];
    }
    for (int j = 0; j < i; ++j) {
      const double c = row_dot(r, m[j]);
      for (int k = 0; k <= N; ++k) r[k] -= c * m[j][k];
    }
    const double q = row_dot(r, r);
    if (!(q > 1e-300)) throw std::domain_error("reorthonormalize: rank loss");
    const double s = 1.0 / std::sqrt(q);
    for (auto& x : r) x *= s;
  }
  return Isometry<N>::unchecked(m);
}

/// Rotation about the origin in the plane of spatial axes i and j.
template <int N>
Isometry<N> rotation(int i, int j, double angle) {
  Mat<N> m = identity_mat<N>();
  const double c = std::cos(angle), s = std::sin(angle);
  m[i][i] = c;
  m[i][j] = -s;
  m[j][i] = s;
  m[j][j] = c;
  return Isometry<N>::unchecked(m);
}

/// Translation by distance t along spatial axis i.
template <int N>
Isometry<N> axis_translation(int i, double t) {
  Mat<N> m = identity_mat<N>();
  const double c = std::cosh(t), s = std::sinh(t);
  m[i][i] = c;
  m[i][N] = s;
  m[N][i] = s;
  m[N][N] = c;
  return Isometry<N>::unchecked(m);
}

/// Point at distance r from the origin in spatial direction u (unit Euclidean).
template <int N>
Vec<N> point_at(const std::array<double, N>& u, double r) {
  Vec<N> v{};
  const double s = std::sinh(r);
  for (int i = 0; i < N; ++i) v[i] = u[i] * s;
  v[N] = std::cosh(r);
  return v;
}

}  // namespace hg::hyp
