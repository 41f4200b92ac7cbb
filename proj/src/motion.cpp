#include "isoflect/motion.hpp"

#include <cmath>

namespace isoflect {

namespace {

// Gradient u with Re(conj(g) * P(z)) = Re(conj(u) * z) + const for the
// planar map P(z) = alpha * sigma(z) + beta.
Complex pull_back_gradient(Complex g, Complex alpha, bool anti) {
  return anti ? std::conj(g) * alpha : g * std::conj(alpha);
}

}  // namespace

MotionI3 MotionI3::translation(const Point3& v) {
  MotionI3 m;
  m.beta = v.planar();
  m.delta = v.t;
  return m;
}

MotionI3 MotionI3::line_reflection(Complex p, Complex dir) {
  if (dir == Complex{}) throw Error("line direction must be non-zero");
  const Complex u = dir / std::abs(dir);
  MotionI3 m;
  m.anti = true;
  m.alpha = u * u;
  m.beta = p - u * u * std::conj(p);
  return m;
}

MotionI3 MotionI3::line_rotation(Complex p, Complex dir, double height) {
  MotionI3 m = line_reflection(p, dir);
  m.eps = -1;
  m.delta = 2.0 * height;
  return m;
}

MotionI3 MotionI3::height_reflection(double height) {
  MotionI3 m;
  m.eps = -1;
  m.delta = 2.0 * height;
  return m;
}

MotionI3 MotionI3::shear(double a, double b, double c) {
  MotionI3 m;
  m.grad = Complex{-a, -b};
  m.delta = -c;
  return m;
}

Complex MotionI3::apply_planar(Complex z) const {
  return alpha * (anti ? std::conj(z) : z) + beta;
}

Point3 MotionI3::apply(const Point3& p) const {
  const Complex z = p.planar();
  const double t = eps * p.t + (std::conj(grad) * z).real() + delta;
  return Point3::from(apply_planar(z), t);
}

MotionI3 MotionI3::after(const MotionI3& b) const {
  const MotionI3& a = *this;
  MotionI3 m;
  const auto sigma_a = [&](Complex z) { return a.anti ? std::conj(z) : z; };
  m.alpha = a.alpha * sigma_a(b.alpha);
  m.beta = a.alpha * sigma_a(b.beta) + a.beta;
  m.anti = a.anti != b.anti;
  m.eps = a.eps * b.eps;
  m.grad = static_cast<double>(a.eps) * b.grad + pull_back_gradient(a.grad, b.alpha, b.anti);
  m.delta = a.eps * b.delta + (std::conj(a.grad) * b.beta).real() + a.delta;
  return m;
}

MotionI3 MotionI3::inverse() const {
  MotionI3 m;
  if (!anti) {
    m.alpha = 1.0 / alpha;
    m.beta = -beta / alpha;
  } else {
    m.alpha = std::conj(1.0 / alpha);
    m.beta = -std::conj(beta / alpha);
  }
  m.anti = anti;
  m.eps = eps;
  // t = eps (t' - Re(conj(grad) P^{-1}(z')) - delta)
  m.grad = -static_cast<double>(eps) * pull_back_gradient(grad, m.alpha, m.anti);
  m.delta = -eps * ((std::conj(grad) * m.beta).real() + delta);
  return m;
}

bool MotionI3::is_translation(double tol) const {
  return !anti && eps == 1 && std::abs(alpha - 1.0) <= tol && std::abs(grad) <= tol;
}

std::vector<std::int64_t> MotionI3::fingerprint() const {
  static const Point3 probes[4] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<std::int64_t> fp;
  fp.reserve(12);
  for (const auto& q : probes) {
    const Point3 r = apply(q);
    for (int i = 0; i < 3; ++i) fp.push_back(std::llround(r[i] * 1e9));
  }
  return fp;
}

Point3 isotropic_shear(double a, double b, double c, const Point3& p) {
  return {p.x, p.y, p.t - a * p.x - b * p.y - c};
}

}  // namespace isoflect
