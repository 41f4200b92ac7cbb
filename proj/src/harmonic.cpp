#include "isoflect/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace isoflect {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Counterclockwise angle from (e^{i from} - w) to (e^{i to} - w), in (0, 2 pi].
double inscribed_angle(double from, double to, Complex w) {
  if (to - from >= 2.0 * kPi) return 2.0 * kPi;
  const Complex p = std::polar(1.0, to) - w;
  const Complex q = std::polar(1.0, from) - w;
  double a = std::arg(p / q);
  if (a <= 0.0) a += 2.0 * kPi;
  return a;
}

double wrap_into(double s, double lo) {
  double d = std::fmod(s - lo, 2.0 * kPi);
  if (d < 0.0) d += 2.0 * kPi;
  return lo + d;
}

}  // namespace

BoundaryData BoundaryData::half_plane(const std::vector<double>& jumps, const std::vector<double>& values) {
  if (values.size() != jumps.size() + 1)
    throw ValidationError("half-plane boundary data needs one more value than jump points");
  BoundaryData bd;
  bd.chart = ChartKind::HalfPlane;
  double lo = -kInf;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double hi = k < jumps.size() ? jumps[k] : kInf;
    bd.arcs.push_back({lo, hi, values[k]});
    lo = hi;
  }
  bd.validate();
  return bd;
}

BoundaryData BoundaryData::disk(const std::vector<double>& angles, const std::vector<double>& values) {
  if (angles.size() != values.size() || angles.empty())
    throw ValidationError("disk boundary data needs one value per arc start angle");
  BoundaryData bd;
  bd.chart = ChartKind::Disk;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double hi = k + 1 < angles.size() ? angles[k + 1] : angles.front() + 2.0 * kPi;
    bd.arcs.push_back({angles[k], hi, values[k]});
  }
  bd.validate();
  return bd;
}

BoundaryData BoundaryData::alternating_disk(int n) {
  if (n < 1) throw ValidationError("alternating disk data needs n >= 1");
  std::vector<double> angles, values;
  for (int k = 1; k <= 2 * n; ++k) {
    angles.push_back(k * kPi / n - kPi / (2.0 * n));
    values.push_back(k % 2 == 1 ? 1.0 : 0.0);
  }
  return disk(angles, values);
}

void BoundaryData::validate() const {
  if (arcs.empty()) throw ValidationError("boundary data has no arcs");
  for (const auto& a : arcs) {
    if (!std::isfinite(a.value)) throw ValidationError("boundary value is not finite");
    if (!(a.to > a.from)) throw ValidationError("boundary arc is empty or reversed");
  }
  for (std::size_t k = 1; k < arcs.size(); ++k)
    if (arcs[k].from != arcs[k - 1].to) throw ValidationError("boundary arcs are not contiguous");
  if (chart == ChartKind::HalfPlane) {
    if (arcs.front().from != -kInf || arcs.back().to != kInf)
      throw ValidationError("half-plane boundary arcs must cover the whole real axis");
    for (std::size_t k = 1; k < arcs.size(); ++k)
      if (!std::isfinite(arcs[k].from)) throw ValidationError("interior jump point is not finite");
  } else if (chart == ChartKind::Disk) {
    const double span = arcs.back().to - arcs.front().from;
    if (std::abs(span - 2.0 * kPi) > 1e-12)
      throw ValidationError("disk boundary arcs must cover the circle exactly once");
  } else {
    throw ValidationError("boundary data supports half-plane and disk charts only");
  }
}

double BoundaryData::min_value() const {
  double m = kInf;
  for (const auto& a : arcs) m = std::min(m, a.value);
  return m;
}

double BoundaryData::max_value() const {
  double m = -kInf;
  for (const auto& a : arcs) m = std::max(m, a.value);
  return m;
}

double BoundaryData::value_at(double s) const {
  if (chart == ChartKind::Disk) s = wrap_into(s, arcs.front().from);
  for (const auto& a : arcs)
    if (s >= a.from && s < a.to) return a.value;
  return arcs.back().value;
}

std::vector<BoundaryJump> BoundaryData::jumps() const {
  std::vector<BoundaryJump> out;
  for (std::size_t k = 1; k < arcs.size(); ++k)
    out.push_back({arcs[k].from, arcs[k - 1].value, arcs[k].value});
  if (chart == ChartKind::Disk && arcs.size() > 1)
    out.push_back({arcs.front().from, arcs.back().value, arcs.front().value});
  return out;
}

double poisson_halfplane(const BoundaryData& bd, Complex w) {
  if (bd.chart != ChartKind::HalfPlane) throw Error("poisson_halfplane needs half-plane data");
  if (!(w.imag() > 0.0)) throw DomainError("Poisson extension evaluated on or below the boundary", w);
  double t = bd.arcs.back().value;
  for (std::size_t k = 1; k < bd.arcs.size(); ++k) {
    const double jump = bd.arcs[k - 1].value - bd.arcs[k].value;
    t += jump / kPi * std::arg(w - bd.arcs[k].from);
  }
  return t;
}

double poisson_disk(const BoundaryData& bd, Complex w) {
  if (bd.chart != ChartKind::Disk) throw Error("poisson_disk needs disk data");
  if (!(std::abs(w) < 1.0)) throw DomainError("Poisson extension evaluated outside the open disk", w);
  double t = 0.0;
  for (const auto& a : bd.arcs) {
    if (a.value == 0.0) continue;
    const double measure = inscribed_angle(a.from, a.to, w) / kPi - (a.to - a.from) / (2.0 * kPi);
    t += a.value * measure;
  }
  return t;
}

double poisson(const BoundaryData& bd, Complex w) {
  return bd.chart == ChartKind::Disk ? poisson_disk(bd, w) : poisson_halfplane(bd, w);
}

double conjugate_harmonic(const BoundaryData& bd, Complex w) {
  if (bd.chart == ChartKind::HalfPlane) {
    if (w.imag() < 0.0) throw DomainError("conjugate function evaluated below the boundary", w);
    double ts = 0.0;
    for (std::size_t k = 1; k < bd.arcs.size(); ++k) {
      const double s = bd.arcs[k].from;
      const double jump = bd.arcs[k - 1].value - bd.arcs[k].value;
      if (jump == 0.0) continue;
      const double d = std::abs(w - s);
      if (d == 0.0) throw DomainError("conjugate function diverges at a jump point", w);
      // normalised so that t*(i) = 0
      ts -= jump / kPi * (std::log(d) - std::log(std::abs(Complex{0.0, 1.0} - s)));
    }
    return ts;
  }
  if (bd.chart != ChartKind::Disk) throw Error("conjugate_harmonic needs half-plane or disk data");
  if (std::abs(w) > 1.0) throw DomainError("conjugate function evaluated outside the disk", w);
  double ts = 0.0;
  for (const auto& a : bd.arcs) {
    if (a.value == 0.0 || a.to - a.from >= 2.0 * kPi) continue;
    const double d_to = std::abs(std::polar(1.0, a.to) - w);
    const double d_from = std::abs(std::polar(1.0, a.from) - w);
    if (d_to == 0.0 || d_from == 0.0) throw DomainError("conjugate function diverges at a jump point", w);
    ts += a.value / kPi * (std::log(d_from) - std::log(d_to));
  }
  return ts;
}

Complex BlowUpChart::point() const {
  return chart == ChartKind::Disk ? std::polar(1.0, jump) : Complex{jump, 0.0};
}

Complex BlowUpChart::pi(double r, double theta) const {
  if (chart != ChartKind::Disk) return blow_up_point(r, theta, jump);
  const Complex z = blow_up_point(r, theta);
  const Complex i{0.0, 1.0};
  return point() * (i - z) / (i + z);
}

double extend_blowup(const std::function<double(Complex)>& t, const BlowUpChart& chart, double r,
                     double theta) {
  if (!(theta > 0.0 && theta < kPi))
    throw DomainError("blow-up angle outside (0, pi)", Complex{r, theta});
  if (r > 0.0) return t(chart.pi(r, theta));
  if (r == 0.0) return chart.seam_height(theta);
  return chart.a + chart.b - t(chart.pi(-r, kPi - theta));
}

}  // namespace isoflect
