#include "dgansim/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "dgansim/nn.hpp"

namespace dgansim {

Moments2 fit_moments(std::span<const Vec2> points) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_moments: need at least 3 points");
  Moments2 m;
  const double inv_n = 1.0 / static_cast<double>(points.size());
  for (const auto& p : points) {
    m.mean[0] += p[0];
    m.mean[1] += p[1];
  }
  m.mean[0] *= inv_n;
  m.mean[1] *= inv_n;
  for (const auto& p : points) {
    const double dx = p[0] - m.mean[0];
    const double dy = p[1] - m.mean[1];
    m.cxx += dx * dx;
    m.cxy += dx * dy;
    m.cyy += dy * dy;
  }
  m.cxx *= inv_n;
  m.cxy *= inv_n;
  m.cyy *= inv_n;
  return m;
}

double frechet_from_moments(const Moments2& a, const Moments2& b) {
  constexpr double kRidge = 1e-9;
  const double axx = a.cxx + kRidge, axy = a.cxy, ayy = a.cyy + kRidge;
  const double bxx = b.cxx + kRidge, bxy = b.cxy, byy = b.cyy + kRidge;

  const double dx = a.mean[0] - b.mean[0];
  const double dy = a.mean[1] - b.mean[1];
  const double mean_term = dx * dx + dy * dy;

  // P = Sa * Sb; its eigenvalues are nonnegative for PSD factors, so
  // Tr sqrt(P) = sqrt(tr P + 2 sqrt(det P)) with det P = det Sa * det Sb.
  const double tr_p = axx * bxx + axy * bxy + axy * bxy + ayy * byy;
  const double det_a = axx * ayy - axy * axy;
  const double det_b = bxx * byy - bxy * bxy;
  const double det_p = std::max(0.0, det_a) * std::max(0.0, det_b);
  const double tr_sqrt = std::sqrt(std::max(0.0, tr_p + 2.0 * std::sqrt(det_p)));

  const double result = mean_term + (axx + ayy) + (bxx + byy) - 2.0 * tr_sqrt;
  if (result < -1e-9)
    throw NumericalError("frechet_from_moments: negative distance");
  return std::max(0.0, result);
}

double frechet_gaussian_distance(std::span<const Vec2> a,
                                 std::span<const Vec2> b) {
  return frechet_from_moments(fit_moments(a), fit_moments(b));
}

std::pair<int, double> mode_coverage(std::span<const Vec2> samples,
                                     std::span<const Vec2> modes,
                                     double radius) {
  if (radius <= 0.0) throw std::invalid_argument("mode_coverage: radius > 0");
  if (samples.empty()) return {0, 0.0};
  const double r2 = radius * radius;
  std::vector<bool> covered(modes.size(), false);
  std::size_t in_radius = 0;
  for (const auto& s : samples) {
    bool hit = false;
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const double dx = s[0] - modes[m][0];
      const double dy = s[1] - modes[m][1];
      if (dx * dx + dy * dy <= r2) {
        covered[m] = true;
        hit = true;
      }
    }
    if (hit) ++in_radius;
  }
  int n_covered = 0;
  for (bool c : covered)
    if (c) ++n_covered;
  return {n_covered,
          static_cast<double>(in_radius) / static_cast<double>(samples.size())};
}

}  // namespace dgansim
