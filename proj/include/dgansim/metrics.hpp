#pragma once

#include <span>
#include <utility>

#include "dgansim/datasets.hpp"

namespace dgansim {

struct MetricReport {
  double frechet_gaussian = 0.0;
  int mode_coverage = 0;
  double high_quality_fraction = 0.0;
};

// Mean and population covariance of a 2-D sample set.
struct Moments2 {
  Vec2 mean{0.0, 0.0};
  // covariance entries: xx, xy, yy
  double cxx = 0.0, cxy = 0.0, cyy = 0.0;
};

Moments2 fit_moments(std::span<const Vec2> points);

// Squared Frechet distance between two Gaussians:
// |mu_a - mu_b|^2 + Tr(Sa + Sb - 2 (Sa Sb)^{1/2}), closed-form 2x2 square
// root via Tr sqrt(M) = sqrt(tr M + 2 sqrt(det M)). 1e-9*I is added to each
// covariance before the root; a tiny negative residue (> -1e-9) is clamped
// to zero.
double frechet_from_moments(const Moments2& a, const Moments2& b);

// Fit moments to both sets (each needs >= 3 points) and compare. Smaller is
// better, zero when the fitted moments agree.
double frechet_gaussian_distance(std::span<const Vec2> a, std::span<const Vec2> b);

// covered = number of modes with at least one sample within radius;
// fraction = share of samples within radius of their nearest mode.
// Empty samples give (0, 0).
std::pair<int, double> mode_coverage(std::span<const Vec2> samples,
                                     std::span<const Vec2> modes, double radius);

}  // namespace dgansim
