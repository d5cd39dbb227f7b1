#include "ahdacs/field.hpp"

#include <cmath>
#include <stdexcept>

#include "ahdacs/rng.hpp"

namespace ahdacs {

double distance(Point a, Point b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

ScalarField ScalarField::gaussian_bumps(double extent, int bump_count, double height,
                                        double decay, std::uint64_t seed, double base) {
  if (extent <= 0.0) throw std::invalid_argument("gaussian_bumps: extent must be > 0");
  if (bump_count < 1) throw std::invalid_argument("gaussian_bumps: bump_count must be >= 1");
  if (height <= 0.0) throw std::invalid_argument("gaussian_bumps: height must be > 0");
  if (decay <= 0.0) throw std::invalid_argument("gaussian_bumps: decay must be > 0");

  ScalarField f;
  f.kind_ = FieldKind::GaussianBumps;
  f.extent_ = extent;
  f.seed_ = seed;
  f.base_ = base;
  Rng rng(mix64(seed, 0xb0b5ULL));
  f.bumps_.reserve(static_cast<std::size_t>(bump_count));
  for (int i = 0; i < bump_count; ++i) {
    Point c{rng.uniform(0.0, extent), rng.uniform(0.0, extent)};
    f.bumps_.push_back(Bump{c, height, decay});
  }
  return f;
}

ScalarField ScalarField::from_bumps(double extent, std::vector<Bump> bumps, double base) {
  if (extent <= 0.0) throw std::invalid_argument("from_bumps: extent must be > 0");
  ScalarField f;
  f.kind_ = FieldKind::GaussianBumps;
  f.extent_ = extent;
  f.base_ = base;
  f.bumps_ = std::move(bumps);
  return f;
}

ScalarField ScalarField::piecewise(double extent, double low, double high,
                                   double noise_variance, std::uint64_t seed) {
  if (extent <= 0.0) throw std::invalid_argument("piecewise: extent must be > 0");
  if (noise_variance < 0.0) throw std::invalid_argument("piecewise: noise_variance must be >= 0");
  ScalarField f;
  f.kind_ = FieldKind::Piecewise;
  f.extent_ = extent;
  f.seed_ = seed;
  f.low_ = low;
  f.high_ = high;
  f.noise_variance_ = noise_variance;
  return f;
}

double ScalarField::sample(Point p) const {
  if (p.x < 0.0 || p.x > extent_ || p.y < 0.0 || p.y > extent_)
    throw std::out_of_range("sample: position outside the field square");

  if (kind_ == FieldKind::GaussianBumps) {
    double v = base_;
    for (const Bump& b : bumps_) v += b.height * std::exp(-b.decay * distance(p, b.center));
    return v;
  }

  double v = (p.x < p.y) ? low_ : high_;
  if (noise_variance_ > 0.0) {
    auto qx = static_cast<std::int64_t>(std::floor(p.x));
    auto qy = static_cast<std::int64_t>(std::floor(p.y));
    std::uint64_t key = seed_chain({seed_, static_cast<std::uint64_t>(qx),
                                    static_cast<std::uint64_t>(qy)});
    v += std::sqrt(noise_variance_) * hashed_gaussian(key);
  }
  return v;
}

}  // namespace ahdacs
