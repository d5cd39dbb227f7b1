#pragma once

#include <cstdint>
#include <vector>

namespace ahdacs {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

enum class FieldKind { GaussianBumps, Piecewise };

struct Bump {
  Point center;
  double height;
  double decay;  // per meter
};

// Synthetic sensed phenomenon over [0, extent]^2. Sampling is a pure
// function of (field parameters, position); piecewise noise is hashed from
// the position quantized to 1 m, so repeated reads agree.
class ScalarField {
 public:
  static ScalarField gaussian_bumps(double extent, int bump_count, double height,
                                    double decay, std::uint64_t seed, double base = 0.0);
  static ScalarField piecewise(double extent, double low, double high,
                               double noise_variance, std::uint64_t seed);
  // Assemble a bump field from an explicit bump set.
  static ScalarField from_bumps(double extent, std::vector<Bump> bumps, double base = 0.0);

  double sample(Point p) const;  // throws std::out_of_range outside the square

  FieldKind kind() const { return kind_; }
  double extent() const { return extent_; }
  double base() const { return base_; }
  const std::vector<Bump>& bumps() const { return bumps_; }
  double low() const { return low_; }
  double high() const { return high_; }
  double noise_variance() const { return noise_variance_; }

 private:
  ScalarField() = default;

  FieldKind kind_ = FieldKind::GaussianBumps;
  double extent_ = 0.0;
  std::uint64_t seed_ = 0;
  // bumps
  std::vector<Bump> bumps_;
  double base_ = 0.0;
  // piecewise
  double low_ = 0.0;
  double high_ = 0.0;
  double noise_variance_ = 0.0;
};

}  // namespace ahdacs
