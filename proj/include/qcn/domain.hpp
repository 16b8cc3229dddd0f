#pragma once

#include <complex>
#include <functional>
#include <memory>

namespace qcn {

using complexd = std::complex<double>;

// Star-shaped planar domain described by a polar boundary radius
// theta -> rho(theta). Pinched domains (rho -> 0 at the ends of the angular
// range) are allowed; the boundary then closes through the origin.
class DomainSpec {
 public:
  DomainSpec() = default;

  // Axis-aligned ellipse with the given semi-axes (exact area/diameter).
  static DomainSpec ellipse(double semi_x, double semi_y);
  static DomainSpec polar(std::function<double(double)> rho, double theta_min,
                          double theta_max, bool periodic);
  static DomainSpec square(double side);

  double rho(double theta) const;
  double theta_min() const { return theta_min_; }
  double theta_max() const { return theta_max_; }
  bool periodic() const { return periodic_; }

  double area() const { return area_; }
  double diameter() const { return diameter_; }
  bool convex() const { return convex_; }
  // Radius R* of the disc with the same area.
  double same_area_radius() const;

  bool is_ellipse() const { return is_ellipse_; }
  double semi_x() const { return semi_x_; }
  double semi_y() const { return semi_y_; }

  bool contains(complexd z, double shrink = 1.0) const;

 private:
  void finalize(bool exact_ellipse);

  std::function<double(double)> rho_;
  double theta_min_ = 0.0;
  double theta_max_ = 0.0;
  bool periodic_ = true;
  double area_ = 0.0;
  double diameter_ = 0.0;
  bool convex_ = false;
  bool is_ellipse_ = false;
  double semi_x_ = 0.0;
  double semi_y_ = 0.0;
};

}  // namespace qcn
