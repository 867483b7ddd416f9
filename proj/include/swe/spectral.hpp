#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

// Interval geometry for the 1d wave operator: principal Dirichlet eigenpair,
// weighted projections, and the image-sum kernels used by the integral form
// of the solution.

namespace swe {

inline constexpr double pi = 3.141592653589793238462643383279502884;

struct Interval {
  double J = 1.0;  // length of (0, J)
};

// Principal Dirichlet eigenpair of -d^2/dx^2 on (0, J), with the
// eigenfunction normalized to unit integral.
struct EigenPair {
  double J = 1.0;
  double mu1 = pi * pi;  // (pi/J)^2
  double psi(double x) const { return pi / (2.0 * J) * std::sin(pi * x / J); }
};

// Uniform grid with nx cells, nx+1 nodes; x(0) = 0 and x(nx) = J exactly.
struct SpatialGrid {
  Interval domain;
  int nx = 0;

  SpatialGrid(Interval dom, int cells) : domain(dom), nx(cells) {
    if (!(domain.J > 0.0))
      throw std::domain_error("grid: domain length must be positive");
    if (nx < 8) throw std::invalid_argument("grid: need at least 8 cells");
  }
  double dx() const { return domain.J / nx; }
  int n_nodes() const { return nx + 1; }
  double x(int j) const {
    return domain.J * (static_cast<double>(j) / nx);
  }
};

EigenPair eigenpair(Interval domain);

// Trapezoid weights fused with psi; project() and the solvers share these so
// recorded projections are reproducible bit for bit.
std::vector<double> projection_weights(const SpatialGrid& grid,
                                       const EigenPair& eig);

// integral over (0, J) of psi * u for nodal samples u (trapezoid rule)
double project(std::span<const double> u, const SpatialGrid& grid,
               const EigenPair& eig);

// Smallest image count that makes the truncated kernel sum exact at time t.
int required_images(double t, Interval domain);

// S(t, x) = sum_n (1/2) 1_[-t,t](x + n J), truncated to |n| <= n_images.
double kernel_s(double t, double x, Interval domain, int n_images);

// Exact integrals of the piecewise-linear interpolant of nodal samples on
// [0, period], extended periodically. window() is what a kernel smoothing
// against S reduces to, with endpoint cells handled exactly.
class LatticeIntegral {
 public:
  LatticeIntegral(std::span<const double> nodes, double period);

  double total() const { return prefix_.back(); }
  // integral of the periodic extension over [a, b], b >= a
  double window(double a, double b) const;

 private:
  double at(double z) const;  // integral over [0, z], z in [0, period]
  std::vector<double> vals_, prefix_;
  double period_, dx_;
};

// odd reflection of nodal samples onto the doubled interval [0, 2J]
std::vector<double> odd_extension(std::span<const double> nodes);

// Solution of the free linear wave equation (unit speed) on the circle of
// circumference J: traveling-wave average of u0 plus the windowed mean of v0.
double linear_solution(const std::function<double(double)>& u0,
                       const std::function<double(double)>& v0, double t,
                       double x, Interval domain, const SpatialGrid& grid);

// Same with homogeneous Dirichlet ends, via odd images on the doubled circle.
double linear_solution_dirichlet(const std::function<double(double)>& u0,
                                 const std::function<double(double)>& v0,
                                 double t, double x, Interval domain,
                                 const SpatialGrid& grid);

}  // namespace swe
