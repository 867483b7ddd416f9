#include "swe/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace swe {

namespace {

double wrap(double z, double period) {
  double w = z - period * std::floor(z / period);
  if (w >= period) w -= period;  // guard against rounding at the seam
  return w < 0.0 ? 0.0 : w;
}

}  // namespace

EigenPair eigenpair(Interval domain) {
  if (!(domain.J > 0.0))
    throw std::domain_error("eigenpair: domain length must be positive");
  EigenPair e;
  e.J = domain.J;
  e.mu1 = (pi / domain.J) * (pi / domain.J);
  return e;
}

std::vector<double> projection_weights(const SpatialGrid& grid,
                                       const EigenPair& eig) {
  const int n = grid.n_nodes();
  const double dx = grid.dx();
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) {
    double tw = (j == 0 || j == n - 1) ? 0.5 * dx : dx;
    w[j] = tw * eig.psi(grid.x(j));
  }
  return w;
}

double project(std::span<const double> u, const SpatialGrid& grid,
               const EigenPair& eig) {
  if (static_cast<int>(u.size()) != grid.n_nodes())
    throw std::invalid_argument("project: sample count does not match grid");
  std::vector<double> w = projection_weights(grid, eig);
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) acc += w[j] * u[j];
  return acc;
}

int required_images(double t, Interval domain) {
  if (!(domain.J > 0.0))
    throw std::domain_error("required_images: domain length must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("required_images: t < 0");
  return static_cast<int>(std::ceil((t + domain.J) / domain.J));
}

double kernel_s(double t, double x, Interval domain, int n_images) {
  if (n_images < required_images(t, domain))
    throw std::invalid_argument("kernel_s: image truncation too small for t");
  double sum = 0.0;
  for (int n = -n_images; n <= n_images; ++n) {
    double z = x + static_cast<double>(n) * domain.J;
    if (std::abs(z) <= t) sum += 0.5;
  }
  return sum;
}

LatticeIntegral::LatticeIntegral(std::span<const double> nodes, double period)
    : vals_(nodes.begin(), nodes.end()), period_(period) {
  if (vals_.size() < 2)
    throw std::invalid_argument("lattice integral: need at least two nodes");
  if (!(period_ > 0.0))
    throw std::domain_error("lattice integral: period must be positive");
  dx_ = period_ / static_cast<double>(vals_.size() - 1);
  prefix_.resize(vals_.size());
  prefix_[0] = 0.0;
  for (std::size_t k = 1; k < vals_.size(); ++k)
    prefix_[k] = prefix_[k - 1] + 0.5 * dx_ * (vals_[k - 1] + vals_[k]);
}

double LatticeIntegral::at(double z) const {
  const std::size_t cells = vals_.size() - 1;
  double s = z / dx_;
  auto k = static_cast<std::size_t>(std::clamp(
      std::floor(s), 0.0, static_cast<double>(cells - 1)));
  double xi = z - static_cast<double>(k) * dx_;
  xi = std::clamp(xi, 0.0, dx_);
  double slope = (vals_[k + 1] - vals_[k]) / dx_;
  double uz = vals_[k] + slope * xi;
  return prefix_[k] + 0.5 * xi * (vals_[k] + uz);
}

double LatticeIntegral::window(double a, double b) const {
  if (!(b >= a)) throw std::invalid_argument("lattice integral: b < a");
  // shift so the left end lies in [0, period)
  double shift = period_ * std::floor(a / period_);
  double lo = a - shift, hi = b - shift;
  double periods = std::floor(hi / period_);
  double rem = hi - periods * period_;
  return periods * total() + at(rem) - at(lo);
}

std::vector<double> odd_extension(std::span<const double> nodes) {
  if (nodes.size() < 2)
    throw std::invalid_argument("odd_extension: need at least two nodes");
  const std::size_t n = nodes.size() - 1;
  std::vector<double> out(2 * n + 1);
  for (std::size_t k = 0; k <= n; ++k) out[k] = nodes[k];
  for (std::size_t k = n + 1; k <= 2 * n; ++k) out[k] = -nodes[2 * n - k];
  return out;
}

double linear_solution(const std::function<double(double)>& u0,
                       const std::function<double(double)>& v0, double t,
                       double x, Interval domain, const SpatialGrid& grid) {
  if (!(t >= 0.0)) throw std::invalid_argument("linear_solution: t < 0");
  const double J = domain.J;
  double travel = 0.5 * (u0(wrap(x + t, J)) + u0(wrap(x - t, J)));
  std::vector<double> v(grid.n_nodes());
  for (int j = 0; j < grid.n_nodes(); ++j) v[j] = v0(grid.x(j));
  LatticeIntegral vi(v, J);
  return travel + 0.5 * vi.window(x - t, x + t);
}

double linear_solution_dirichlet(const std::function<double(double)>& u0,
                                 const std::function<double(double)>& v0,
                                 double t, double x, Interval domain,
                                 const SpatialGrid& grid) {
  if (!(t >= 0.0)) throw std::invalid_argument("linear_solution: t < 0");
  const double J = domain.J;
  auto odd = [&](const std::function<double(double)>& f, double z) {
    double w = wrap(z, 2.0 * J);
    return w <= J ? f(w) : -f(2.0 * J - w);
  };
  double travel = 0.5 * (odd(u0, x + t) + odd(u0, x - t));
  std::vector<double> v(grid.n_nodes());
  for (int j = 0; j < grid.n_nodes(); ++j) v[j] = v0(grid.x(j));
  LatticeIntegral vi(odd_extension(v), 2.0 * J);
  return travel + 0.5 * vi.window(x - t, x + t);
}

}  // namespace swe
