#include "qmclat/pde.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qmclat {

FemMesh FemMesh::make(int n_cells) {
  if (n_cells < 2) throw std::invalid_argument("mesh needs at least two cells");
  return FemMesh{n_cells, 1.0 / static_cast<double>(n_cells)};
}

std::vector<double> assemble_solve(const FemMesh& mesh, const TruncatedCoefficient& coeff,
                                   const std::function<double(double)>& f) {
  const int n = mesh.n_cells;
  const double h = mesh.h;

  // per-cell conductances a(midpoint)/h
  std::vector<double> cond(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) {
    const double a = coeff((e + 0.5) * h);
    if (!(a > 0.0))
      throw std::domain_error("diffusion coefficient is not positive at x = " +
                              std::to_string((e + 0.5) * h));
    cond[static_cast<std::size_t>(e)] = a / h;
  }

  // tridiagonal Galerkin system on the interior nodes
  const int dim = n - 1;
  std::vector<double> diag(static_cast<std::size_t>(dim)), rhs(static_cast<std::size_t>(dim));
  std::vector<double> off(static_cast<std::size_t>(dim > 0 ? dim - 1 : 0));
  for (int i = 0; i < dim; ++i) {
    diag[static_cast<std::size_t>(i)] =
        cond[static_cast<std::size_t>(i)] + cond[static_cast<std::size_t>(i + 1)];
    rhs[static_cast<std::size_t>(i)] = h * f(mesh.node(i + 1));  // trapezoidal load
    if (i + 1 < dim) off[static_cast<std::size_t>(i)] = -cond[static_cast<std::size_t>(i + 1)];
  }

  // Thomas elimination; positive pivots certify positive definiteness.
  for (int i = 1; i < dim; ++i) {
    const double pivot = diag[static_cast<std::size_t>(i - 1)];
    if (!(pivot > 0.0)) throw std::domain_error("stiffness matrix lost positive definiteness");
    const double m = off[static_cast<std::size_t>(i - 1)] / pivot;
    diag[static_cast<std::size_t>(i)] -= m * off[static_cast<std::size_t>(i - 1)];
    rhs[static_cast<std::size_t>(i)] -= m * rhs[static_cast<std::size_t>(i - 1)];
  }
  std::vector<double> u(static_cast<std::size_t>(dim));
  if (dim > 0) {
    if (!(diag[static_cast<std::size_t>(dim - 1)] > 0.0))
      throw std::domain_error("stiffness matrix lost positive definiteness");
    u[static_cast<std::size_t>(dim - 1)] =
        rhs[static_cast<std::size_t>(dim - 1)] / diag[static_cast<std::size_t>(dim - 1)];
    for (int i = dim - 2; i >= 0; --i)
      u[static_cast<std::size_t>(i)] =
          (rhs[static_cast<std::size_t>(i)] -
           off[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i + 1)]) /
          diag[static_cast<std::size_t>(i)];
  }
  return u;
}

double functional_g(const FemMesh& mesh, std::span<const double> interior,
                    const std::function<double(double)>& g) {
  if (static_cast<int>(interior.size()) != mesh.n_cells - 1)
    throw std::invalid_argument("nodal vector does not match the mesh");
  double acc = 0.0;
  for (int i = 1; i < mesh.n_cells; ++i)
    acc += g(mesh.node(i)) * interior[static_cast<std::size_t>(i - 1)];
  return acc * mesh.h;  // boundary values vanish
}

double energy_norm_sq(const FemMesh& mesh, const TruncatedCoefficient& coeff,
                      std::span<const double> interior) {
  if (static_cast<int>(interior.size()) != mesh.n_cells - 1)
    throw std::invalid_argument("nodal vector does not match the mesh");
  double acc = 0.0;
  for (int e = 0; e < mesh.n_cells; ++e) {
    const double left = (e == 0) ? 0.0 : interior[static_cast<std::size_t>(e - 1)];
    const double right = (e == mesh.n_cells - 1) ? 0.0 : interior[static_cast<std::size_t>(e)];
    const double slope = (right - left) / mesh.h;
    acc += coeff((e + 0.5) * mesh.h) * slope * slope * mesh.h;
  }
  return acc;
}

ConvergenceProbe fem_convergence_probe(const RandomField& field, const std::vector<double>& y,
                                       const std::function<double(double)>& f,
                                       const std::function<double(double)>& g,
                                       std::span<const int> n_cells_seq, double exact) {
  if (n_cells_seq.size() < 3)
    throw std::invalid_argument("convergence probe needs at least three mesh levels");

  ConvergenceProbe probe;
  TruncatedCoefficient coeff{field, y};
  std::vector<double> hs;
  for (int n : n_cells_seq) {
    const FemMesh mesh = FemMesh::make(n);
    const auto u = assemble_solve(mesh, coeff, f);
    probe.values.push_back(functional_g(mesh, u, g));
    hs.push_back(mesh.h);
  }

  const bool has_exact = !std::isnan(exact);
  double scale = 0.0;
  for (double v : probe.values) scale = std::max(scale, std::abs(v));
  const double rounding = 1e-13 * std::max(scale, 1.0);

  // errors against the reference, or successive differences without one
  std::vector<double> err;
  if (has_exact) {
    for (double v : probe.values) err.push_back(std::abs(v - exact));
  } else {
    for (std::size_t i = 0; i + 1 < probe.values.size(); ++i)
      err.push_back(std::abs(probe.values[i] - probe.values[i + 1]));
  }
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    const bool bad = err[i] <= rounding || err[i + 1] <= rounding;
    probe.degenerate.push_back(bad);
    if (bad) {
      probe.orders.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      const double ratio_h = hs[i] / hs[i + 1];
      probe.orders.push_back(std::log(err[i] / err[i + 1]) / std::log(ratio_h));
    }
  }
  return probe;
}

}  // namespace qmclat
