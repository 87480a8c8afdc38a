#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "qmclat/random_field.hpp"

namespace qmclat {

// Uniform mesh on (0, 1) with homogeneous Dirichlet ends.
struct FemMesh {
  int n_cells = 2;
  double h = 0.5;

  static FemMesh make(int n_cells);
  double node(int i) const { return i * h; }  // i = 0..n_cells
};

// Diffusion coefficient truncated to s parametric terms, y in [-1/2,1/2]^s.
struct TruncatedCoefficient {
  RandomField field;
  std::vector<double> y;

  double operator()(double x) const { return field.coefficient(x, y); }
};

// Piecewise-linear Galerkin solution of -(a u')' = f, u(0) = u(1) = 0:
// midpoint quadrature for a per cell, trapezoidal load, tridiagonal
// elimination. Returns the interior nodal values.
std::vector<double> assemble_solve(const FemMesh& mesh, const TruncatedCoefficient& coeff,
                                   const std::function<double(double)>& f);

// Trapezoidal approximation of int g(x) u_h(x) dx from interior nodal values.
double functional_g(const FemMesh& mesh, std::span<const double> interior,
                    const std::function<double(double)>& g);

// Discrete energy norm squared, int a (u_h')^2, with midpoint a per cell.
double energy_norm_sq(const FemMesh& mesh, const TruncatedCoefficient& coeff,
                      std::span<const double> interior);

struct ConvergenceProbe {
  std::vector<double> values;   // G(u_h) per mesh level
  std::vector<double> orders;   // observed order per refinement step
  std::vector<bool> degenerate;  // difference at rounding level, order unreliable
};

// Observed convergence orders of G(u_h) across mesh levels at a fixed y.
// With an exact reference the errors are measured against it; otherwise the
// orders come from successive differences.
ConvergenceProbe fem_convergence_probe(const RandomField& field, const std::vector<double>& y,
                                       const std::function<double(double)>& f,
                                       const std::function<double(double)>& g,
                                       std::span<const int> n_cells_seq,
                                       double exact = std::numeric_limits<double>::quiet_NaN());

}  // namespace qmclat
