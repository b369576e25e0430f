#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "minlab/field.hpp"
#include "minlab/mesh.hpp"

namespace minlab {

// Half-cotangent of the angle at each corner of a parameter triangle; entry k
// is the contribution to the weight of the edge opposite corner k.
std::array<double, 3> cotangent_weights(const std::array<Vec2, 3>& tri);

// Gradient of the linear interpolant in parameter coordinates.
Vec2 param_gradient(const std::array<Vec2, 3>& tri, double f0, double f1,
                    double f2);

/// Cotangent Dirichlet form of a region, E(f) = sum_edges w_ij (f_i - f_j)^2,
/// with weights taken from parameter-domain triangle shapes. Rows of the
/// sparse matrix correspond to the region's interior vertices.
struct EnergyForm {
  struct Edge {
    Index i;
    Index j;
    double weight;
  };

  std::vector<Edge> edges;              // every region edge, i < j
  std::vector<Index> unknowns;          // interior vertex per row
  std::vector<Index> row_of_vertex;     // kNoIndex unless interior
  std::vector<std::size_t> row_ptr;     // CSR, interior x interior
  std::vector<Index> col;
  std::vector<double> val;
  std::vector<std::size_t> bnd_ptr;     // per-row coupling to boundary vertices
  std::vector<Index> bnd_vertex;
  std::vector<double> bnd_weight;

  double energy(const ScalarField& f) const;
};

EnergyForm assemble_energy(const Region& region);

struct SolveOptions {
  double relative_tolerance = 1e-10;
  std::size_t iteration_factor = 10;  // cap = factor * unknowns
};

struct SolveStats {
  std::size_t unknowns = 0;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Harmonic extension of boundary data into the region.
///
/// Minimizes the cotangent energy with the boundary vertices pinned, using
/// Jacobi-preconditioned conjugate gradients. Throws ErrorKind::degenerate
/// for an empty boundary and ErrorKind::numerical when the iteration cap is
/// reached. Vertices outside the region are absent in the result.
ScalarField solve_dirichlet(const Region& region,
                            const ScalarField& boundary_values,
                            const SolveOptions& options = {},
                            SolveStats* stats = nullptr);

// sum_T |grad_param f|^2 * area_param(T)
double dirichlet_energy(const ScalarField& f, const Region& region);

// Same energy written with the surface metric: |grad_Sigma f|^2 * area_Sigma,
// lambda_T the mean vertex conformal factor.
double dirichlet_energy_metric(const ScalarField& f, const Region& region);

// sum_T |grad_param f| * sqrt(area_ambient(T) * area_param(T)), the surface
// integral of |grad f| with lambda_T = area_ambient / area_param.
double gradient_l1(const ScalarField& f, const Region& region);

// Lumped vertex areas: one third of each incident region triangle's ambient
// area.
std::vector<double> vertex_areas(const Region& region);

}  // namespace minlab
