#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "trapwell/well.hpp"

namespace trapwell {

struct fd_zone_span {
    zone label = zone::z0;
    double lo = 0, hi = 0;
    std::size_t first = 0, last = 0;  // indices into fd_grid::points, inclusive
    double spacing = 0;
};

// Truncated grid made of equispaced sub-grids, one per zone.  Adjacent zones
// share their boundary point.
struct fd_grid {
    std::vector<double> points;  // ascending, cuts included
    double cut_left = 0, cut_right = 0;
    std::vector<fd_zone_span> zones;
    std::vector<std::size_t> junctions;  // indices of shared boundary points
    int points_per_zone = 0;
    int exterior_points = 0;
    double decay_margin = 0;
    bool ramps_collapsed = false;

    // Per-zone counts summed, shared points counted once per zone.
    std::size_t total_points() const;
};

// exterior_points = 0 uses points_per_zone for the outer zones too.
fd_grid build_grid(const well_spec& w, int points_per_zone = 501, double decay_margin = 40.0,
                   int exterior_points = 0);

// Discrete operator on the grid unknowns.  Order 2 is the symmetric
// flux-form matrix W^{-1/2} K W^{-1/2} + V on all interior points; orders 4
// and 6 use zone-local stencils with junction values eliminated through
// derivative-continuity rows, which leaves the matrix non-symmetric.
struct fd_operator {
    int order = 2;
    Eigen::SparseMatrix<double> matrix;
    std::vector<std::size_t> unknowns;  // grid index of each column
    // order 2 only: sqrt of the nodal weights, phi = y / w_sqrt
    Eigen::VectorXd w_sqrt;
    // orders 4, 6: junction value = sum of coef * phi[point]
    struct elimination {
        std::size_t junction = 0;
        std::vector<std::pair<std::size_t, double>> terms;
    };
    std::vector<elimination> eliminated;
    double asymmetry = 0;  // ||H - H^T||_F / ||H||_F
};

fd_operator build_operator(const well_spec& w, const fd_grid& g, int order);

// -f'' + v f at the unknowns for samples f on the grid (zero at the cuts).
Eigen::VectorXd apply_operator(const well_spec& w, const fd_grid& g, int order,
                               const Eigen::VectorXd& f);

struct fd_state {
    double beta = 0;
    Eigen::VectorXd phi;  // samples on fd_grid::points
};

struct fd_result {
    int order = 2;
    std::vector<fd_state> states;
    int inertia_count = 0;  // eigenvalues of the order-2 matrix below v2
    double asymmetry = 0;
    std::size_t size = 0;
};

// Bound-state eigenvalues in (0, v2] with eigenvectors normalized so that
// (1/2) * trapezoid integral of phi^2 is 1 and the largest |phi| is positive.
fd_result fd_eigenvalues(const well_spec& w, const fd_grid& g, int order);

// Number of eigenvalues of the order-2 matrix strictly below sigma.
int fd_count_below(const well_spec& w, const fd_grid& g, double sigma);

// One "row,col,value" line per nonzero, with a header row.
void write_triplets(std::ostream& os, const Eigen::SparseMatrix<double>& m);

// Fornberg weights for derivatives 0..m at z over nodes x; result[k][j] is
// the weight of node j for derivative k.
std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& x, int m);

}  // namespace trapwell
