#pragma once

#include <array>
#include <vector>

#include "trispec/global_relation.hpp"
#include "trispec/manufactured.hpp"

namespace tri {

// Lattice z3 + h (i e1 + j e2), i, j >= 0, i + j <= N, e1 towards z2 and e2 towards z1.
// Side 1 is i + j = N, side 2 is j = 0, side 3 is i = 0.
class TriangularGrid {
public:
    TriangularGrid(double l, int N);

    int N() const { return N_; }
    double h() const { return h_; }
    double side_length() const { return l_; }
    int size() const { return (N_ + 1) * (N_ + 2) / 2; }
    int index(int i, int j) const { return j * (N_ + 1) - j * (j - 1) / 2 + i; }
    bool valid(int i, int j) const { return i >= 0 && j >= 0 && i + j <= N_; }
    cplx node(int i, int j) const;
    // sides through (i, j): bit j-1 set for side j
    unsigned sides(int i, int j) const;
    // k-th node of side j in increasing s, s = -l/2 + k h
    std::array<int, 2> side_node(int side, int k) const;

private:
    double l_, h_;
    int N_;
    cplx z3_, e1_, e2_;
};

struct FDSolution {
    TriangularGrid grid;
    std::vector<double> u;  // indexed by grid.index(i, j)
    TraceSet traces;        // given data plus extracted complementary traces
    bool gauge_fixed = false;  // lambda = 0 pure Neumann: mean of u set to zero
    double compatibility = 0.0;  // Lagrange multiplier of the gauge row (0 for compatible data)

    double at(int i, int j) const { return u[grid.index(i, j)]; }
    // max |u - q| over all nodes (after removing the mean difference when gauge_fixed)
    double max_error(const ManufacturedSolution& sol) const;
};

// Six-neighbour lattice Laplacian minus 4 lambda on a triangle of side l with h = l / N.
// Neumann and Robin sides (beta = pi/2 only) use vertex-centred finite volumes.
FDSolution fd_solve(const ProblemSpec& spec, int N);
// h must divide l
FDSolution fd_solve_h(const ProblemSpec& spec, double h);

// Problem with data taken from an exact solution; kinds per side, Robin uses gamma[j].
ProblemSpec manufactured_problem(const ManufacturedSolution& sol, double l, const std::array<BcKind, 3>& kinds,
                                 const std::array<double, 3>& gamma = {0.0, 0.0, 0.0});

// err(N) / err(2N) for the nodal max error
double richardson_ratio(const ManufacturedSolution& sol, const ProblemSpec& spec, int N);

}  // namespace tri
