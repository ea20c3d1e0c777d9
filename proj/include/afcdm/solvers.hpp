#pragma once
// Auxiliary field solvers feeding generating data: a 2-d Poisson solver for
// the base potential (direct banded LU, optional SOR), a damped-Newton solver
// for the generalized Taubes vortex equation, and modified-KdV traveling-wave
// profiles with residual evaluation.

#include <functional>
#include <optional>
#include <vector>

#include "afcdm/field.hpp"

namespace afcdm {

class SolverError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;              // final discrete residual, inf norm
    std::vector<double> history;        // residual per iteration (iterative paths)
};

struct PoissonProblem {
    GridPtr grid;              // needs x1, x2 with n >= 17 each
    ScalarField rhs;           // psi_xx + psi_yy = rhs (callers pass 2*J1)
    // Dirichlet boundary values as a function of the boundary coordinate
    std::function<double(double x1, double x2)> boundary = [](double, double) { return 0.0; };
    enum class Method { DirectBanded, Sor };
    Method method = Method::DirectBanded;
    double sor_tol = 1e-10;
    int sor_max_iter = 20000;
};

ScalarField solve_poisson2d(const PoissonProblem& p, SolveStats* stats = nullptr);

struct TaubesProblem {
    GridPtr grid;
    ScalarField omega0;  // conformal factor
    double C0 = 1.0, C1 = 1.0;
    std::function<double(double x1, double x2)> boundary = [](double, double) { return 0.0; };
    double newton_tol = 1e-11;
    int newton_max_iter = 50;
    double damping = 1.0;  // initial step scale, in (0, 1]
};

// solves lap psi = Omega0 (C0 - C1 exp(2 psi)) by damped Newton; each linear
// step reuses the banded factorization machinery
ScalarField solve_taubes(const TaubesProblem& p, SolveStats* stats = nullptr);

// traveling kink of  u_t - 6 u^2 u_r + u_rrr = 0:  u = k tanh(k r + 2 k^3 t)
ScalarField mkdv_profile(double k, const GridPtr& grid, Ax r_axis, Ax t_axis);
// PDE residual of an arbitrary field under the same equation
ScalarField mkdv_residual(const ScalarField& eta, Ax r_axis, Ax t_axis);

}  // namespace afcdm
