#include <cmath>

#include "afcdm/solvers.hpp"

namespace afcdm {

namespace banded {

// symmetric banded solver (lower storage), Cholesky-free LDL^T variant is
// unnecessary here: the 5-point Laplacian with Dirichlet rows is positive
// definite up to sign, so plain banded LU without pivoting is stable enough
// for these systems. Storage: band[r][c], c in [0, bw], holds A(r, r-bw+c).
struct BandedLU {
    int n = 0, bw = 0;
    std::vector<double> a;  // (2*bw+1) diagonals, row-major: a[r*(2bw+1) + (bw + (c-r))]

    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * (2 * bw + 1) + (bw + c - r)]; }
    double get(int r, int c) const {
        if (c < r - bw || c > r + bw) return 0.0;
        return a[static_cast<std::size_t>(r) * (2 * bw + 1) + (bw + c - r)];
    }

    void factor() {
        for (int k = 0; k < n; ++k) {
            const double piv = get(k, k);
            if (std::fabs(piv) < 1e-300) throw SolverError("banded LU: zero pivot");
            for (int r = k + 1; r <= std::min(n - 1, k + bw); ++r) {
                const double m = get(r, k) / piv;
                if (m == 0.0) continue;
                at(r, k) = m;
                for (int c = k + 1; c <= std::min(n - 1, k + bw); ++c)
                    at(r, c) -= m * get(k, c);
            }
        }
    }

    void solve(std::vector<double>& x) const {
        for (int r = 1; r < n; ++r) {
            double s = x[r];
            for (int c = std::max(0, r - bw); c < r; ++c) s -= get(r, c) * x[c];
            x[r] = s;
        }
        for (int r = n - 1; r >= 0; --r) {
            double s = x[r];
            for (int c = r + 1; c <= std::min(n - 1, r + bw); ++c) s -= get(r, c) * x[c];
            x[r] = s / get(r, r);
        }
    }
};

}  // namespace banded

namespace {

struct Lattice {
    int nx = 0, ny = 0;
    double hx = 0, hy = 0;
    const Axis* ax = nullptr;
    const Axis* ay = nullptr;
    int id(int i, int j) const { return i * ny + j; }
    bool boundary(int i, int j) const { return i == 0 || j == 0 || i == nx - 1 || j == ny - 1; }
};

Lattice lattice_of(const GridPtr& grid) {
    Lattice L;
    L.ax = &grid->axis(Ax::X1);
    L.ay = &grid->axis(Ax::X2);
    L.nx = L.ax->n;
    L.ny = L.ay->n;
    if (L.nx < 17 || L.ny < 17) throw SolverError("poisson: grid must be at least 17 x 17");
    L.hx = L.ax->spacing();
    L.hy = L.ay->spacing();
    return L;
}

// assemble L psi = rhs with Dirichlet rows; diag_extra adds a per-node term
// to the diagonal (Newton steps); returns solution lattice vector
std::vector<double> solve_linear(const Lattice& L, const std::vector<double>& rhs,
                                 const std::vector<double>& diag_extra,
                                 const std::vector<double>& bvals) {
    banded::BandedLU lu;
    lu.n = L.nx * L.ny;
    lu.bw = L.ny;
    lu.a.assign(static_cast<std::size_t>(lu.n) * (2 * lu.bw + 1), 0.0);
    std::vector<double> b(static_cast<std::size_t>(lu.n), 0.0);
    const double cx = 1.0 / (L.hx * L.hx), cy = 1.0 / (L.hy * L.hy);
    for (int i = 0; i < L.nx; ++i)
        for (int j = 0; j < L.ny; ++j) {
            const int r = L.id(i, j);
            if (L.boundary(i, j)) {
                lu.at(r, r) = 1.0;
                b[r] = bvals[r];
                continue;
            }
            lu.at(r, r) = -2.0 * (cx + cy) + (diag_extra.empty() ? 0.0 : diag_extra[r]);
            lu.at(r, L.id(i - 1, j)) = cx;
            lu.at(r, L.id(i + 1, j)) = cx;
            lu.at(r, L.id(i, j - 1)) = cy;
            lu.at(r, L.id(i, j + 1)) = cy;
            b[r] = rhs[r];
        }
    lu.factor();
    lu.solve(b);
    return b;
}

// discrete 5-point Laplacian of a lattice vector (interior only)
double lap_at(const Lattice& L, const std::vector<double>& u, int i, int j) {
    const double cx = 1.0 / (L.hx * L.hx), cy = 1.0 / (L.hy * L.hy);
    return (u[L.id(i - 1, j)] - 2 * u[L.id(i, j)] + u[L.id(i + 1, j)]) * cx +
           (u[L.id(i, j - 1)] - 2 * u[L.id(i, j)] + u[L.id(i, j + 1)]) * cy;
}

std::vector<double> to_lattice(const Lattice& L, const ScalarField& f) {
    std::vector<double> v(static_cast<std::size_t>(L.nx) * L.ny);
    std::array<int, kMaxAxes> idx{};
    for (int i = 0; i < L.nx; ++i)
        for (int j = 0; j < L.ny; ++j) {
            idx[static_cast<int>(Ax::X1)] = i;
            idx[static_cast<int>(Ax::X2)] = j;
            v[L.id(i, j)] = f.at(idx);
        }
    return v;
}

ScalarField from_lattice(const GridPtr& grid, const Lattice& L, const std::vector<double>& v) {
    // x1-major ordering matches the canonical row-major (x1, x2) layout
    return ScalarField(grid, mask_of(Ax::X1) | mask_of(Ax::X2), v);
}

std::vector<double> boundary_vals(const Lattice& L,
                                  const std::function<double(double, double)>& bf) {
    std::vector<double> b(static_cast<std::size_t>(L.nx) * L.ny, 0.0);
    for (int i = 0; i < L.nx; ++i)
        for (int j = 0; j < L.ny; ++j)
            if (L.boundary(i, j)) b[L.id(i, j)] = bf(L.ax->coord(i), L.ay->coord(j));
    return b;
}

}  // namespace

ScalarField solve_poisson2d(const PoissonProblem& p, SolveStats* stats) {
    const Lattice L = lattice_of(p.grid);
    const std::vector<double> rhs = to_lattice(L, p.rhs);
    const std::vector<double> bvals = boundary_vals(L, p.boundary);
    std::vector<double> u;
    SolveStats st;
    if (p.method == PoissonProblem::Method::DirectBanded) {
        u = solve_linear(L, rhs, {}, bvals);
        st.iterations = 1;
    } else {
        u = bvals;
        const double cx = 1.0 / (L.hx * L.hx), cy = 1.0 / (L.hy * L.hy);
        const double diag = -2.0 * (cx + cy);
        const double omega = 1.85;
        for (int it = 0; it < p.sor_max_iter; ++it) {
            double rmax = 0.0;
            for (int i = 1; i < L.nx - 1; ++i)
                for (int j = 1; j < L.ny - 1; ++j) {
                    const double r = rhs[L.id(i, j)] - lap_at(L, u, i, j);
                    rmax = std::max(rmax, std::fabs(r));
                    u[L.id(i, j)] += omega * r / diag;
                }
            st.history.push_back(rmax);
            st.iterations = it + 1;
            if (rmax < p.sor_tol) break;
            if (!std::isfinite(rmax) ||
                (st.history.size() > 50 && rmax > 10 * st.history.front())) {
                if (stats) *stats = st;
                throw SolverError("poisson SOR diverged; residual " + std::to_string(rmax));
            }
        }
        if (st.history.empty() || st.history.back() > p.sor_tol) {
            if (stats) *stats = st;
            throw SolverError("poisson SOR did not reach tolerance");
        }
    }
    // report the discrete residual
    double rmax = 0.0;
    for (int i = 1; i < L.nx - 1; ++i)
        for (int j = 1; j < L.ny - 1; ++j)
            rmax = std::max(rmax, std::fabs(lap_at(L, u, i, j) - rhs[L.id(i, j)]));
    st.residual = rmax;
    if (stats) *stats = st;
    return from_lattice(p.grid, L, u);
}

ScalarField solve_taubes(const TaubesProblem& p, SolveStats* stats) {
    if (!(p.damping > 0.0 && p.damping <= 1.0)) throw SolverError("taubes: damping in (0,1]");
    const Lattice L = lattice_of(p.grid);
    const std::vector<double> om = to_lattice(L, p.omega0);
    const std::vector<double> bvals = boundary_vals(L, p.boundary);
    std::vector<double> u = bvals;  // initial guess: boundary extension (zero inside)
    SolveStats st;
    auto residual = [&](const std::vector<double>& v, std::vector<double>& r) {
        double rmax = 0.0;
        r.assign(v.size(), 0.0);
        for (int i = 1; i < L.nx - 1; ++i)
            for (int j = 1; j < L.ny - 1; ++j) {
                const int id = L.id(i, j);
                r[id] = lap_at(L, v, i, j) - om[id] * (p.C0 - p.C1 * std::exp(2 * v[id]));
                rmax = std::max(rmax, std::fabs(r[id]));
            }
        return rmax;
    };
    std::vector<double> r;
    double rnorm = residual(u, r);
    st.history.push_back(rnorm);
    for (int it = 0; it < p.newton_max_iter && rnorm > p.newton_tol; ++it) {
        // J delta = -F;  J = lap + 2 Omega0 C1 exp(2 psi)
        std::vector<double> diag(u.size(), 0.0), rhs(u.size(), 0.0);
        for (int i = 1; i < L.nx - 1; ++i)
            for (int j = 1; j < L.ny - 1; ++j) {
                const int id = L.id(i, j);
                diag[id] = 2.0 * om[id] * p.C1 * std::exp(2 * u[id]);
                rhs[id] = -r[id];
            }
        const std::vector<double> zero_b(u.size(), 0.0);
        std::vector<double> delta = solve_linear(L, rhs, diag, zero_b);
        // backtracking line search on the residual norm
        double step = p.damping;
        std::vector<double> trial(u.size());
        double tnorm = rnorm;
        for (int back = 0; back < 30; ++back) {
            for (std::size_t k = 0; k < u.size(); ++k) trial[k] = u[k] + step * delta[k];
            tnorm = residual(trial, r);
            if (tnorm < rnorm || tnorm < p.newton_tol) break;
            step *= 0.5;
        }
        if (!(tnorm < rnorm) && tnorm > p.newton_tol) {
            st.residual = rnorm;
            st.iterations = it + 1;
            if (stats) *stats = st;
            throw SolverError("taubes Newton stalled; residual " + std::to_string(rnorm));
        }
        u.swap(trial);
        rnorm = tnorm;
        st.history.push_back(rnorm);
        st.iterations = it + 1;
    }
    if (rnorm > p.newton_tol) {
        st.residual = rnorm;
        if (stats) *stats = st;
        throw SolverError("taubes Newton did not converge; final residual " +
                          std::to_string(rnorm));
    }
    st.residual = rnorm;
    if (stats) *stats = st;
    return from_lattice(p.grid, L, u);
}

}  // namespace afcdm
