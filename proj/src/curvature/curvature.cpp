#include "afcdm/curvature.hpp"

#include <cmath>

#include "afcdm/generator.hpp"

namespace afcdm {

namespace {

ScalarField log_abs(const ScalarField& f) {
    return map(f, [](double v) { return std::log(std::fabs(v)); });
}

}  // namespace

ScalarField ricci_h(const SMetric& m) {
    const ScalarField& g1 = m.g(1);
    const ScalarField& g2 = m.g(2);
    const ScalarField g1d = partial(g1, Ax::X1), g1p = partial(g1, Ax::X2);
    const ScalarField g2d = partial(g2, Ax::X1), g2p = partial(g2, Ax::X2);
    const ScalarField g2dd = partial(g2, Ax::X1, 2), g1pp = partial(g1, Ax::X2, 2);
    ScalarField bracket = g2dd - 0.5 * (g1d * g2d / g1) - 0.5 * (g2d * g2d / g2) + g1pp -
                          0.5 * (g1p * g2p / g2) - 0.5 * (g1p * g1p / g1);
    return -0.5 * (bracket / (g1 * g2));
}

ScalarField ricci_v(const SMetric& m, int s) {
    const Ax fiber = m.config().fiber_axis(s);
    const ScalarField& hF = m.h_fiber(s);
    const ScalarField& hP = m.h_partner(s);
    const ScalarField hFs = partial(hF, fiber);
    const ScalarField hPs = partial(hP, fiber);
    const ScalarField hPss = partial(hP, fiber, 2);
    ScalarField num = -1.0 * hPss + 0.5 * (hPs * hPs / hP) + 0.5 * (hFs * hPs / hF);
    return 0.5 * (num / (hF * hP));
}

DecoupledCoefficients decoupled_coefficients(const SMetric& m, int s) {
    DecoupledCoefficients dc;
    dc.s = s;
    const Ax fiber = m.config().fiber_axis(s);
    const ScalarField& hF = m.h_fiber(s);
    const ScalarField& hP = m.h_partner(s);
    const ScalarField hPs = partial(hP, fiber);
    const ScalarField prod = hF * hP;
    dc.varpi = log_abs(hPs) - 0.5 * log_abs(prod);
    dc.beta = hPs * partial(dc.varpi, fiber);
    dc.gamma = partial(1.5 * log_abs(hP) - log_abs(hF), fiber);
    for (int k = 0; k < 2 * s - 2; ++k)
        dc.alpha.push_back(hPs * partial(dc.varpi, axis_of_slot(k + 1)));
    return dc;
}

std::pair<std::vector<ScalarField>, std::vector<ScalarField>> ricci_mixed(const SMetric& m, int s,
                                                                          bool literal_vhc4) {
    const Ax fiber = m.config().fiber_axis(s);
    const ScalarField& hF = m.h_fiber(s);
    const ScalarField& hP = m.h_partner(s);
    const ScalarField hFs = partial(hF, fiber);
    const ScalarField hPs = partial(hP, fiber);
    const ScalarField hPss = partial(hP, fiber, 2);
    const NRow& w = m.w_row(s);
    const NRow& n = m.n_row(s);
    const ScalarField gamma = partial(1.5 * log_abs(hP) - log_abs(hF), fiber);
    // bracket = hP** - (hP*)^2/2hP - hF* hP*/2hF  (= varpi* hP*)
    const ScalarField bracket = hPss - 0.5 * (hPs * hPs / hP) - 0.5 * (hFs * hPs / hF);
    std::vector<ScalarField> rF, rP;
    for (int k = 0; k < 2 * s - 2; ++k) {
        const Ax ak = axis_of_slot(k + 1);
        const ScalarField dk_hF = partial(hF, ak);
        const ScalarField dk_hP = partial(hP, ak);
        const ScalarField dk_hPs = partial(hPs, ak);
        ScalarField RFk = 0.5 * (w.coef[k] * bracket / hP) +
                          0.25 * ((hPs / hP) * (dk_hF / hF + dk_hP / hP)) - 0.5 * (dk_hPs / hP);
        rF.push_back(std::move(RFk));
        const ScalarField nks = partial(n.coef[k], fiber);
        const ScalarField nkss = partial(n.coef[k], fiber, 2);
        if (!literal_vhc4) {
            rP.push_back(-0.5 * ((hP / hF) * (nkss + gamma * nks)));
        } else {
            // literal printed variant, with the (h_F)* denominators as displayed;
            // diagnostic only
            ScalarField lit = -0.5 * (nkss * hP / hF) +
                              nks * (-0.5 * (hPs / hF) + 0.5 * (hPs * hFs / hFs) -
                                     0.25 * (hPs * hFs / hFs) - 0.25 * (hPs / hF));
            rP.push_back(std::move(lit));
        }
    }
    return {std::move(rF), std::move(rP)};
}

ScalarField ricci_scalar(const SMetric& m) {
    ScalarField s = ricci_h(m);
    for (int sh = 2; sh <= 4; ++sh) s = s + ricci_v(m, sh);
    return 2.0 * s;
}

std::array<ScalarField, 4> einstein_diag(const SMetric& m) {
    const ScalarField r2 = ricci_h(m);
    const ScalarField r4 = ricci_v(m, 2);
    const ScalarField r6 = ricci_v(m, 3);
    const ScalarField r8 = ricci_v(m, 4);
    return {-1.0 * (r4 + r6 + r8), -1.0 * (r2 + r6 + r8), -1.0 * (r2 + r4 + r8),
            -1.0 * (r2 + r4 + r6)};
}

RicciCoeffs ricci_all(const SMetric& m) {
    RicciCoeffs rc;
    rc.hh = ricci_h(m);
    for (int s = 2; s <= 4; ++s) {
        rc.vv[s - 2] = ricci_v(m, s);
        auto [rF, rP] = ricci_mixed(m, s);
        rc.mixed_F[s - 2] = std::move(rF);
        rc.mixed_P[s - 2] = std::move(rP);
    }
    rc.scalar = 2.0 * (rc.hh + rc.vv[0] + rc.vv[1] + rc.vv[2]);
    rc.einstein = einstein_diag(m);
    return rc;
}

namespace {

EqNorm norms(const ScalarField& f) { return {interior_max_abs(f), interior_l2(f)}; }

}  // namespace

double ShellResidualReport::max_all() const {
    double m = fiber_eq.linf;
    for (const auto& v : {w_eq, n_eq, ricci_F, ricci_P})
        for (const EqNorm& e : v) m = std::max(m, e.linf);
    return std::max(m, diag.linf);
}

double FieldEqResidualReport::max_all() const {
    double m = poisson.linf;
    for (const auto& s : shells) m = std::max(m, s.max_all());
    return m;
}

FieldEqResidualReport field_equation_residuals(const SMetric& m, const GeneratingData& gd) {
    if (!(*m.grid() == *gd.grid))
        throw MetricError("metric and generating data live on different grids");
    return field_equation_residuals(
        m, gd.psi, gd.j1,
        {gd.shells[0].source, gd.shells[1].source, gd.shells[2].source});
}

FieldEqResidualReport field_equation_residuals(const SMetric& m, const ScalarField& psi,
                                               const ScalarField& j1,
                                               const std::array<ScalarField, 3>& sources) {
    FieldEqResidualReport rep;
    // h-sector: psi'' + psi'' = 2 j1 evaluated against the declared psi
    rep.poisson = norms(partial(psi, Ax::X1, 2) + partial(psi, Ax::X2, 2) - 2.0 * j1);
    for (int s = 2; s <= 4; ++s) {
        ShellResidualReport& sr = rep.shells[s - 2];
        sr.s = s;
        const Ax fiber = m.config().fiber_axis(s);
        const ScalarField& hF = m.h_fiber(s);
        const ScalarField& hP = m.h_partner(s);
        const ScalarField& J = sources[s - 2];
        const DecoupledCoefficients dc = decoupled_coefficients(m, s);
        const ScalarField hPs = partial(hP, fiber);
        sr.fiber_eq = norms(partial(dc.varpi, fiber) * hPs - 2.0 * (hF * hP * J));
        const NRow& w = m.w_row(s);
        const NRow& n = m.n_row(s);
        for (int k = 0; k < 2 * s - 2; ++k) {
            sr.w_eq.push_back(norms(dc.beta * w.coef[k] - dc.alpha[k]));
            sr.n_eq.push_back(norms(partial(n.coef[k], fiber, 2) +
                                    dc.gamma * partial(n.coef[k], fiber)));
        }
        auto [rF, rP] = ricci_mixed(m, s);
        for (const ScalarField& f : rF) sr.ricci_F.push_back(norms(f));
        for (const ScalarField& f : rP) sr.ricci_P.push_back(norms(f));
        sr.diag = norms(ricci_v(m, s) + J);
    }
    return rep;
}

BaseMetricField base_block(const SMetric& m) {
    BaseMetricField bf;
    bf.grid = m.grid();
    // slots 1..4 with N^3, N^4 rows (k = 1,2): G = E^T diag(g1,g2,h3,h4) E
    const ScalarField zero(m.grid(), 0.0);
    std::array<ScalarField, 4> d = {m.g(1), m.g(2), m.h(3), m.h(4)};
    std::array<std::array<ScalarField, 2>, 2> N;  // N[a-3][k]
    for (int a = 3; a <= 4; ++a)
        for (int k = 0; k < 2; ++k) N[a - 3][k] = m.nrow(a).coef[k];
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu) {
            ScalarField s = zero;
            for (int a = 0; a < 4; ++a) {
                // E[a][mu]: identity on the diagonal, N rows on (a>=2, mu<2)
                auto e = [&](int row, int col) -> std::optional<ScalarField> {
                    if (row == col) return ScalarField(bf.grid, 1.0);
                    if (row >= 2 && col < 2) return N[row - 2][col];
                    return std::nullopt;
                };
                auto em = e(a, mu);
                auto en = e(a, nu);
                if (em && en) s = s + d[a] * (*em) * (*en);
            }
            bf.g[mu][nu] = s;
            bf.g[nu][mu] = s;
        }
    return bf;
}

BaseRicciField lc_ricci_bruteforce(const BaseMetricField& gf) {
    const GridPtr& grid = gf.grid;
    constexpr Ax base_axes[4] = {Ax::X1, Ax::X2, Ax::Y3, Ax::Y4};
    // pointwise inverse of the 4x4 block
    DepMask deps = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) deps |= gf.g[i][j].deps();
    // broadcast all entries to the common dependency set by arithmetic with a
    // zero field carrying `deps`
    ScalarField zero_deps = sample_field(grid, deps, [](const auto&) { return 0.0; });
    std::array<std::array<ScalarField, 4>, 4> g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] = gf.g[i][j] + zero_deps;
    const std::size_t count = g[0][0].size();
    std::array<std::array<std::vector<double>, 4>, 4> ginv;
    for (auto& row : ginv)
        for (auto& v : row) v.assign(count, 0.0);
    for (std::size_t p = 0; p < count; ++p) {
        double a[4][4], inv[4][4];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                a[i][j] = g[i][j].samples()[p];
                inv[i][j] = (i == j) ? 1.0 : 0.0;
            }
        // Gauss-Jordan with partial pivoting
        for (int c = 0; c < 4; ++c) {
            int piv = c;
            for (int r = c + 1; r < 4; ++r)
                if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
            if (std::fabs(a[piv][c]) < 1e-14)
                throw MetricError("singular base metric block in lc_ricci_bruteforce");
            if (piv != c) {
                std::swap(a[piv], a[c]);
                std::swap(inv[piv], inv[c]);
            }
            const double d = a[c][c];
            for (int j = 0; j < 4; ++j) {
                a[c][j] /= d;
                inv[c][j] /= d;
            }
            for (int r = 0; r < 4; ++r)
                if (r != c) {
                    const double f = a[r][c];
                    for (int j = 0; j < 4; ++j) {
                        a[r][j] -= f * a[c][j];
                        inv[r][j] -= f * inv[c][j];
                    }
                }
        }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) ginv[i][j][p] = inv[i][j];
    }
    auto inv_field = [&](int i, int j) { return ScalarField(grid, deps, ginv[i][j]); };

    // dg[k][i][j] = d_k g_ij
    std::array<std::array<std::array<ScalarField, 4>, 4>, 4> dg;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                dg[k][i][j] = partial(g[i][j], base_axes[k]);
                dg[k][j][i] = dg[k][i][j];
            }
    // Gamma^l_{mn}
    std::array<std::array<std::array<ScalarField, 4>, 4>, 4> gam;
    for (int l = 0; l < 4; ++l)
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu; nu < 4; ++nu) {
                ScalarField acc = zero_deps;
                for (int s = 0; s < 4; ++s)
                    acc = acc + inv_field(l, s) * (dg[mu][s][nu] + dg[nu][s][mu] - dg[s][mu][nu]);
                gam[l][mu][nu] = 0.5 * acc;
                gam[l][nu][mu] = gam[l][mu][nu];
            }
    // Ricci: R_mn = d_l Gam^l_mn - d_n Gam^l_ml + Gam^l_ls Gam^s_mn - Gam^l_ns Gam^s_ml
    BaseRicciField out;
    out.grid = grid;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu) {
            ScalarField r = zero_deps;
            for (int l = 0; l < 4; ++l) {
                r = r + partial(gam[l][mu][nu], base_axes[l]) - partial(gam[l][mu][l], base_axes[nu]);
                for (int s = 0; s < 4; ++s)
                    r = r + gam[l][l][s] * gam[s][mu][nu] - gam[l][nu][s] * gam[s][mu][l];
            }
            out.ric[mu][nu] = r;
            out.ric[nu][mu] = r;
        }
    return out;
}

}  // namespace afcdm
