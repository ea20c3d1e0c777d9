#include "afcdm/connection.hpp"

#include <cmath>

namespace afcdm {

namespace {

void check_h_scale(const SMetric& m) {
    for (int slot = 3; slot <= 8; ++slot)
        for (double v : m.h(slot).samples())
            if (std::fabs(v) < 1e-12)
                throw MetricError("h" + std::to_string(slot) + " below degeneracy threshold");
}

ScalarField log_abs(const ScalarField& f) {
    return map(f, [](double v) { return std::log(std::fabs(v)); });
}

}  // namespace

DConnCoeffs canonical_dconnection(const SMetric& m) {
    check_h_scale(m);
    DConnCoeffs out;
    const ScalarField& g1 = m.g(1);
    const ScalarField& g2 = m.g(2);
    const ScalarField g1d1 = partial(g1, Ax::X1), g1d2 = partial(g1, Ax::X2);
    const ScalarField g2d1 = partial(g2, Ax::X1), g2d2 = partial(g2, Ax::X2);
    auto half_over = [](const ScalarField& num, const ScalarField& den) {
        return 0.5 * (num / den);
    };
    auto& L = out.hpart.L;
    L[0][0][0] = half_over(g1d1, g1);            // L^1_11
    L[0][0][1] = half_over(g1d2, g1);            // L^1_12
    L[0][1][0] = L[0][0][1];                     // L^1_21 (symmetric h-part)
    L[0][1][1] = -1.0 * half_over(g2d1, g1);     // L^1_22
    L[1][0][0] = -1.0 * half_over(g1d2, g2);     // L^2_11
    L[1][0][1] = half_over(g2d1, g2);            // L^2_12
    L[1][1][0] = L[1][0][1];                     // L^2_21
    L[1][1][1] = half_over(g2d2, g2);            // L^2_22

    for (int s = 2; s <= 4; ++s) {
        ShellConnCoeffs& sc = out.shells[s - 2];
        sc.s = s;
        sc.F = m.config().fiber_slot(s);
        sc.P = m.config().partner_slot(s);
        const Ax fiber = m.config().fiber_axis(s);
        const ScalarField& hF = m.h(sc.F);
        const ScalarField& hP = m.h(sc.P);
        const ScalarField hFs = partial(hF, fiber);
        const ScalarField hPs = partial(hP, fiber);
        const NRow& w = m.w_row(s);
        const NRow& n = m.n_row(s);
        const int nc = 2 * s - 2;
        for (int k = 0; k < nc; ++k) {
            const Ax ak = axis_of_slot(k + 1);
            sc.L_PPk.push_back(half_over(partial(hP, ak), hP) - w.coef[k] * half_over(hPs, hP));
            sc.L_FFk.push_back(half_over(partial(hF, ak), hF) - w.coef[k] * half_over(hFs, hF));
            sc.L_FPk.push_back(-1.0 * half_over(hP, hF) * partial(n.coef[k], fiber));
            sc.L_PFk.push_back(0.5 * partial(n.coef[k], fiber));
        }
        sc.C_FFF = half_over(hFs, hF);
        sc.C_FPP = -1.0 * (hPs / hF);
        sc.C_PFP = half_over(hPs, hP);
        sc.C_F = sc.C_FFF + sc.C_PFP;
    }
    return out;
}

TorsionCoeffs canonical_torsion(const SMetric& m, const DConnCoeffs& c) {
    TorsionCoeffs out;
    for (int s = 2; s <= 4; ++s) {
        const ShellConnCoeffs& sc = c.shells[s - 2];
        ShellTorsion& st = out.shells[s - 2];
        st.s = s;
        st.F = sc.F;
        st.P = sc.P;
        st.ncoords = 2 * s - 2;
        const Ax fiber = m.config().fiber_axis(s);
        const NRow& w = m.w_row(s);
        for (int k = 0; k < st.ncoords; ++k) {
            // T^F_{F,k} = L^F_{F,k} - e_F(N^F_k) = L^F_{F,k} - w_k*
            st.T_FFk.push_back(sc.L_FFk[k] - partial(w.coef[k], fiber));
            // T^F_{P,k} = L^F_{P,k} (e_P kills everything by the Killing pattern)
            st.T_FPk.push_back(sc.L_FPk[k]);
            // T^P_{F,k} = L^P_{F,k} - e_F(N^P_k) = n_k*/2 - n_k* = -n_k*/2
            st.T_PFk.push_back(-1.0 * sc.L_PFk[k]);
            // T^P_{P,k} = L^P_{P,k}
            st.T_PPk.push_back(sc.L_PPk[k]);
        }
        const Anholonomy om = anholonomy(m, s);
        st.T_Fij.assign(om.omega[0].size(), ScalarField(m.grid(), 0.0));
        st.T_Pij.assign(om.omega[1].size(), ScalarField(m.grid(), 0.0));
        for (std::size_t i = 0; i < om.omega[0].size(); ++i) {
            st.T_Fij[i] = -1.0 * om.omega[0][i];
            st.T_Pij[i] = -1.0 * om.omega[1][i];
        }
    }
    return out;
}

double ShellTorsion::max_abs_all() const {
    double m = 0.0;
    auto acc = [&](const std::vector<ScalarField>& v) {
        for (const ScalarField& f : v) m = std::max(m, interior_max_abs(f));
    };
    acc(T_FFk);
    acc(T_FPk);
    acc(T_PFk);
    acc(T_PPk);
    acc(T_Fij);
    acc(T_Pij);
    return m;
}

double TorsionCoeffs::max_abs_all() const {
    double m = 0.0;
    for (const ShellTorsion& st : shells) m = std::max(m, st.max_abs_all());
    return m;
}

LcResiduals lc_residuals(const SMetric& m) {
    LcResiduals out;
    for (int s = 2; s <= 4; ++s) {
        LcShellResiduals& r = out.shells[s - 2];
        r.s = s;
        const Ax fiber = m.config().fiber_axis(s);
        const ScalarField lnF = 0.5 * log_abs(m.h_fiber(s));
        const ScalarField lnP = 0.5 * log_abs(m.h_partner(s));
        const ScalarField lnFs = partial(lnF, fiber);
        const ScalarField lnPs = partial(lnP, fiber);
        const NRow& w = m.w_row(s);
        const NRow& n = m.n_row(s);
        const int nc = 2 * s - 2;
        for (int k = 0; k < nc; ++k) {
            const Ax ak = axis_of_slot(k + 1);
            r.a.push_back(partial(w.coef[k], fiber) - (partial(lnF, ak) - w.coef[k] * lnFs));
            r.b.push_back(partial(lnP, ak) - w.coef[k] * lnPs);
            r.d.push_back(partial(n.coef[k], fiber));
        }
        for (int i = 0; i < nc; ++i)
            for (int j = i + 1; j < nc; ++j) {
                const Ax ai = axis_of_slot(i + 1), aj = axis_of_slot(j + 1);
                r.c.push_back(partial(w.coef[j], ai) - partial(w.coef[i], aj));
                r.e.push_back(partial(n.coef[j], ai) - partial(n.coef[i], aj));
            }
        auto mx = [](const std::vector<ScalarField>& v) {
            double m2 = 0.0;
            for (const ScalarField& f : v) m2 = std::max(m2, interior_max_abs(f));
            return m2;
        };
        r.max_a = mx(r.a);
        r.max_b = mx(r.b);
        r.max_c = mx(r.c);
        r.max_d = mx(r.d);
        r.max_e = mx(r.e);
    }
    return out;
}

double LcShellResiduals::max_all() const {
    return std::max({max_a, max_b, max_c, max_d, max_e});
}

double LcResiduals::max_all() const {
    double m = 0.0;
    for (const auto& s : shells) m = std::max(m, s.max_all());
    return m;
}

}  // namespace afcdm
