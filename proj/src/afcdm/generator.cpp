#include "afcdm/generator.hpp"

#include <cmath>
#include <sstream>

namespace afcdm {

namespace {

ScalarField log_abs(const ScalarField& f) {
    return map(f, [](double v) { return std::log(std::fabs(v)); });
}

void check_nonzero(const ScalarField& f, const std::string& what) {
    for (double v : f.samples())
        if (!std::isfinite(v) || v == 0.0) throw GenError(what + " vanishes on the grid");
}

void check_positive(const ScalarField& f, const std::string& what) {
    for (double v : f.samples())
        if (!(v > 0.0)) throw GenError(what + " must be positive on the grid");
}

// error naming the first offending node of a near-zero denominator
void check_division_safe(const ScalarField& f, const GridPtr& grid, const std::string& what) {
    double scale = 0.0;
    for (double v : f.samples()) scale = std::max(scale, std::fabs(v));
    const double tol = 1e-12 * (scale + 1e-300);
    const auto daxes = f.dep_axes();
    std::size_t off = 0;
    for (double v : f.samples()) {
        if (std::fabs(v) <= tol) {
            // reconstruct the multi-index of `off` for the message
            std::vector<int> shape;
            for (Ax a : daxes) shape.push_back(grid->axis(a).n);
            std::vector<int> idx(shape.size(), 0);
            std::size_t rem = off;
            for (int i = static_cast<int>(shape.size()) - 1; i >= 0; --i) {
                idx[i] = static_cast<int>(rem % shape[i]);
                rem /= shape[i];
            }
            std::ostringstream os;
            os << what << " vanishes at node (";
            for (std::size_t i = 0; i < daxes.size(); ++i)
                os << axis_name(daxes[i]) << "=" << grid->axis(daxes[i]).coord(idx[i])
                   << (i + 1 < daxes.size() ? ", " : "");
            os << ")";
            throw GenError(os.str());
        }
        ++off;
    }
}

void check_sign_constant(const ScalarField& f, const std::string& what) {
    bool pos = false, neg = false;
    for (double v : f.samples()) {
        if (v > 0) pos = true;
        if (v < 0) neg = true;
        if (v == 0.0 || (pos && neg))
            throw GenError(what + " crosses zero (degenerate coefficient)");
    }
}

// shared core once Psi^2 (and optionally Psi itself) is known
ShellCoeffs build_from_psi2(const ScalarField& psi2, const std::optional<ScalarField>& psi,
                            const ShellGen& sg, const ScalarField& h_partner, const GridPtr& grid,
                            const ShellConfig& cfg, int s) {
    const Ax fiber = cfg.fiber_axis(s);
    const ScalarField& J = sg.source;
    ShellCoeffs out;
    out.psi2 = psi2;
    out.h_partner = h_partner;
    check_sign_constant(h_partner, "h" + std::to_string(cfg.partner_slot(s)));

    const ScalarField psi2s = partial(psi2, fiber);
    // (Psi*/2J)^2 = [ (Psi^2)* ]^2 / (16 J^2 Psi^2); in Psi mode the direct
    // (Psi*)^2 form is used instead (the two agree as a property test)
    ScalarField ratio2 = (psi2s * psi2s) / (16.0 * (J * J * psi2));
    if (psi) {
        const ScalarField ps = partial(*psi, fiber);
        const ScalarField r = ps / (2.0 * J);
        ratio2 = r * r;
    }
    out.h_fiber = -1.0 * (ratio2 / h_partner);
    check_sign_constant(out.h_fiber, "h" + std::to_string(cfg.fiber_slot(s)));

    const int nc = 2 * s - 2;
    if (sg.n1.size() != static_cast<std::size_t>(nc) || sg.n2.size() != static_cast<std::size_t>(nc))
        throw GenError("shell " + std::to_string(s) + ": n1/n2 need " + std::to_string(nc) +
                       " components");
    // w_k: prefer the direct Psi form when Psi is available, else the Psi^2 form
    std::optional<ScalarField> psis;
    if (psi) {
        psis = partial(*psi, fiber);
        check_division_safe(*psis, grid, "shell " + std::to_string(s) + ": Psi*");
    } else {
        check_division_safe(psi2s, grid, "shell " + std::to_string(s) + ": (Psi^2)*");
    }
    for (int k = 0; k < nc; ++k) {
        const Ax ak = axis_of_slot(k + 1);
        if (psi)
            out.w.push_back(partial(*psi, ak) / *psis);
        else
            out.w.push_back(partial(psi2, ak) / psi2s);
    }
    // n_k = n1 + n2 * cumint( (Psi*/2J)^2 |h_P|^{-5/2} )
    const ScalarField habs = map(h_partner, [](double v) { return std::pow(std::fabs(v), -2.5); });
    const ScalarField nint = cumint(ratio2 * habs, fiber);
    for (int k = 0; k < nc; ++k) out.n.push_back(sg.n1[k] + sg.n2[k] * nint);
    return out;
}

}  // namespace

ShellCoeffs generate_shell(const ShellGen& sg, const GridPtr& grid, const ShellConfig& cfg, int s) {
    const Ax fiber = cfg.fiber_axis(s);
    check_nonzero(sg.source, "shell " + std::to_string(s) + ": source J");
    const DepMask allowed = cfg.allowed_deps(s);
    if ((sg.gen.deps() & ~allowed) || (sg.source.deps() & ~allowed))
        throw GenError("shell " + std::to_string(s) +
                       ": generating data depends on coordinates outside the Killing pattern");

    switch (sg.mode) {
        case ShellGen::Mode::Psi: {
            const ScalarField& Psi = sg.gen;
            const ScalarField psi2 = Psi * Psi;
            // h_P = h0 - cumint([Psi^2]*/4J)
            const ScalarField hP =
                sg.h0 - cumint(partial(psi2, fiber) / (4.0 * sg.source), fiber);
            return build_from_psi2(psi2, Psi, sg, hP, grid, cfg, s);
        }
        case ShellGen::Mode::PhiLambda: {
            if (sg.Lambda == 0.0) throw GenError("shell " + std::to_string(s) + ": Lambda must be nonzero");
            const ScalarField& Phi = sg.gen;
            const ScalarField phi2 = Phi * Phi;
            const ScalarField hP = sg.h0 - (1.0 / (4.0 * sg.Lambda)) * phi2;
            check_positive(sg.psi2_anchor, "shell " + std::to_string(s) + ": Psi^2 anchor");
            ScalarField psi2 =
                sg.psi2_anchor + (1.0 / sg.Lambda) * cumint(sg.source * partial(phi2, fiber), fiber);
            for (double v : psi2.samples())
                if (!(v > 0.0))
                    throw GenError("shell " + std::to_string(s) +
                                   ": negative radicand reconstructing Psi^2 from (Phi, Lambda)");
            return build_from_psi2(psi2, std::nullopt, sg, hP, grid, cfg, s);
        }
        case ShellGen::Mode::CoeffAsGenerator: {
            const ScalarField& hP = sg.gen;  // prescribed coefficient
            check_positive(sg.psi2_anchor, "shell " + std::to_string(s) + ": Psi^2 anchor");
            ScalarField psi2 =
                sg.psi2_anchor - 4.0 * cumint(sg.source * partial(hP, fiber), fiber);
            for (double v : psi2.samples())
                if (!(v > 0.0))
                    throw GenError("shell " + std::to_string(s) +
                                   ": Psi^2 from the prescribed coefficient is not positive; "
                                   "adjust the anchor");
            return build_from_psi2(psi2, std::nullopt, sg, hP, grid, cfg, s);
        }
    }
    throw GenError("unreachable");
}

namespace {

SMetric assemble_from_gd(const GeneratingData& gd) {
    const GridPtr& grid = gd.grid;
    const ShellConfig& cfg = gd.config;
    const ScalarField expPsi = map(gd.psi, [](double v) { return std::exp(v); });
    std::array<ScalarField, 6> h = {ScalarField(grid, 1.0), ScalarField(grid, 1.0),
                                    ScalarField(grid, 1.0), ScalarField(grid, 1.0),
                                    ScalarField(grid, 1.0), ScalarField(grid, 1.0)};
    auto rows = trivial_nrows(grid);
    for (int s = 2; s <= 4; ++s) {
        ShellCoeffs sc = generate_shell(gd.shells[s - 2], grid, cfg, s);
        const int F = cfg.fiber_slot(s), P = cfg.partner_slot(s);
        h[F - 3] = std::move(sc.h_fiber);
        h[P - 3] = std::move(sc.h_partner);
        rows[F - 3].coef = std::move(sc.w);
        rows[P - 3].coef = std::move(sc.n);
    }
    return SMetric(grid, cfg, expPsi, expPsi, std::move(h), std::move(rows));
}

}  // namespace

SMetric generate_quasistationary(const GeneratingData& gd) {
    if (gd.config.kind != ShellKind::QuasiStationary)
        throw GenError("generate_quasistationary: config is not quasi-stationary");
    return assemble_from_gd(gd);
}

SMetric generate_cosmological(const GeneratingData& gd) {
    if (gd.config.kind != ShellKind::Cosmological)
        throw GenError("generate_cosmological: config is not cosmological");
    return assemble_from_gd(gd);
}

SMetric generate(const GeneratingData& gd) {
    return gd.config.kind == ShellKind::QuasiStationary ? generate_quasistationary(gd)
                                                        : generate_cosmological(gd);
}

ScalarField psi_to_phi(const ScalarField& psi, const ScalarField& source, double Lambda, Ax fiber) {
    if (Lambda == 0.0) throw GenError("psi_to_phi: Lambda must be nonzero");
    check_nonzero(source, "psi_to_phi: source");
    const ScalarField psi2 = psi * psi;
    ScalarField phi2 = Lambda * cumint(partial(psi2, fiber) / source, fiber);
    for (double v : phi2.samples())
        if (v < 0.0)
            throw GenError("psi_to_phi: negative radicand (generating data incompatible with a "
                           "real Phi)");
    return map(phi2, [](double v) { return std::sqrt(v); });
}

ScalarField phi_to_psi(const ScalarField& phi, const ScalarField& source, double Lambda, Ax fiber,
                       const ScalarField& psi2_anchor) {
    if (Lambda == 0.0) throw GenError("phi_to_psi: Lambda must be nonzero");
    check_nonzero(source, "phi_to_psi: source");
    const ScalarField phi2 = phi * phi;
    ScalarField psi2 = psi2_anchor + (1.0 / Lambda) * cumint(source * partial(phi2, fiber), fiber);
    for (double v : psi2.samples())
        if (!(v > 0.0)) throw GenError("phi_to_psi: negative radicand");
    return map(psi2, [](double v) { return std::sqrt(v); });
}

SMetric eta_polarize(const SMetric& prime, const PolarizationData& pd, GeneratingData* induced) {
    GeneratingData gd;
    gd.grid = prime.grid();
    gd.config = prime.config();
    gd.psi = pd.psi;
    gd.j1 = pd.j1;
    for (int s = 2; s <= 4; ++s) {
        const int i = s - 2;
        check_nonzero(pd.eta[i], "eta polarization of shell " + std::to_string(s));
        ShellGen sg;
        sg.mode = ShellGen::Mode::CoeffAsGenerator;
        sg.gen = pd.eta[i] * prime.h_partner(s);
        check_sign_constant(sg.gen, "eta * prime coefficient, shell " + std::to_string(s));
        // induced Phi^2 = -4 Lambda eta g requires Lambda * eta * g < 0
        if (pd.Lambda[i] != 0.0)
            for (double v : sg.gen.samples())
                if (!(pd.Lambda[i] * v < 0.0))
                    throw GenError("shell " + std::to_string(s) +
                                   ": sign of Lambda * eta * prime coefficient violates the "
                                   "induced Phi^2 > 0 condition");
        sg.source = pd.source[i];
        sg.psi2_anchor = pd.psi2_anchor[i];
        sg.Lambda = pd.Lambda[i];
        sg.n1 = pd.n1[i];
        sg.n2 = pd.n2[i];
        gd.shells[i] = std::move(sg);
    }
    SMetric target = assemble_from_gd(gd);
    if (induced) *induced = std::move(gd);
    return target;
}

SMetric epsilon_expand(const SMetric& prime, const EpsilonData& ed) {
    if (!(ed.eps >= 0.0 && ed.eps < 1.0)) throw GenError("epsilon must satisfy 0 <= eps < 1");
    const GridPtr& grid = prime.grid();
    const ShellConfig& cfg = prime.config();
    const double eps = ed.eps;
    // psi = psi0 (1 + eps psi_chi), truncated form is exact as declared
    const ScalarField psi_lin = ed.psi0 + eps * (ed.psi0 * ed.psi_chi);
    const ScalarField expPsi = map(psi_lin, [](double v) { return std::exp(v); });
    std::array<ScalarField, 6> h = {ScalarField(grid, 1.0), ScalarField(grid, 1.0),
                                    ScalarField(grid, 1.0), ScalarField(grid, 1.0),
                                    ScalarField(grid, 1.0), ScalarField(grid, 1.0)};
    auto rows = trivial_nrows(grid);
    for (int s = 2; s <= 4; ++s) {
        const int i = s - 2;
        const Ax fiber = cfg.fiber_axis(s);
        const ScalarField& J = ed.source[i];
        check_nonzero(J, "shell " + std::to_string(s) + ": source J");
        const ScalarField q0 = ed.zeta[i] * prime.h_partner(s);
        check_sign_constant(q0, "zeta * prime coefficient, shell " + std::to_string(s));
        const ScalarField q1 = q0 * ed.chi[i];
        // h_P = q0 (1 + eps chi): linear in eps exactly
        const ScalarField hP = q0 + eps * q1;
        // Psi^2(eps) = anchor - 4 I0 - 4 eps I1: linear exactly
        check_positive(ed.psi2_anchor[i], "shell " + std::to_string(s) + ": Psi^2 anchor");
        const ScalarField P0 = ed.psi2_anchor[i] - 4.0 * cumint(J * partial(q0, fiber), fiber);
        const ScalarField P1 = -4.0 * cumint(J * partial(q1, fiber), fiber);
        for (double v : P0.samples())
            if (!(v > 0.0)) throw GenError("epsilon_expand: Psi^2 not positive at eps = 0");
        const ScalarField P0s = partial(P0, fiber);
        const ScalarField P1s = partial(P1, fiber);
        check_division_safe(P0s, grid, "shell " + std::to_string(s) + ": (Psi^2)*");
        // h_F = h_F0 (1 + eps (2 P1s/P0s - P1/P0 - q1/q0))
        const ScalarField hF0 = -1.0 * ((P0s * P0s) / (16.0 * (J * J * P0) * q0));
        const ScalarField deltaF = 2.0 * (P1s / P0s) - P1 / P0 - q1 / q0;
        const ScalarField hF = hF0 + eps * (hF0 * deltaF);
        check_sign_constant(hF, "epsilon-expanded fiber coefficient, shell " + std::to_string(s));
        // w_k = w0 + eps (d_k P1 / P0s - d_k P0 * P1s / P0s^2)
        const int nc = 2 * s - 2;
        std::vector<ScalarField> w, n;
        for (int k = 0; k < nc; ++k) {
            const Ax ak = axis_of_slot(k + 1);
            const ScalarField w0 = partial(P0, ak) / P0s;
            const ScalarField w1 = partial(P1, ak) / P0s - (partial(P0, ak) * P1s) / (P0s * P0s);
            w.push_back(w0 + eps * w1);
        }
        // n-integrand g = P_s^2/(16 J^2 P) |h_P|^{-5/2}, linearized
        const ScalarField habs0 = map(q0, [](double v) { return std::pow(std::fabs(v), -2.5); });
        const ScalarField g0 = (P0s * P0s) / (16.0 * (J * J * P0)) * habs0;
        const ScalarField dg = 2.0 * (P1s / P0s) - P1 / P0 - 2.5 * ed.chi[i];
        const ScalarField n_int0 = cumint(g0, fiber);
        const ScalarField n_int1 = cumint(g0 * dg, fiber);
        if (ed.n1[i].size() != static_cast<std::size_t>(nc) ||
            ed.n2[i].size() != static_cast<std::size_t>(nc))
            throw GenError("epsilon_expand: n1/n2 need " + std::to_string(nc) + " components");
        for (int k = 0; k < nc; ++k)
            n.push_back(ed.n1[i][k] + ed.n2[i][k] * n_int0 + eps * (ed.n2[i][k] * n_int1));
        const int F = cfg.fiber_slot(s), P = cfg.partner_slot(s);
        h[F - 3] = hF;
        h[P - 3] = hP;
        rows[F - 3].coef = std::move(w);
        rows[P - 3].coef = std::move(n);
    }
    return SMetric(grid, cfg, expPsi, expPsi, std::move(h), std::move(rows));
}

SMetric lc_generate(const GridPtr& grid, const ShellConfig& cfg, const LcGenData& d,
                    GeneratingData* induced) {
    GeneratingData gd;
    gd.grid = grid;
    gd.config = cfg;
    gd.psi = d.psi;
    gd.j1 = d.j1;
    for (int s = 2; s <= 4; ++s) {
        const int i = s - 2;
        const Ax fiber = cfg.fiber_axis(s);
        if (d.source_const[i] == 0.0)
            throw GenError("lc_generate: shell sources must be nonzero constants");
        ShellGen sg;
        sg.mode = ShellGen::Mode::Psi;
        sg.gen = d.psi_check[i];
        sg.source = ScalarField(grid, d.source_const[i]);
        // The zero-torsion conditions need h_P = const - Psi^2/4J (the
        // antiderivative form); the anchored cumulative integral adds
        // Psi^2(x, lo)/4J back, so fold it into h0.
        sg.h0 = ScalarField(grid, d.h0_const[i]) -
                scale_add(slice_at_lower(sg.gen * sg.gen, fiber), 1.0 / (4.0 * d.source_const[i]),
                          0.0);
        const int nc = 2 * s - 2;
        sg.n1.assign(nc, ScalarField(grid, 0.0));
        sg.n2.assign(nc, ScalarField(grid, 0.0));
        for (int k = 0; k < nc; ++k) sg.n1[k] = partial(d.n_potential[i], axis_of_slot(k + 1));
        // discrete mixed partials commute identically; the operative
        // zero-torsion condition is that w = d Psi / Psi* is curl-free
        ShellCoeffs sc = generate_shell(sg, grid, cfg, s);
        double curl = 0.0;
        for (int a = 0; a < nc; ++a)
            for (int b = a + 1; b < nc; ++b)
                curl = std::max(curl, interior_max_abs(partial(sc.w[b], axis_of_slot(a + 1)) -
                                                       partial(sc.w[a], axis_of_slot(b + 1))));
        if (curl > d.curl_tol) {
            std::ostringstream os;
            os << "lc_generate: shell " << s << " N-coefficients are not a gradient (max curl "
               << curl << " > " << d.curl_tol << "); choose a separable generating function";
            throw GenError(os.str());
        }
        gd.shells[i] = std::move(sg);
    }
    SMetric m = assemble_from_gd(gd);
    if (induced) *induced = std::move(gd);
    return m;
}

FlowSources effective_source_from_flow(const std::vector<SMetric>& family,
                                       const std::vector<double>& tau,
                                       const std::array<ScalarField, 3>& upsilon_v,
                                       const ScalarField& upsilon_h) {
    if (family.size() != tau.size() || tau.size() < 3)
        throw GenError("effective_source_from_flow: needs a tau grid with >= 3 nodes");
    const double dt = tau[1] - tau[0];
    for (std::size_t i = 1; i < tau.size(); ++i)
        if (std::fabs((tau[i] - tau[i - 1]) - dt) > 1e-12 * std::fabs(dt))
            throw GenError("effective_source_from_flow: tau grid must be uniform");
    FlowSources out;
    out.tau = tau;
    const std::size_t n = tau.size();
    auto dtau_log = [&](auto&& pick, std::size_t i) {
        // central in the interior, one-sided 2nd order at the ends
        ScalarField num(family[i].grid(), 0.0);
        if (i == 0)
            num = -1.5 * pick(0) + 2.0 * pick(1) - 0.5 * pick(2);
        else if (i + 1 == n)
            num = 1.5 * pick(n - 1) - 2.0 * pick(n - 2) + 0.5 * pick(n - 3);
        else
            num = 0.5 * (pick(i + 1) - pick(i - 1));
        return scale_add(num, 1.0 / dt, 0.0);
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::array<ScalarField, 3> Js;
        for (int s = 2; s <= 4; ++s) {
            auto pickP = [&](std::size_t j) -> ScalarField { return family[j].h_partner(s); };
            auto pickF = [&](std::size_t j) -> ScalarField { return family[j].h_fiber(s); };
            const ScalarField dP = dtau_log(pickP, i);
            const ScalarField dF = dtau_log(pickF, i);
            const ScalarField JP = upsilon_v[s - 2] - 0.5 * (dP / family[i].h_partner(s));
            const ScalarField JF = upsilon_v[s - 2] - 0.5 * (dF / family[i].h_fiber(s));
            out.max_slot_mismatch = std::max(out.max_slot_mismatch, interior_max_abs(JP - JF));
            Js[s - 2] = JP;
        }
        out.J.push_back(std::move(Js));
        auto pickG = [&](std::size_t j) -> ScalarField { return family[j].g(1); };
        const ScalarField dG = dtau_log(pickG, i);
        out.j1.push_back(upsilon_h - 0.5 * (dG / family[i].g(1)));
    }
    return out;
}

}  // namespace afcdm
