#include "afcdm/thermo.hpp"

#include <cmath>

namespace afcdm {

namespace {

constexpr double kPi = 3.14159265358979323846;

ScalarField abs_sqrt(const ScalarField& f) {
    return map(f, [](double v) { return std::sqrt(std::fabs(v)); });
}

}  // namespace

double volume_functional(const SMetric& m, const Region& region, bool source_weighted,
                         const ScalarField* j1) {
    // |det| of the assembled matrix equals the product of block determinants
    // for the s-adapted form (the N-elongation is a unipotent congruence)
    ScalarField det = m.g(1) * m.g(2);
    for (int slot = 3; slot <= 8; ++slot) det = det * m.h(slot);
    for (double v : det.samples())
        if (v == 0.0 || !std::isfinite(v)) throw ThermoError("degenerate metric determinant");
    ScalarField integrand = abs_sqrt(det);
    if (source_weighted) {
        if (!j1) throw ThermoError("source-weighted measure needs the J1 field");
        integrand = integrand * abs_sqrt(*j1);
    }
    return quadrature(integrand, region);
}

ThermoVars thermo_vars_8d(double V, double lambda_h, double lambda_v, double tau) {
    if (!(tau > 0)) throw ThermoError("tau must be positive");
    const double L = lambda_h + lambda_v;
    const double p4 = std::pow(4.0 * kPi * tau, 4);
    ThermoVars t;
    t.lnZ = V / p4;
    t.E = (1.0 - 2.0 * tau * L) * V / (64.0 * std::pow(kPi, 4) * std::pow(tau, 3));
    t.S = 2.0 * (1.0 - 4.0 * L) * V / p4;
    return t;
}

ThermoVars thermo_vars_4d(double V, double lambda_h, double tau) {
    if (!(tau > 0)) throw ThermoError("tau must be positive");
    ThermoVars t;
    t.lnZ = V / (8.0 * kPi * kPi * tau * tau);
    t.E = (1.0 - 2.0 * tau * lambda_h) * V / (8.0 * kPi * kPi * tau);
    t.S = (1.0 - lambda_h) * V / (4.0 * kPi * kPi * tau * tau);
    return t;
}

double sigma_fluctuation(const SMetric& m, const RicciCoeffs& rc, double tau,
                         const Region& region) {
    if (!(tau > 0)) throw ThermoError("tau must be positive");
    const double half_inv_tau = 0.5 / tau;
    // diagonal slots: (R^a_a - 1/2tau)^2, two slots per stored pair
    ScalarField dev = rc.hh + ScalarField(m.grid(), -half_inv_tau);
    ScalarField norm2 = 2.0 * (dev * dev);
    for (int s = 2; s <= 4; ++s) {
        ScalarField dv = rc.vv[s - 2] + ScalarField(m.grid(), -half_inv_tau);
        norm2 = norm2 + 2.0 * (dv * dv);
    }
    // mixed slots: g^FF g^kk R_{F,k}^2 and g^PP g^kk R_{P,k}^2 (lowered index
    // R_{F,k}; the inverse-metric factors make the norm scale-invariant)
    for (int s = 2; s <= 4; ++s) {
        const ScalarField& hF = m.h_fiber(s);
        const ScalarField& hP = m.h_partner(s);
        const auto& mf = rc.mixed_F[s - 2];
        const auto& mp = rc.mixed_P[s - 2];
        for (int k = 0; k < 2 * s - 2; ++k) {
            const int ks = k + 1;  // slot of the lower coordinate
            const ScalarField gkk = ks <= 2 ? m.g(ks) : m.h(ks);
            norm2 = norm2 + (mf[k] * mf[k]) / (hF * gkk) + (mp[k] * mp[k]) / (hP * gkk);
        }
    }
    ScalarField det = m.g(1) * m.g(2);
    for (int slot = 3; slot <= 8; ++slot) det = det * m.h(slot);
    const ScalarField integrand = norm2 * abs_sqrt(det);
    const double I = quadrature(integrand, region);
    return 2.0 * std::pow(tau, 4) * std::pow(4.0 * kPi * tau, -4) * I;
}

ThermoReport thermo_report(const SMetric& m, const RicciCoeffs& rc, const ThermoConfig& cfg,
                           const ScalarField* j1) {
    if (!(cfg.tau.lo > 0)) throw ThermoError("tau grid must be strictly positive");
    if (cfg.tau.n < 1) throw ThermoError("tau grid needs at least one node");
    if (static_cast<int>(cfg.lambda_h.size()) != cfg.tau.n ||
        (!cfg.four_d && static_cast<int>(cfg.lambda_v.size()) != cfg.tau.n))
        throw ThermoError("lambda sequences must match the tau grid");
    ThermoReport rep;
    const double V = volume_functional(m, cfg.region, cfg.source_weighted, j1);
    for (int i = 0; i < cfg.tau.n; ++i) {
        const double tau = cfg.tau.coord(i);
        const ThermoVars tv = cfg.four_d ? thermo_vars_4d(V, cfg.lambda_h[i], tau)
                                         : thermo_vars_8d(V, cfg.lambda_h[i], cfg.lambda_v[i], tau);
        rep.tau.push_back(tau);
        rep.V.push_back(V);
        rep.lnZ.push_back(tv.lnZ);
        rep.E.push_back(tv.E);
        rep.S.push_back(tv.S);
        rep.sigma.push_back(sigma_fluctuation(m, rc, tau, cfg.region));
    }
    return rep;
}

}  // namespace afcdm
