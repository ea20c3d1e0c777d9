#pragma once
// Generalized Perelman thermodynamic variables of solution families: phase
// space volume functionals, partition function, energy, entropy (S = -W) and
// the fluctuation sigma, evaluated over a temperature-like tau grid with the
// constant-normalization convention (-zeta + 4 = 1, covariantly constant).

#include <vector>

#include "afcdm/curvature.hpp"
#include "afcdm/smetric.hpp"

namespace afcdm {

class ThermoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TauGrid {
    double lo = 0.1, hi = 1.0;
    int n = 9;
    double coord(int i) const { return lo + (hi - lo) * i / (n - 1); }
};

struct ThermoConfig {
    TauGrid tau;                       // tau > 0 strictly
    std::vector<double> lambda_h;      // running constants per tau node
    std::vector<double> lambda_v;
    bool four_d = false;               // 4-d base projection formulas
    bool source_weighted = false;      // multiply the measure by sqrt|J1|
    Region region;                     // integration region (default: full box)
};

struct ThermoReport {
    std::vector<double> tau, V, lnZ, E, S, sigma;
};

// quadrature of sqrt|det G| = sqrt|g1 g2 h3 h4 h5 h6 h7 h8| over the region;
// `j1` supplies the optional source weight sqrt|J1|
double volume_functional(const SMetric& m, const Region& region = {},
                         bool source_weighted = false, const ScalarField* j1 = nullptr);

// 8-d formulas: lnZ = V/(4 pi tau)^4, E = (1 - 2 tau (Lh+Lv)) V / (64 pi^4 tau^3),
// S = 2 (1 - 4 (Lh+Lv)) V / (4 pi tau)^4
struct ThermoVars {
    double lnZ = 0, E = 0, S = 0;
};
ThermoVars thermo_vars_8d(double V, double lambda_h, double lambda_v, double tau);
// 4-d: lnZ = V/(8 pi^2 tau^2), E = (1 - 2 tau Lh) V / (8 pi^2 tau),
// S = (1 - Lh) V / (4 pi^2 tau^2)
ThermoVars thermo_vars_4d(double V, double lambda_h, double tau);

// sigma = 2 tau^4 (4 pi tau)^{-4} integral |R_ab - g_ab / 2 tau|^2 dV with the
// squared norm taken in the assembled metric; diagonal slots use the stored
// Ricci pairs, mixed slots add g^FF g^kk R_{F,k}^2 (+ the P analogue).
double sigma_fluctuation(const SMetric& m, const RicciCoeffs& rc, double tau,
                         const Region& region = {});

ThermoReport thermo_report(const SMetric& m, const RicciCoeffs& rc, const ThermoConfig& cfg,
                           const ScalarField* j1 = nullptr);

}  // namespace afcdm
