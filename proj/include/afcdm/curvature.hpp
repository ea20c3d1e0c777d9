#pragma once
// Canonical Ricci s-tensor coefficients for the Killing-adapted ansatz, the
// decoupled field-equation coefficients, residual reports, and an independent
// Levi-Civita Ricci oracle on the 4-d base block (plain Christoffel route,
// no N-adaptation).

#include <array>
#include <vector>

#include "afcdm/smetric.hpp"

namespace afcdm {

struct GeneratingData;  // generator.hpp

// Diagonal Ricci pairs share one storage slot (the equalities R^1_1 = R^2_2
// and R^F_F = R^P_P are structural for this ansatz).
struct RicciCoeffs {
    ScalarField hh;                       // R^1_1 = R^2_2
    std::array<ScalarField, 3> vv;        // R^F_F = R^P_P per shell s=2,3,4
    // mixed components per shell: R_{F,k} and R_{P,k}, k over lower coords
    std::array<std::vector<ScalarField>, 3> mixed_F;
    std::array<std::vector<ScalarField>, 3> mixed_P;
    ScalarField scalar;                   // sR = 2(R^2_2 + R^4_4 + R^6_6 + R^8_8)
    std::array<ScalarField, 4> einstein;  // E^2_2, E^4_4, E^6_6, E^8_8
};

// R^1_1 per the h-sector formula (second derivatives of g1, g2)
ScalarField ricci_h(const SMetric& m);
// R^F_F = R^P_P = (1/2 hF hP)(-hP** + (hP*)^2/2hP + hF* hP*/2hF)
ScalarField ricci_v(const SMetric& m, int s);
// mixed pair (R_{F,k}, R_{P,k}); R_{P,k} uses the compact form
// -(hP/2hF)(n_k** + gamma n_k*). `literal_vhc4` switches R_{P,k} to the
// literal printed variant (diagnostic only).
std::pair<std::vector<ScalarField>, std::vector<ScalarField>> ricci_mixed(const SMetric& m, int s,
                                                                          bool literal_vhc4 = false);
ScalarField ricci_scalar(const SMetric& m);
std::array<ScalarField, 4> einstein_diag(const SMetric& m);
RicciCoeffs ricci_all(const SMetric& m);

// Decoupled-system coefficients of one shell (varpi, alpha_k, beta, gamma)
struct DecoupledCoefficients {
    int s = 2;
    ScalarField varpi;                // ln |hP* / sqrt|hF hP||
    std::vector<ScalarField> alpha;   // hP* d_k varpi
    ScalarField beta;                 // hP* varpi*
    ScalarField gamma;                // (ln |hP|^{3/2}/|hF|)*
};
DecoupledCoefficients decoupled_coefficients(const SMetric& m, int s);

struct EqNorm {
    double linf = 0.0;
    double l2 = 0.0;
};

struct ShellResidualReport {
    int s = 2;
    EqNorm fiber_eq;              // varpi* hP* - 2 hF hP J
    std::vector<EqNorm> w_eq;     // beta w_k - alpha_k
    std::vector<EqNorm> n_eq;     // n_k** + gamma n_k*
    std::vector<EqNorm> ricci_F;  // |R_{F,k}|
    std::vector<EqNorm> ricci_P;  // |R_{P,k}|
    EqNorm diag;                  // R^F_F + J
    double max_all() const;
};

struct FieldEqResidualReport {
    EqNorm poisson;  // psi'' + psi'' - 2 J1 (h-sector, checked against eq-1)
    std::array<ShellResidualReport, 3> shells;
    double max_all() const;
};

FieldEqResidualReport field_equation_residuals(const SMetric& m, const GeneratingData& gd);
// explicit-argument form (used when reloading solutions from disk)
FieldEqResidualReport field_equation_residuals(const SMetric& m, const ScalarField& psi,
                                               const ScalarField& j1,
                                               const std::array<ScalarField, 3>& sources);

// ---- independent Levi-Civita oracle on the 4-d base (x1,x2,y3,y4) ----
// Symmetric 4x4 matrix field; entries (i<=j) over base coordinates.
struct BaseMetricField {
    GridPtr grid;
    std::array<std::array<ScalarField, 4>, 4> g;  // symmetric storage expected
};

// base block of the assembled off-diagonal metric (coordinate basis):
// G = E^T diag(g1,g2,h3,h4) E restricted to slots 1..4
BaseMetricField base_block(const SMetric& m);

struct BaseRicciField {
    GridPtr grid;
    std::array<std::array<ScalarField, 4>, 4> ric;
};

// plain finite-difference Christoffel/Ricci of the 4-d block
BaseRicciField lc_ricci_bruteforce(const BaseMetricField& gfield);

}  // namespace afcdm
