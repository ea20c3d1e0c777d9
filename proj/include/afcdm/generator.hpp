#pragma once
// Solution generators: per-shell coefficient construction from generating
// data, quasi-stationary and cosmological s-metrics, the nonlinear symmetry
// transforms between (Psi, J) and (Phi, Lambda) data, eta-polarization of
// prime metrics, epsilon-linear expansions, Levi-Civita-constrained
// generation, and effective sources from flow families.
//
// Integration-constant bookkeeping: every cumulative integral anchors at the
// fiber lower bound; the integration freedom lives exclusively in h0, n1, n2
// and the Psi^2 anchor fields.

#include <array>
#include <optional>
#include <vector>

#include "afcdm/curvature.hpp"
#include "afcdm/smetric.hpp"

namespace afcdm {

class GenError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShellGen {
    enum class Mode { Psi, PhiLambda, CoeffAsGenerator };
    Mode mode = Mode::Psi;
    ScalarField gen;     // Psi, Phi, or the coefficient h_P depending on mode
    double Lambda = 0.0; // effective constant (PhiLambda mode; != 0)
    ScalarField source;  // J_s, nonzero on the grid
    ScalarField h0;      // h^[0] on base coordinates (Psi/PhiLambda modes)
    // Psi^2 at the fiber lower bound (PhiLambda / CoeffAsGenerator modes);
    // must be positive
    ScalarField psi2_anchor;
    std::vector<ScalarField> n1, n2;  // integration functions per lower coord
};

struct GeneratingData {
    GridPtr grid;
    ShellConfig config;
    ScalarField psi;  // g1 = g2 = e^psi
    ScalarField j1;   // h-sector source (psi'' + psi'' = 2 j1)
    std::array<ShellGen, 3> shells;  // s = 2,3,4
};

struct ShellCoeffs {
    ScalarField h_fiber;               // coefficient on the fiber slot (2s-1 qs)
    ScalarField h_partner;             // integrated coefficient on the partner slot
    std::vector<ScalarField> w, n;     // N-rows: w on fiber slot, n on partner slot
    ScalarField psi2;                  // induced Psi^2 (provenance / symmetry tests)
};

// (g3),(g4),(gw),(gn) for one shell
ShellCoeffs generate_shell(const ShellGen& sg, const GridPtr& grid, const ShellConfig& cfg, int s);

SMetric generate_quasistationary(const GeneratingData& gd);
SMetric generate_cosmological(const GeneratingData& gd);
SMetric generate(const GeneratingData& gd);  // dispatch on gd.config.kind

// nonlinear symmetries: Phi^2 = Lambda * cumint(J^{-1} [Psi^2]*),
// Psi^2 = anchor + Lambda^{-1} * cumint(J [Phi^2]*)
ScalarField psi_to_phi(const ScalarField& psi, const ScalarField& source, double Lambda, Ax fiber);
ScalarField phi_to_psi(const ScalarField& phi, const ScalarField& source, double Lambda, Ax fiber,
                       const ScalarField& psi2_anchor);

// eta-polarization of a prime metric: h_P(s) := eta_s * prime h_P(s); the
// fiber coefficient, N-rows and induced generating data follow from the
// nonlinear symmetries. psi/j1 give the target h-sector.
struct PolarizationData {
    std::array<ScalarField, 3> eta;          // eta_{2s}, nonzero on grid
    ScalarField psi, j1;
    std::array<ScalarField, 3> source;       // J_s
    std::array<double, 3> Lambda{};          // for the induced Phi^2 = -4 Lambda h_P
    std::array<ScalarField, 3> psi2_anchor;  // Psi^2 at fiber lo (positive)
    std::array<std::vector<ScalarField>, 3> n1, n2;
};
SMetric eta_polarize(const SMetric& prime, const PolarizationData& pd,
                     GeneratingData* induced = nullptr);

// Small-parameter form: eta_{2s} = zeta_{2s}(1 + eps chi_{2s}),
// psi = psi0(1 + eps psi_chi); every generated coefficient is truncated at
// first order in eps, so field-equation residuals of the output are O(eps^2).
struct EpsilonData {
    std::array<ScalarField, 3> zeta, chi;
    double eps = 0.0;
    ScalarField psi0, psi_chi;  // target psi = psi0 * (1 + eps * psi_chi)
    ScalarField j1;             // source matching the truncated psi
    std::array<ScalarField, 3> source;
    std::array<ScalarField, 3> psi2_anchor;
    std::array<std::vector<ScalarField>, 3> n1, n2;
};
SMetric epsilon_expand(const SMetric& prime, const EpsilonData& ed);

// Zero-torsion generation: w_i = d_i A (gradient form, checked against
// d_i Psi / Psi*), n_k = d_k npot(x); sources constant per shell and h0
// constant, which the vanishing-torsion conditions require.
struct LcGenData {
    ScalarField psi, j1;
    std::array<ScalarField, 3> psi_check;    // generating functions Psi-check
    std::array<double, 3> source_const{};    // J_s constants (nonzero)
    std::array<double, 3> h0_const{};        // constant h^[0]
    std::array<ScalarField, 3> n_potential;  // npot(x) per shell
    double curl_tol = 1e-8;                  // rejection threshold
};
SMetric lc_generate(const GridPtr& grid, const ShellConfig& cfg, const LcGenData& d,
                    GeneratingData* induced = nullptr);

// Effective sources from a flow family: J = diag projection of
// [Upsilon - (1/2) dtau g] in the N-adapted frame; per shell
// J_s(tau) = upsilon_s - dtau h_P / (2 h_P), with the (2s-1)-slot value
// reported as a consistency diagnostic.
struct FlowSources {
    std::vector<double> tau;
    // [tau index][shell index 0..2]
    std::vector<std::array<ScalarField, 3>> J;
    std::vector<ScalarField> j1;  // h-sector source per tau node
    double max_slot_mismatch = 0.0;
};
FlowSources effective_source_from_flow(const std::vector<SMetric>& family,
                                       const std::vector<double>& tau,
                                       const std::array<ScalarField, 3>& upsilon_v,
                                       const ScalarField& upsilon_h);

}  // namespace afcdm
