#pragma once
// Canonical d-connection coefficients, canonical d-torsion, and Levi-Civita
// constraint residuals. Coefficients are stored only for the nonzero pattern
// of the Killing-adapted ansatz; the pure-horizontal/pure-vertical torsion
// classes vanish identically and are represented structurally, never as
// small numbers.

#include <array>
#include <vector>

#include "afcdm/smetric.hpp"

namespace afcdm {

// h-part coefficients L^i_{jk} (i,j,k in {1,2}) stored as L[i-1][j-1][k-1]
struct HConnCoeffs {
    std::array<std::array<std::array<ScalarField, 2>, 2>, 2> L;
};

// One fiber shell, role-parameterized: F = fiber slot, P = partner slot;
// w-row attaches to F, n-row to P. Lower-coordinate index k runs 0..2s-3.
struct ShellConnCoeffs {
    int s = 2;
    int F = 3, P = 4;
    // L^P_{P,k}, L^F_{F,k}, L^F_{P,k}, L^P_{F,k}
    std::vector<ScalarField> L_PPk, L_FFk, L_FPk, L_PFk;
    // C^F_{FF}, C^F_{PP}, C^P_{FP}; C^P_{FF} = C^P_{PP} = 0 identically
    ScalarField C_FFF, C_FPP, C_PFP;
    // traces: C_F = C^F_FF + C^P_FP, C_P = 0 identically
    ScalarField C_F;
};

struct DConnCoeffs {
    HConnCoeffs hpart;
    std::array<ShellConnCoeffs, 3> shells;  // s = 2,3,4
};

struct ShellTorsion {
    int s = 2;
    int F = 3, P = 4;
    // T^F_{F,k}, T^F_{P,k}, T^P_{F,k}, T^P_{P,k}
    std::vector<ScalarField> T_FFk, T_FPk, T_PFk, T_PPk;
    // T^F_{ij} = -Omega^F_{ij}, T^P_{ij} = -Omega^P_{ij} (antisymmetric, i<j)
    std::vector<ScalarField> T_Fij, T_Pij;  // dense (2s-2)^2 tables
    int ncoords = 0;
    double max_abs_all() const;
};

struct TorsionCoeffs {
    std::array<ShellTorsion, 3> shells;
    // T^i_{jk} and T^a_{bc} vanish identically for the canonical d-connection
    // on this ansatz; they are not stored.
    double max_abs_all() const;
};

DConnCoeffs canonical_dconnection(const SMetric& m);
TorsionCoeffs canonical_torsion(const SMetric& m, const DConnCoeffs& c);

// Residual fields of the zero-torsion (Levi-Civita) constraints per shell:
//   (a) w*_i - e_i ln sqrt|h_F|     (e_i = d_i - w_i d_fiber)
//   (b) e_i ln sqrt|h_P|
//   (c) d_i w_j - d_j w_i
//   (d) n*_i
//   (e) d_i n_j - d_j n_i
struct LcShellResiduals {
    int s = 2;
    std::vector<ScalarField> a, b, d;  // per lower coordinate
    std::vector<ScalarField> c, e;     // per (i<j) pair
    double max_a = 0, max_b = 0, max_c = 0, max_d = 0, max_e = 0;
    double max_all() const;
};

struct LcResiduals {
    std::array<LcShellResiduals, 3> shells;
    double max_all() const;
};

LcResiduals lc_residuals(const SMetric& m);

}  // namespace afcdm
