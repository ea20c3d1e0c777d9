#pragma once
// Shell-decomposed (2+2)+(2+2) d-metric: horizontal coefficients g1,g2, fiber
// coefficients h3..h8, and per-shell N-connection rows. A shell s in {2,3,4}
// owns slots (2s-1, 2s); exactly one of the two carries the anisotropic
// (fiber) dependence. Quasi-stationary configurations take the fiber slots
// (3,5,7); locally anisotropic cosmological ones dualise shell 2 to fiber
// slot 4 (y4 = t).

#include <array>
#include <optional>
#include <vector>

#include "afcdm/field.hpp"

namespace afcdm {

class MetricError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ShellKind { QuasiStationary, Cosmological };
enum class FiberLabel { Velocity, Momentum };

struct ShellConfig {
    ShellKind kind = ShellKind::QuasiStationary;
    FiberLabel fiber_label = FiberLabel::Velocity;

    // slot carrying the anisotropic dependence of shell s (3|4, 5, 7)
    int fiber_slot(int s) const {
        if (s == 2) return kind == ShellKind::QuasiStationary ? 3 : 4;
        return 2 * s - 1;
    }
    int partner_slot(int s) const { return fiber_slot(s) == 2 * s - 1 ? 2 * s : 2 * s - 1; }
    Ax fiber_axis(int s) const { return axis_of_slot(fiber_slot(s)); }

    // coordinates a shell-s coefficient may depend on: all lower-shell
    // coordinates plus the shell's own fiber coordinate
    DepMask allowed_deps(int s) const {
        DepMask m = 0;
        for (int slot = 1; slot <= 2 * s - 2; ++slot) m |= mask_of(axis_of_slot(slot));
        return m | mask_of(fiber_axis(s));
    }
};

// N-connection rows of one shell: coefficients attached to slot 2s-1 and 2s,
// each a vector over the 2s-2 lower coordinates (index k-1 for slot k).
struct NRow {
    std::vector<ScalarField> coef;
};

class SMetric {
  public:
    SMetric(GridPtr grid, ShellConfig config, ScalarField g1, ScalarField g2,
            std::array<ScalarField, 6> h,  // slots 3..8
            std::array<NRow, 6> nrows);    // rows for slots 3..8

    const GridPtr& grid() const { return grid_; }
    const ShellConfig& config() const { return config_; }
    const ScalarField& g(int slot) const;          // slot 1 or 2
    const ScalarField& h(int slot) const;          // slot 3..8
    const NRow& nrow(int slot) const;              // slot 3..8
    // role accessors for shell s: w = row on the fiber slot, n = partner row
    const NRow& w_row(int s) const { return nrow(config_.fiber_slot(s)); }
    const NRow& n_row(int s) const { return nrow(config_.partner_slot(s)); }
    const ScalarField& h_fiber(int s) const { return h(config_.fiber_slot(s)); }
    const ScalarField& h_partner(int s) const { return h(config_.partner_slot(s)); }

    // per-slot sign of the coefficient (the signature pattern)
    std::array<int, 8> signature() const;

    // highest shell with any nontrivial content always exists; all four
    // shells are stored (upper shells may be trivial +/-1 coefficients)
  private:
    GridPtr grid_;
    ShellConfig config_;
    ScalarField g1_, g2_;
    std::array<ScalarField, 6> h_;
    std::array<NRow, 6> nrows_;
};

// zero-N rows of the right lengths on a grid
std::array<NRow, 6> trivial_nrows(const GridPtr& grid);

// flat phase-space metric diag(1,1,1,-1,1,1,1,-1)
SMetric flat_metric(const GridPtr& grid, ShellConfig config = {});

// Eq. pattern: G = E^T diag(g1,g2,h3..h8) E with unipotent E carrying the
// N-rows; evaluated by nearest-node sampling at `point`.
using Mat8 = std::array<std::array<double, 8>, 8>;
Mat8 assemble_offdiagonal(const SMetric& m, const std::array<double, kMaxAxes>& point);

// N-connection curvature of one shell: Omega^a_{ij} for a in {fiber, partner}
// slot order, i<j over the 2s-2 lower coordinates:
//   Omega^a_{ij} = d_j N^a_i - d_i N^a_j - w_i d_fiber N^a_j + w_j d_fiber N^a_i
struct Anholonomy {
    // [0] = fiber-slot components, [1] = partner-slot; entry (i,j) stored for
    // i<j at index i*(2s-2)+j of a dense row-major (2s-2)^2 table (others 0)
    int s = 2;
    int ncoords = 0;
    std::array<std::vector<ScalarField>, 2> omega;
    const ScalarField& get(int which, int i, int j) const { return omega[which][i * ncoords + j]; }
};
Anholonomy anholonomy(const SMetric& m, int s);

}  // namespace afcdm
