#include "afcdm/smetric.hpp"

#include <cmath>

namespace afcdm {

namespace {

void check_deps(const ScalarField& f, DepMask allowed, const std::string& what) {
    if ((f.deps() & ~allowed) != 0)
        throw MetricError(what + " depends on coordinates outside the Killing pattern");
}

void check_nondegenerate(const ScalarField& f, const std::string& what) {
    bool pos = false, neg = false;
    for (double v : f.samples()) {
        if (!std::isfinite(v)) throw MetricError(what + " has non-finite samples");
        if (v > 0) pos = true;
        if (v < 0) neg = true;
        if (v == 0.0 || (pos && neg))
            throw MetricError(what + " vanishes or changes sign (degenerate coefficient)");
    }
}

}  // namespace

SMetric::SMetric(GridPtr grid, ShellConfig config, ScalarField g1, ScalarField g2,
                 std::array<ScalarField, 6> h, std::array<NRow, 6> nrows)
    : grid_(std::move(grid)),
      config_(config),
      g1_(std::move(g1)),
      g2_(std::move(g2)),
      h_(std::move(h)),
      nrows_(std::move(nrows)) {
    // generated targets carry g_i = e^{psi(x)}, but prime (seed) metrics may
    // depend on the shell-2 fiber as well (the KdS coefficients depend on
    // (r, theta)); anything beyond the shell-2 pattern is rejected
    const DepMask hmask = config_.allowed_deps(2);
    check_deps(g1_, hmask, "g1");
    check_deps(g2_, hmask, "g2");
    check_nondegenerate(g1_, "g1");
    check_nondegenerate(g2_, "g2");
    for (int s = 2; s <= 4; ++s) {
        const DepMask allowed = config_.allowed_deps(s);
        for (int slot : {2 * s - 1, 2 * s}) {
            const ScalarField& f = h_[slot - 3];
            check_deps(f, allowed, "h" + std::to_string(slot));
            check_nondegenerate(f, "h" + std::to_string(slot));
            const NRow& row = nrows_[slot - 3];
            if (row.coef.size() != static_cast<std::size_t>(2 * s - 2))
                throw MetricError("N-row of slot " + std::to_string(slot) + " needs " +
                                  std::to_string(2 * s - 2) + " coefficients");
            for (const ScalarField& c : row.coef)
                check_deps(c, allowed, "N-coefficient of slot " + std::to_string(slot));
        }
    }
}

const ScalarField& SMetric::g(int slot) const {
    if (slot == 1) return g1_;
    if (slot == 2) return g2_;
    throw MetricError("g slot out of range");
}

const ScalarField& SMetric::h(int slot) const {
    if (slot < 3 || slot > 8) throw MetricError("h slot out of range");
    return h_[slot - 3];
}

const NRow& SMetric::nrow(int slot) const {
    if (slot < 3 || slot > 8) throw MetricError("N slot out of range");
    return nrows_[slot - 3];
}

std::array<int, 8> SMetric::signature() const {
    std::array<int, 8> sig{};
    sig[0] = g1_.samples()[0] > 0 ? 1 : -1;
    sig[1] = g2_.samples()[0] > 0 ? 1 : -1;
    for (int slot = 3; slot <= 8; ++slot) sig[slot - 1] = h(slot).samples()[0] > 0 ? 1 : -1;
    return sig;
}

std::array<NRow, 6> trivial_nrows(const GridPtr& grid) {
    std::array<NRow, 6> rows;
    for (int s = 2; s <= 4; ++s)
        for (int slot : {2 * s - 1, 2 * s})
            rows[slot - 3].coef.assign(static_cast<std::size_t>(2 * s - 2),
                                       ScalarField(grid, 0.0));
    return rows;
}

SMetric flat_metric(const GridPtr& grid, ShellConfig config) {
    // phase-space signature (+,+,+,-;+,+,+,-)
    auto c = [&](double v) { return ScalarField(grid, v); };
    std::array<ScalarField, 6> h = {c(1), c(-1), c(1), c(1), c(1), c(-1)};
    return SMetric(grid, config, c(1), c(1), std::move(h), trivial_nrows(grid));
}

Mat8 assemble_offdiagonal(const SMetric& m, const std::array<double, kMaxAxes>& point) {
    // diagonal coefficients and unipotent frame matrix E (E[a][k] = N^a_k)
    std::array<double, 8> d{};
    d[0] = m.g(1).at_point(point);
    d[1] = m.g(2).at_point(point);
    for (int slot = 3; slot <= 8; ++slot) d[slot - 1] = m.h(slot).at_point(point);
    std::array<std::array<double, 8>, 8> E{};
    for (int i = 0; i < 8; ++i) E[i][i] = 1.0;
    for (int slot = 3; slot <= 8; ++slot) {
        const NRow& row = m.nrow(slot);
        for (std::size_t k = 0; k < row.coef.size(); ++k)
            E[slot - 1][k] = row.coef[k].at_point(point);
    }
    // block pattern g_ij + N^a_i N^b_j h_ab applied shell by shell; this is
    // exactly G = E^T D E expanded
    Mat8 G{};
    for (int mu = 0; mu < 8; ++mu)
        for (int nu = mu; nu < 8; ++nu) {
            double s = 0.0;
            for (int a = 0; a < 8; ++a) s += d[a] * E[a][mu] * E[a][nu];
            G[mu][nu] = G[nu][mu] = s;
        }
    return G;
}

Anholonomy anholonomy(const SMetric& m, int s) {
    if (s < 2 || s > 4) throw MetricError("anholonomy shell must be 2, 3 or 4");
    Anholonomy out;
    out.s = s;
    out.ncoords = 2 * s - 2;
    const Ax fiber = m.config().fiber_axis(s);
    const NRow& wrow = m.w_row(s);
    const int fiber_slot = m.config().fiber_slot(s);
    const int partner_slot = m.config().partner_slot(s);
    for (int which = 0; which < 2; ++which) {
        const NRow& row = m.nrow(which == 0 ? fiber_slot : partner_slot);
        auto& table = out.omega[which];
        table.assign(static_cast<std::size_t>(out.ncoords * out.ncoords),
                     ScalarField(m.grid(), 0.0));
        for (int i = 0; i < out.ncoords; ++i)
            for (int j = i + 1; j < out.ncoords; ++j) {
                const Ax ai = axis_of_slot(i + 1), aj = axis_of_slot(j + 1);
                ScalarField om = partial(row.coef[i], aj) - partial(row.coef[j], ai) -
                                 wrow.coef[i] * partial(row.coef[j], fiber) +
                                 wrow.coef[j] * partial(row.coef[i], fiber);
                table[static_cast<std::size_t>(j * out.ncoords + i)] = -1.0 * om;
                table[static_cast<std::size_t>(i * out.ncoords + j)] = std::move(om);
            }
    }
    return out;
}

}  // namespace afcdm
