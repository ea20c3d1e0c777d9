#include <doctest.h>

#include <cmath>

#include "afcdm/curvature.hpp"

using namespace afcdm;

namespace {

GridPtr grid17() {
    std::vector<Axis> axes;
    for (int i = 0; i < kMaxAxes; ++i) axes.emplace_back(static_cast<Ax>(i), 0.1, 1.1, 17);
    return make_grid(axes);
}

SMetric with_h(const GridPtr& g, ScalarField h3, ScalarField h4, ScalarField g1, ScalarField g2) {
    auto c = [&](double v) { return ScalarField(g, v); };
    std::array<ScalarField, 6> h = {std::move(h3), std::move(h4), c(1), c(1), c(1), c(-1)};
    return SMetric(g, {}, std::move(g1), std::move(g2), std::move(h), trivial_nrows(g));
}

}  // namespace

TEST_SUITE("curvature") {

TEST_CASE("flat metric: all Ricci pieces vanish") {
    auto g = grid17();
    SMetric m = flat_metric(g);
    CHECK(max_abs(ricci_h(m)) == 0.0);
    for (int s = 2; s <= 4; ++s) CHECK(max_abs(ricci_v(m, s)) == 0.0);
    CHECK(max_abs(ricci_scalar(m)) == 0.0);
    for (const ScalarField& e : einstein_diag(m)) CHECK(max_abs(e) == 0.0);
}

TEST_CASE("conformally flat h-sector with linear psi has zero curvature") {
    auto g = grid17();
    auto c = [&](double v) { return ScalarField(g, v); };
    ScalarField epsi = sample_field(g, mask_of(Ax::X1) | mask_of(Ax::X2),
                                    [](const std::array<double, kMaxAxes>& p) {
                                        return std::exp(0.3 * p[0] - 0.2 * p[1]);
                                    });
    SMetric m = with_h(g, c(1), c(-1), epsi, epsi);
    CHECK(interior_max_abs(ricci_h(m)) < 1e-8);
}

TEST_CASE("h-sector formula reduces to the conformal laplacian for g1 = g2 = e^psi") {
    auto g = grid17();
    auto c = [&](double v) { return ScalarField(g, v); };
    auto psi_fn = [](double x, double y) { return 0.2 * std::sin(1.3 * x) * std::cos(0.7 * y); };
    ScalarField epsi = sample_field(g, mask_of(Ax::X1) | mask_of(Ax::X2),
                                    [&](const std::array<double, kMaxAxes>& p) {
                                        return std::exp(psi_fn(p[0], p[1]));
                                    });
    SMetric m = with_h(g, c(1), c(-1), epsi, epsi);
    // R^1_1 = -e^{-psi} (psi.. + psi'') / 2
    ScalarField expect = sample_field(
        g, mask_of(Ax::X1) | mask_of(Ax::X2), [&](const std::array<double, kMaxAxes>& p) {
            const double lap = -(1.3 * 1.3 + 0.7 * 0.7) * psi_fn(p[0], p[1]);
            return -std::exp(-psi_fn(p[0], p[1])) * lap / 2.0;
        });
    CHECK(interior_max_abs(ricci_h(m) - expect) < 2e-5);
}

TEST_CASE("vertical Ricci: h4 = exp(y3), h3 = 1 gives exactly -1/4") {
    auto g = grid17();
    auto c = [&](double v) { return ScalarField(g, v); };
    ScalarField h4 = sample_field(g, mask_of(Ax::Y3),
                                  [](const std::array<double, kMaxAxes>& p) {
                                      return std::exp(p[2]);
                                  });
    SMetric m = with_h(g, c(1), h4, c(1), c(1));
    ScalarField r = ricci_v(m, 2);
    CHECK(interior_max_abs(r + ScalarField(g, 0.25)) < 1e-8);
}

TEST_CASE("constant fiber coefficients have zero vertical Ricci") {
    auto g = grid17();
    auto c = [&](double v) { return ScalarField(g, v); };
    SMetric m = with_h(g, c(2.0), c(-3.0), c(1), c(1));
    CHECK(max_abs(ricci_v(m, 2)) == 0.0);
}

TEST_CASE("einstein diagonal: trace identity and single-shell pattern") {
    auto g = grid17();
    auto c = [&](double v) { return ScalarField(g, v); };
    // only shell 2 curved
    ScalarField h4 = sample_field(g, mask_of(Ax::Y3),
                                  [](const std::array<double, kMaxAxes>& p) {
                                      return -1 - 0.3 * p[2] * p[2];
                                  });
    SMetric m = with_h(g, c(1), h4, c(1), c(1));
    const ScalarField r4 = ricci_v(m, 2);
    const auto E = einstein_diag(m);
    // E^2_2 = -R^4_4, E^4_4 = 0, E^6_6 = E^8_8 = -R^4_4
    CHECK(interior_max_abs(E[0] + r4) < 1e-12);
    CHECK(interior_max_abs(E[1]) < 1e-12);
    CHECK(interior_max_abs(E[2] + r4) < 1e-12);
    CHECK(interior_max_abs(E[3] + r4) < 1e-12);
    // trace identity: sum E = -(3/2) sR
    const ScalarField sc = ricci_scalar(m);
    ScalarField tr = E[0] + E[1] + E[2] + E[3];
    CHECK(interior_max_abs(tr + 1.5 * sc) < 1e-12);
}

TEST_CASE("mixed Ricci components vanish for base-independent data with N = 0") {
    auto g = grid17();
    auto c = [&](double v) { return ScalarField(g, v); };
    ScalarField h4 = sample_field(g, mask_of(Ax::Y3),
                                  [](const std::array<double, kMaxAxes>& p) {
                                      return -1 - 0.2 * p[2];
                                  });
    SMetric m = with_h(g, c(1), h4, c(1), c(1));
    auto [rF, rP] = ricci_mixed(m, 2);
    for (const auto& f : rF) CHECK(interior_max_abs(f) < 1e-10);
    for (const auto& f : rP) CHECK(interior_max_abs(f) < 1e-10);
}

TEST_CASE("lc_ricci_bruteforce: Minkowski vanishes") {
    auto g = grid17();
    SMetric m = flat_metric(g);
    const BaseRicciField ric = lc_ricci_bruteforce(base_block(m));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(max_abs(ric.ric[i][j]) == 0.0);
}

TEST_CASE("lc_ricci_bruteforce: product of flat 2-d and a round 2-sphere") {
    // g = diag(1, 1, rho^2, rho^2 sin^2 theta) with theta = y3, phi = y4:
    // Ricci = diag(0, 0, 1, sin^2 theta)
    const double rho = 1.7;
    auto g = make_grid({Axis(Ax::X1, 0, 1, 17), Axis(Ax::X2, 0, 1, 17),
                        Axis(Ax::Y3, 0.5, 2.6, 33), Axis(Ax::Y4, 0, 1, 17)});
    BaseMetricField bf;
    bf.grid = g;
    auto c = [&](double v) { return ScalarField(g, v); };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) bf.g[i][j] = c(i == j ? 1.0 : 0.0);
    bf.g[2][2] = c(rho * rho);
    bf.g[3][3] = sample_field(g, mask_of(Ax::Y3), [&](const std::array<double, kMaxAxes>& p) {
        return rho * rho * std::sin(p[2]) * std::sin(p[2]);
    });
    const BaseRicciField ric = lc_ricci_bruteforce(bf);
    ScalarField expect33 = sample_field(g, mask_of(Ax::Y3),
                                        [](const std::array<double, kMaxAxes>& p) {
                                            return std::sin(p[2]) * std::sin(p[2]);
                                        });
    CHECK(interior_max_abs(ric.ric[2][2] - ScalarField(g, 1.0)) < 1e-6);
    CHECK(interior_max_abs(ric.ric[3][3] - expect33) < 1e-6);
    CHECK(interior_max_abs(ric.ric[0][0]) < 1e-9);
    CHECK(interior_max_abs(ric.ric[0][2]) < 1e-9);
}

TEST_CASE("lc_ricci_bruteforce: Schwarzschild exterior is vacuum") {
    // (x1,x2,y3,y4) = (r, phi, theta, t), coefficients from the a=0 reduction
    const double M = 1.0;
    auto g = make_grid({Axis(Ax::X1, 4.0, 6.0, 33), Axis(Ax::X2, 0, 1.0, 9),
                        Axis(Ax::Y3, 0.8, 2.0, 33), Axis(Ax::Y4, 0, 1, 9)});
    BaseMetricField bf;
    bf.grid = g;
    auto c = [&](double v) { return ScalarField(g, v); };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) bf.g[i][j] = c(0.0);
    bf.g[0][0] = sample_field(g, mask_of(Ax::X1), [&](const std::array<double, kMaxAxes>& p) {
        return 1.0 / (1.0 - 2 * M / p[0]);
    });
    bf.g[1][1] = sample_field(g, mask_of(Ax::X1) | mask_of(Ax::Y3),
                              [&](const std::array<double, kMaxAxes>& p) {
                                  return p[0] * p[0] * std::sin(p[2]) * std::sin(p[2]);
                              });
    bf.g[2][2] = sample_field(g, mask_of(Ax::X1), [](const std::array<double, kMaxAxes>& p) {
        return p[0] * p[0];
    });
    bf.g[3][3] = sample_field(g, mask_of(Ax::X1), [&](const std::array<double, kMaxAxes>& p) {
        return -(1.0 - 2 * M / p[0]);
    });
    const BaseRicciField ric = lc_ricci_bruteforce(bf);
    double worst = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) worst = std::max(worst, interior_max_abs(ric.ric[i][j]));
    CHECK(worst < 5e-5);
}

}  // TEST_SUITE
