#include <doctest.h>

#include <cmath>

#include "afcdm/generator.hpp"
#include "afcdm/thermo.hpp"
#include "support/fixtures.hpp"

using namespace afcdm;

namespace {

constexpr double kPi = 3.14159265358979323846;

GridPtr unit_grid() {
    std::vector<Axis> axes;
    for (int i = 0; i < kMaxAxes; ++i) axes.emplace_back(static_cast<Ax>(i), 0.0, 1.0, 9);
    return make_grid(axes);
}

}  // namespace

TEST_SUITE("thermo") {

TEST_CASE("flat 8-d metric on the unit box has unit volume") {
    SMetric m = flat_metric(unit_grid());
    CHECK(volume_functional(m) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("conformal scaling multiplies the volume by |c|^{d/2} per active slot") {
    auto g = unit_grid();
    auto cf = [&](double v) { return ScalarField(g, v); };
    const double c = 2.25;
    std::array<ScalarField, 6> h = {cf(c), cf(-c), cf(c), cf(c), cf(c), cf(-c)};
    SMetric m(g, {}, cf(c), cf(c), std::move(h), trivial_nrows(g));
    // sqrt|det| = c^4 over an 8-d unit box
    CHECK(volume_functional(m) == doctest::Approx(std::pow(c, 4)).epsilon(1e-12));
}

TEST_CASE("determinant route equals the dense-matrix oracle on a generated fixture") {
    fixtures::Fixture fx = fixtures::make_qs_fixture(fixtures::QsFamily::Tanh, 17);
    SMetric m = generate_quasistationary(fx.gd);
    const double V = volume_functional(m);
    // oracle: dense 8x8 determinant via Gaussian elimination at every node of
    // the active submesh, trapezoid weights, Killing axes as measure factors
    const Grid& g = *m.grid();
    const Axis &ax1 = g.axis(Ax::X1), &ax2 = g.axis(Ax::X2), &ay3 = g.axis(Ax::Y3),
               &av5 = g.axis(Ax::V5), &av7 = g.axis(Ax::V7);
    double sum = 0.0;
    for (int i1 = 0; i1 < ax1.n; ++i1)
        for (int i2 = 0; i2 < ax2.n; ++i2)
            for (int i3 = 0; i3 < ay3.n; ++i3)
                for (int i5 = 0; i5 < av5.n; ++i5)
                    for (int i7 = 0; i7 < av7.n; ++i7) {
                        std::array<double, kMaxAxes> pt{ax1.coord(i1), ax2.coord(i2),
                                                        ay3.coord(i3), 0.0, av5.coord(i5),
                                                        0.0, av7.coord(i7), 0.0};
                        Mat8 G = assemble_offdiagonal(m, pt);
                        // LU determinant with partial pivoting
                        double det = 1.0;
                        for (int c = 0; c < 8; ++c) {
                            int piv = c;
                            for (int r = c + 1; r < 8; ++r)
                                if (std::fabs(G[r][c]) > std::fabs(G[piv][c])) piv = r;
                            if (piv != c) {
                                std::swap(G[piv], G[c]);
                                det = -det;
                            }
                            det *= G[c][c];
                            for (int r = c + 1; r < 8; ++r) {
                                const double f = G[r][c] / G[c][c];
                                for (int cc = c; cc < 8; ++cc) G[r][cc] -= f * G[c][cc];
                            }
                        }
                        double w = 1.0;
                        auto tw = [](const Axis& ax, int i) {
                            return (i == 0 || i == ax.n - 1) ? 0.5 * ax.spacing() : ax.spacing();
                        };
                        w *= tw(ax1, i1) * tw(ax2, i2) * tw(ay3, i3) * tw(av5, i5) * tw(av7, i7);
                        sum += w * std::sqrt(std::fabs(det));
                    }
    // Killing axes y4, v6, v8 have unit extent (measure factor 1)
    CHECK(V == doctest::Approx(sum).epsilon(1e-8));
}

TEST_CASE("factored generating-data route agrees with the determinant route") {
    fixtures::Fixture fx = fixtures::make_qs_fixture(fixtures::QsFamily::Tanh, 33);
    SMetric m = generate_quasistationary(fx.gd);
    const double V = volume_functional(m);
    // sqrt|det| = e^psi * prod_s |Psi_s* / 2 J_s| via the rho identity
    ScalarField factored = map(fx.gd.psi, [](double v) { return std::exp(v); });
    for (int s = 2; s <= 4; ++s) {
        const ShellGen& sg = fx.gd.shells[s - 2];
        const Ax fiber = fx.gd.config.fiber_axis(s);
        ScalarField rho = partial(sg.gen, fiber) / (2.0 * sg.source);
        factored = factored * map(rho, [](double v) { return std::fabs(v); });
    }
    const double V2 = quadrature(factored);
    CHECK(std::fabs(V - V2) <= 1e-8 * std::max(1.0, std::fabs(V)));
}

TEST_CASE("8-d formula zeros and linearity") {
    const double V = 3.7, tau = 0.9;
    // S = 0 at Lh + Lv = 1/4
    CHECK(thermo_vars_8d(V, 0.1, 0.15, tau).S == doctest::Approx(0.0));
    // E = 0 at Lh + Lv = 1/(2 tau)
    CHECK(thermo_vars_8d(V, 0.2, 1.0 / (2 * tau) - 0.2, tau).E == doctest::Approx(0.0));
    // linearity in V
    const ThermoVars a = thermo_vars_8d(V, 0.3, 0.1, tau);
    const ThermoVars b = thermo_vars_8d(2 * V, 0.3, 0.1, tau);
    CHECK(b.lnZ == doctest::Approx(2 * a.lnZ));
    CHECK(b.E == doctest::Approx(2 * a.E));
    CHECK(b.S == doctest::Approx(2 * a.S));
    // closed form spot check: lnZ = V/(4 pi tau)^4
    CHECK(a.lnZ == doctest::Approx(V / std::pow(4 * kPi * tau, 4)));
}

TEST_CASE("4-d formula zeros and tau-scaling ratios") {
    const double V = 2.2, tau = 0.7;
    CHECK(thermo_vars_4d(V, 1.0, tau).S == doctest::Approx(0.0));
    CHECK(thermo_vars_4d(V, 1.0 / (2 * tau), tau).E == doctest::Approx(0.0));
    // fixed V, Lambda: S ~ tau^-4 in 8-d vs tau^-2 in 4-d
    const double L = 0.05;
    const double s8a = thermo_vars_8d(V, L, 0.0, tau).S;
    const double s8b = thermo_vars_8d(V, L, 0.0, 2 * tau).S;
    CHECK(s8a / s8b == doctest::Approx(16.0));
    const double s4a = thermo_vars_4d(V, L, tau).S;
    const double s4b = thermo_vars_4d(V, L, 2 * tau).S;
    CHECK(s4a / s4b == doctest::Approx(4.0));
}

TEST_CASE("sigma: flat metric closed form and the soliton-like zero") {
    auto g = unit_grid();
    SMetric m = flat_metric(g);
    RicciCoeffs rc = ricci_all(m);
    const double tau = 0.8;
    // R = 0: integrand is 8 * (1/2tau)^2 = 2/tau^2, V = 1
    const double sigma = sigma_fluctuation(m, rc, tau);
    const double expect = 2 * std::pow(tau, 4) * std::pow(4 * kPi * tau, -4) * (2.0 / (tau * tau));
    CHECK(sigma == doctest::Approx(expect).epsilon(1e-12));
    CHECK(sigma >= 0.0);
    // Einstein-like fixture R^a_a = 1/(2 tau0): sigma(tau0) = 0 exactly
    const double tau0 = 0.6;
    RicciCoeffs rc2 = rc;
    rc2.hh = ScalarField(g, 1.0 / (2 * tau0));
    for (auto& v : rc2.vv) v = ScalarField(g, 1.0 / (2 * tau0));
    CHECK(sigma_fluctuation(m, rc2, tau0) == doctest::Approx(0.0));
    // and strictly positive off the soliton point or under perturbation
    CHECK(sigma_fluctuation(m, rc2, 2 * tau0) > 0.0);
    RicciCoeffs rc3 = rc2;
    rc3.vv[1] = ScalarField(g, 1.0 / (2 * tau0) + 0.01);
    CHECK(sigma_fluctuation(m, rc3, tau0) > 0.0);
}

TEST_CASE("thermo report over a tau grid with running constants") {
    SMetric m = flat_metric(unit_grid());
    RicciCoeffs rc = ricci_all(m);
    ThermoConfig cfg;
    cfg.tau = TauGrid{0.5, 1.0, 3};
    cfg.lambda_h = {0.25, 0.25, 0.25};
    cfg.lambda_v = {0.0, 0.0, 0.0};
    ThermoReport rep = thermo_report(m, rc, cfg, nullptr);
    REQUIRE(rep.S.size() == 3);
    for (double s : rep.S) CHECK(s == doctest::Approx(0.0));  // Lh + Lv = 1/4
    CHECK(rep.V[0] == doctest::Approx(1.0));
    // mismatched lambda sequence is an error
    cfg.lambda_v.pop_back();
    CHECK_THROWS_AS(thermo_report(m, rc, cfg, nullptr), ThermoError);
}

}  // TEST_SUITE
