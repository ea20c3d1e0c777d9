#include "afcdm/prime.hpp"

#include <cmath>
#include <sstream>

namespace afcdm {

namespace {

using Pt = std::array<double, kMaxAxes>;

double kds_delta(double r, double M, double a, double L0) {
    return r * r - 2 * M * r + a * a - (L0 / 3.0) * r * r * r * r;
}

// validity of a KdS box: Delta_Lambda > 0 (exterior), sin(theta) != 0 (poles
// excluded), a^2 sin^2 - Delta < 0 (timelike t)
void check_kds_box(const Axis& rax, const Axis& thax, double M, double a, double L0) {
    for (int i = 0; i < rax.n; ++i) {
        const double r = rax.coord(i);
        if (r <= 0) throw PrimeError("kds: box includes r <= 0");
        const double D = kds_delta(r, M, a, L0);
        if (D <= 0) {
            std::ostringstream os;
            os << "kds: Delta_Lambda <= 0 at r = " << r << " (horizon crossing in sampled box)";
            throw PrimeError(os.str());
        }
        for (int j = 0; j < thax.n; ++j) {
            const double th = thax.coord(j);
            const double s2 = std::sin(th) * std::sin(th);
            if (s2 < 1e-12) throw PrimeError("kds: box includes a coordinate pole (sin theta = 0)");
            if (a * a * s2 - D >= 0)
                throw PrimeError("kds: a^2 sin^2(theta) - Delta_Lambda >= 0 in sampled box");
        }
    }
}

struct Kds4 {
    double g1, g2, g3, g4, n2;
};

Kds4 kds_coeffs(double r, double th, double M, double a, double L0) {
    const double D = kds_delta(r, M, a, L0);
    const double s2 = std::sin(th) * std::sin(th);
    const double rho2 = r * r + a * a * std::cos(th) * std::cos(th);
    const double Sig = (r * r + a * a) * (r * r + a * a) - D * a * a * s2;
    const double q = r * r + a * a - D;
    Kds4 k;
    k.g1 = rho2 / D;
    k.g2 = (s2 / rho2) * (Sig - a * a * s2 * q * q / (a * a * s2 - D));
    k.g3 = rho2;
    k.g4 = (a * a * s2 - D) / rho2;
    k.n2 = -a * s2 * q / (a * a * s2 - D);
    return k;
}

SMetric build_kds(const NewKdS& p, const GridPtr& grid, ShellConfig cfg) {
    check_kds_box(grid->axis(Ax::X1), grid->axis(Ax::Y3), p.M, p.a, p.Lambda0);
    const DepMask rth = mask_of(Ax::X1) | mask_of(Ax::Y3);
    auto coeff = [&](auto pick, DepMask deps) {
        return sample_field(grid, deps, [&, pick](const Pt& pt) {
            return pick(kds_coeffs(pt[0], pt[2], p.M, p.a, p.Lambda0));
        });
    };
    ScalarField g1 = coeff([](const Kds4& k) { return k.g1; }, mask_of(Ax::X1) | mask_of(Ax::Y3));
    ScalarField g2 = coeff([](const Kds4& k) { return k.g2; }, rth);
    ScalarField h3 = coeff([](const Kds4& k) { return k.g3; }, rth);
    ScalarField h4 = coeff([](const Kds4& k) { return k.g4; }, rth);
    std::array<ScalarField, 6> h = {h3, h4, ScalarField(grid, 1.0), ScalarField(grid, -1.0),
                                    ScalarField(grid, 1.0), ScalarField(grid, -1.0)};
    auto rows = trivial_nrows(grid);
    rows[4 - 3].coef[1] = coeff([](const Kds4& k) { return k.n2; }, rth);  // N^4_2
    if (p.fiber) {
        // double BH configuration on (v5,v6,v7,v8) = (vr, vphi, vtheta, E)
        check_kds_box(grid->axis(Ax::V5), grid->axis(Ax::V7), p.fiber->M, p.fiber->a,
                      p.fiber->Lambda0);
        const DepMask vrth = mask_of(Ax::V5) | mask_of(Ax::V7);
        auto vcoeff = [&](auto pick) {
            return sample_field(grid, vrth, [&, pick](const Pt& pt) {
                return pick(kds_coeffs(pt[4], pt[6], p.fiber->M, p.fiber->a, p.fiber->Lambda0));
            });
        };
        h[5 - 3] = vcoeff([](const Kds4& k) { return k.g1; });
        h[6 - 3] = vcoeff([](const Kds4& k) { return k.g2; });
        h[7 - 3] = vcoeff([](const Kds4& k) { return k.g3; });
        h[8 - 3] = vcoeff([](const Kds4& k) { return k.g4; });
        rows[8 - 3].coef[5] = vcoeff([](const Kds4& k) { return k.n2; });  // N^8_6
    }
    return SMetric(grid, cfg, std::move(g1), std::move(g2), std::move(h), std::move(rows));
}

double wh_radius(double l, double b0, int k) {
    const double p = 2.0 * k;
    return std::pow(std::pow(std::fabs(l), p) + std::pow(b0, p), 1.0 / p);
}

SMetric build_wormhole(const EbWormhole& p, const GridPtr& grid, ShellConfig cfg) {
    if (p.b0 <= 0 || p.k < 1) throw PrimeError("wormhole: requires b0 > 0 and k >= 1");
    // coordinates (l, theta, phi, t); poles excluded via sin(theta) != 0
    const Axis& th = grid->axis(Ax::X2);
    for (int j = 0; j < th.n; ++j)
        if (std::fabs(std::sin(th.coord(j))) < 1e-12)
            throw PrimeError("wormhole: box includes a coordinate pole (sin theta = 0)");
    ScalarField g1(grid, 1.0);
    ScalarField g2 = sample_field(grid, mask_of(Ax::X1),
                                  [&](const Pt& pt) { return std::pow(wh_radius(pt[0], p.b0, p.k), 2); });
    ScalarField h3 = sample_field(grid, mask_of(Ax::X1) | mask_of(Ax::X2), [&](const Pt& pt) {
        const double r = wh_radius(pt[0], p.b0, p.k);
        return r * r * std::sin(pt[1]) * std::sin(pt[1]);
    });
    std::array<ScalarField, 6> h = {h3, ScalarField(grid, -1.0), ScalarField(grid, 1.0),
                                    ScalarField(grid, 1.0), ScalarField(grid, 1.0),
                                    ScalarField(grid, -1.0)};
    if (p.fiber_wormhole) {
        // prime h WH and v WH: g5=1, g6 = vr^2(vl), g7 = vr^2 sin^2(vtheta), g8=-1
        const Axis& vth = grid->axis(Ax::V6);
        for (int j = 0; j < vth.n; ++j)
            if (std::fabs(std::sin(vth.coord(j))) < 1e-12)
                throw PrimeError("wormhole: fiber box includes a coordinate pole");
        h[6 - 3] = sample_field(grid, mask_of(Ax::V5), [&](const Pt& pt) {
            return std::pow(wh_radius(pt[4], p.vb0, p.vk), 2);
        });
        h[7 - 3] = sample_field(grid, mask_of(Ax::V5) | mask_of(Ax::V6), [&](const Pt& pt) {
            const double r = wh_radius(pt[4], p.vb0, p.vk);
            return r * r * std::sin(pt[5]) * std::sin(pt[5]);
        });
        h[5 - 3] = ScalarField(grid, 1.0);
        h[8 - 3] = ScalarField(grid, -1.0);
    }
    return SMetric(grid, cfg, std::move(g1), std::move(g2), std::move(h), trivial_nrows(grid));
}

double torus_f(double r, double mu, double L, double b, double eps) {
    return -eps * eps * b * b - mu / r - L * r * r / 3.0;
}

SMetric build_torus(const BlackTorus& p, const GridPtr& grid, ShellConfig cfg) {
    const Axis& rax = grid->axis(Ax::X1);
    for (int i = 0; i < rax.n; ++i) {
        const double r = rax.coord(i);
        if (r <= 0) throw PrimeError("black torus: box includes r <= 0");
        if (torus_f(r, p.mu, p.Lambda, p.b, p.eps) <= 0) {
            std::ostringstream os;
            os << "black torus: f(r) <= 0 at r = " << r << " (inside horizon in sampled box)";
            throw PrimeError(os.str());
        }
    }
    auto f_of = [&](const Pt& pt) { return torus_f(pt[0], p.mu, p.Lambda, p.b, p.eps); };
    ScalarField g1 = sample_field(grid, mask_of(Ax::X1), [&](const Pt& pt) { return 1.0 / f_of(pt); });
    ScalarField g2 = sample_field(grid, mask_of(Ax::X1),
                                  [&](const Pt& pt) { return pt[0] * pt[0] * p.k1 * p.k1; });
    ScalarField h3 = sample_field(grid, mask_of(Ax::X1),
                                  [&](const Pt& pt) { return pt[0] * pt[0] * p.k2 * p.k2; });
    ScalarField h4 = sample_field(grid, mask_of(Ax::X1), [&](const Pt& pt) { return -f_of(pt); });
    std::array<ScalarField, 6> h = {h3, h4, ScalarField(grid, 1.0), ScalarField(grid, 1.0),
                                    ScalarField(grid, 1.0), ScalarField(grid, -1.0)};
    if (p.fiber) {
        const auto& q = *p.fiber;
        const Axis& vr = grid->axis(Ax::V5);
        for (int i = 0; i < vr.n; ++i)
            if (vr.coord(i) <= 0 || torus_f(vr.coord(i), q.mu, q.Lambda, q.b, q.eps) <= 0)
                throw PrimeError("black torus: fiber box crosses the v-horizon");
        auto vf = [&](const Pt& pt) { return torus_f(pt[4], q.mu, q.Lambda, q.b, q.eps); };
        h[5 - 3] = sample_field(grid, mask_of(Ax::V5), [&](const Pt& pt) { return 1.0 / vf(pt); });
        h[6 - 3] = sample_field(grid, mask_of(Ax::V5),
                                [&](const Pt& pt) { return pt[4] * pt[4] * q.k1 * q.k1; });
        h[7 - 3] = sample_field(grid, mask_of(Ax::V5),
                                [&](const Pt& pt) { return pt[4] * pt[4] * q.k2 * q.k2; });
        h[8 - 3] = sample_field(grid, mask_of(Ax::V5), [&](const Pt& pt) { return -vf(pt); });
    }
    return SMetric(grid, cfg, std::move(g1), std::move(g2), std::move(h), trivial_nrows(grid));
}

double void_mass(double r, const SpheroidVoid& p) {
    const double rho_int = -p.rho0 * p.xi;
    const double rho_bor = p.rho0 * p.xi / (std::pow(1.0 + p.rw / p.rv, 3) - 1.0);
    const double pi = 3.14159265358979323846;
    if (r < p.rv) return (4.0 * pi / 3.0) * rho_int * r * r * r;
    if (r < p.rv + p.rw) {
        const double Mv = (4.0 * pi / 3.0) * rho_int * p.rv * p.rv * p.rv;
        return Mv + (4.0 * pi / 3.0) * rho_bor * (r * r * r - p.rv * p.rv * p.rv);
    }
    return 0.0;
}

SMetric build_void(const SpheroidVoid& p, const GridPtr& grid, ShellConfig cfg) {
    if (p.xi >= 1.0) throw PrimeError("void: xi must be < 1");
    if (cfg.kind != ShellKind::Cosmological)
        throw PrimeError("void: cosmological shell configuration required");
    const double rd2 = p.r_focus * p.r_focus;
    auto B = [&](double r) {
        const double t = p.B1 + std::log(r / p.r_focus);
        return p.B0 * t * t;
    };
    auto a2 = [&](double t) { return p.a0 * p.a0 * std::exp(2.0 * p.H * t); };
    auto conf = [&](double r, double th) {
        const double w = p.prolate ? std::cos(th) : std::sin(th);
        const double u = 1.0 + 0.25 * p.sigma * (r * r + rd2 * w * w);
        return u * u;
    };
    const Axis& rax = grid->axis(Ax::X1);
    const Axis& thax = grid->axis(Ax::X2);
    for (int i = 0; i < rax.n; ++i) {
        const double r = rax.coord(i);
        if (r <= 0) throw PrimeError("void: box includes r <= 0");
        for (int j = 0; j < thax.n; ++j) {
            const double th = thax.coord(j);
            const double s = p.prolate ? std::sin(th) : std::cos(th);
            const double denom = r * r - void_mass(r, p) / r * (r * r + rd2 * s * s) + rd2;
            if (denom <= 0) throw PrimeError("void: radial denominator vanishes in sampled box");
            if (std::fabs(std::sin(th)) < 1e-12) throw PrimeError("void: box includes a pole");
        }
    }
    const DepMask rtht = mask_of(Ax::X1) | mask_of(Ax::X2) | mask_of(Ax::Y4);
    ScalarField g1 = sample_field(grid, rtht, [&](const Pt& pt) {
        const double r = pt[0], th = pt[1], t = pt[3];
        const double s = p.prolate ? std::sin(th) : std::cos(th);
        const double denom = r * r - void_mass(r, p) / r * (r * r + rd2 * s * s) + rd2;
        return a2(t) * (r * r + rd2 * std::sin(th) * std::sin(th)) / (conf(r, th) * denom);
    });
    ScalarField g2 = sample_field(grid, rtht, [&](const Pt& pt) {
        return a2(pt[3]) / conf(pt[0], pt[1]);
    });
    ScalarField h3 = sample_field(grid, rtht, [&](const Pt& pt) {
        const double r = pt[0], th = pt[1];
        const double rphi2 = p.prolate ? r * r : (r * r + rd2);
        return a2(pt[3]) * rphi2 * std::sin(th) * std::sin(th) / conf(r, th);
    });
    ScalarField h4 =
        sample_field(grid, mask_of(Ax::X1), [&](const Pt& pt) { return -B(pt[0]); });
    std::array<ScalarField, 6> h = {h3, h4, ScalarField(grid, 1.0), ScalarField(grid, 1.0),
                                    ScalarField(grid, 1.0), ScalarField(grid, -1.0)};
    return SMetric(grid, cfg, std::move(g1), std::move(g2), std::move(h), trivial_nrows(grid));
}

SMetric build_flrw(const FlrwSeed& p, const GridPtr& grid, ShellConfig cfg) {
    if (cfg.kind != ShellKind::Cosmological)
        throw PrimeError("flrw seed: cosmological shell configuration required");
    ScalarField h3 = sample_field(grid, mask_of(Ax::Y4), [&](const Pt& pt) {
        return p.a0 * p.a0 * std::exp(2.0 * p.H * pt[3]);
    });
    std::array<ScalarField, 6> h = {h3, ScalarField(grid, -1.0), ScalarField(grid, 1.0),
                                    ScalarField(grid, 1.0), ScalarField(grid, 1.0),
                                    ScalarField(grid, -1.0)};
    return SMetric(grid, cfg, ScalarField(grid, 1.0), ScalarField(grid, 1.0), std::move(h),
                   trivial_nrows(grid));
}

}  // namespace

std::string PrimeMetricSpec::family_name() const {
    struct V {
        std::string operator()(const FlatPrime&) const { return "flat"; }
        std::string operator()(const NewKdS&) const { return "new_kds"; }
        std::string operator()(const EbWormhole&) const { return "eb_wormhole"; }
        std::string operator()(const BlackTorus&) const { return "black_torus"; }
        std::string operator()(const SpheroidVoid&) const { return "spheroid_void"; }
        std::string operator()(const FlrwSeed&) const { return "flrw"; }
    };
    return std::visit(V{}, family);
}

SMetric prime_metric(const PrimeMetricSpec& spec, const GridPtr& grid) {
    ShellConfig cfg;
    cfg.fiber_label = spec.fiber_label;
    if (std::holds_alternative<SpheroidVoid>(spec.family) ||
        std::holds_alternative<FlrwSeed>(spec.family))
        cfg.kind = ShellKind::Cosmological;
    struct V {
        const GridPtr& grid;
        ShellConfig cfg;
        SMetric operator()(const FlatPrime&) const { return flat_metric(grid, cfg); }
        SMetric operator()(const NewKdS& p) const { return build_kds(p, grid, cfg); }
        SMetric operator()(const EbWormhole& p) const { return build_wormhole(p, grid, cfg); }
        SMetric operator()(const BlackTorus& p) const { return build_torus(p, grid, cfg); }
        SMetric operator()(const SpheroidVoid& p) const { return build_void(p, grid, cfg); }
        SMetric operator()(const FlrwSeed& p) const { return build_flrw(p, grid, cfg); }
    };
    return std::visit(V{grid, cfg}, spec.family);
}

std::pair<double, double> kds_mass_bounds(double a, double Lambda0) {
    if (Lambda0 <= 0) throw PrimeError("kds_mass_bounds: requires Lambda0 > 0");
    const double q = 4.0 * Lambda0 * a * a;
    if (q > 1.0) throw PrimeError("kds_mass_bounds: requires 4 Lambda0 a^2 <= 1");
    const double base = 1.0 + 12.0 * Lambda0 * a * a;
    const double swing = std::pow(1.0 - q, 1.5);
    const double mm = std::sqrt((base - swing) / (18.0 * Lambda0));
    const double mp = std::sqrt((base + swing) / (18.0 * Lambda0));
    return {mm, mp};
}

double kds_scalar_curvature(double r, double theta, double Lambda0, double a) {
    if (r <= 0) throw PrimeError("kds_scalar_curvature: requires r > 0");
    const double rho2 = r * r + a * a * std::cos(theta) * std::cos(theta);
    return 4.0 * Lambda0 * r * r / rho2;
}

std::vector<std::string> prime_family_names() {
    return {"flat", "new_kds", "eb_wormhole", "black_torus", "spheroid_void", "flrw"};
}

}  // namespace afcdm
