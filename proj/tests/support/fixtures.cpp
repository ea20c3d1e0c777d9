#include "fixtures.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace afcdm::fixtures {

std::string family_name(QsFamily f) {
    switch (f) {
        case QsFamily::Tanh: return "tanh";
        case QsFamily::Trig: return "trig";
        case QsFamily::Poly: return "poly";
    }
    return "?";
}

std::string qs_fixture_config(QsFamily f, int n) {
    std::ostringstream os;
    os << "[grid]\n";
    for (const char* ax : {"x1", "x2", "y3", "y4"}) os << ax << " = 0:1:" << n << "\n";
    os << "v5 = 0:1:" << n << "\nv6 = 0:1:9\nv7 = 0:1:" << n << "\nv8 = 0:1:9\n";
    os << "[config]\nkind = quasi_stationary\nfiber = velocity\n";
    // manufactured base pair: psi = 0.02 sin(1.1 x1 + 0.3) sin(0.9 x2 + 0.2),
    // j1 = -(1.1^2 + 0.9^2)/2 psi
    const char* psi =
        "product (trig amp=0.02 axis=x1 omega=1.1 phase=0.3 offset=0) "
        "(trig amp=1 axis=x2 omega=0.9 phase=0.2 offset=0)";
    os << "[base]\npsi = " << psi << "\n";
    os << "j1 = product (const -1.01) (" << psi << ")\n";
    struct ShellSpec {
        const char* fiber;
        std::string gen;
        std::string source;
    };
    auto gen_for = [&](const std::string& fiber, double slope, double amp, double k, double c,
                       const std::string& mod) {
        std::ostringstream g;
        switch (f) {
            case QsFamily::Tanh:
                g << "sum (poly 1 + " << slope << " " << fiber << ") (product (tanh amp=" << amp
                  << " axis=" << fiber << " k=" << k << " center=" << c << " offset=0) (" << mod
                  << "))";
                break;
            case QsFamily::Trig:
                g << "sum (poly 1 + " << slope << " " << fiber << ") (product (trig amp=" << amp
                  << " axis=" << fiber << " omega=" << 1.3 * k << " phase=" << c << " offset=0) ("
                  << mod << "))";
                break;
            case QsFamily::Poly:
                g << "poly 1 + " << slope << " " << fiber << " + " << 0.05 * k << " x1 " << fiber
                  << " + 0.04 " << fiber << "^2";
                break;
        }
        return g.str();
    };
    const ShellSpec shells[3] = {
        {"y3", gen_for("y3", 0.30, 0.010, 1.0, 0.5, "poly 1 + 0.1 x1"),
         "poly 1 + 0.1 x1 x2"},
        {"v5", gen_for("v5", 0.28, 0.009, 1.1, 0.4, "poly 1 + 0.08 x1"), "poly 1 + 0.1 x1"},
        {"v7", gen_for("v7", 0.26, 0.008, 0.9, 0.6, "poly 1 + 0.07 x2"),
         "sum (const 1) (poly -0.08 x2)"},
    };
    for (int s = 2; s <= 4; ++s) {
        const ShellSpec& sp = shells[s - 2];
        os << "[shell" << s << "]\nmode = psi\n";
        os << "gen = " << sp.gen << "\n";
        os << "source = " << sp.source << "\n";
        os << "h0 = const -1\n";
        os << "n1_x1 = const 0.2\nn2_x1 = const 0.5\n";
        os << "n1_x2 = const -0.1\nn2_x2 = const 0.3\n";
    }
    os << "[output]\ntolerance = 1e-6\n";
    return os.str();
}

namespace {

RunConfig parse_text(const std::string& text) {
    // parse_config consumes files; round-trip through a temp path
    const std::filesystem::path p =
        std::filesystem::temp_directory_path() /
        ("afcdm_fixture_" + std::to_string(std::hash<std::string>{}(text)) + ".cfg");
    std::ofstream os(p);
    os << text;
    os.close();
    RunConfig rc = parse_config(p);
    std::filesystem::remove(p);
    return rc;
}

}  // namespace

Fixture make_qs_fixture(QsFamily f, int n) {
    Fixture fx;
    fx.rc = parse_text(qs_fixture_config(f, n));
    fx.grid = fx.rc.make_grid_ptr();
    fx.gd = fx.rc.instantiate(fx.grid, {1.0, 1.0, 1.0}, nullptr);
    return fx;
}

Fixture make_linear_fixture(int n) {
    std::ostringstream os;
    os << "[grid]\n";
    for (const char* ax : {"x1", "x2", "y3", "y4"}) os << ax << " = 0:1:" << n << "\n";
    os << "v5 = 0:1:" << n << "\nv6 = 0:1:9\nv7 = 0:1:" << n << "\nv8 = 0:1:9\n";
    os << "[config]\nkind = quasi_stationary\n";
    os << "[base]\npsi = poly 0.01 x1 x2\nj1 = const 0\n";
    // Psi linear in the fiber with low-degree polynomial base modulation
    const char* fibers[3] = {"y3", "v5", "v7"};
    const double J[3] = {1.3, 1.1, 0.9};
    for (int s = 2; s <= 4; ++s) {
        os << "[shell" << s << "]\nmode = psi\n";
        os << "gen = poly 1 + 0.1 x1 + 0.3 " << fibers[s - 2] << " + 0.05 x2 " << fibers[s - 2]
           << "\n";
        os << "source = const " << J[s - 2] << "\n";
        os << "h0 = const -1\n";
        os << "n1_x1 = const 0.2\nn2_x1 = const 0.4\n";
    }
    os << "[output]\ntolerance = 1e-6\n";
    Fixture fx;
    fx.rc = parse_text(os.str());
    fx.grid = fx.rc.make_grid_ptr();
    fx.gd = fx.rc.instantiate(fx.grid, {1.0, 1.0, 1.0}, nullptr);
    // j1 consistent with psi = 0.01 x1 x2 (harmonic): zero already
    return fx;
}

GeneratingData dualize(const GeneratingData& qs) {
    GeneratingData cd;
    cd.grid = qs.grid;
    cd.config = qs.config;
    cd.config.kind = ShellKind::Cosmological;
    auto sw = [&](const ScalarField& f) { return transpose_axes(f, Ax::Y3, Ax::Y4, qs.grid); };
    cd.psi = sw(qs.psi);
    cd.j1 = sw(qs.j1);
    for (int i = 0; i < 3; ++i) {
        const ShellGen& a = qs.shells[i];
        ShellGen b;
        b.mode = a.mode;
        b.Lambda = a.Lambda;
        if (a.gen.grid()) b.gen = sw(a.gen);
        if (a.source.grid()) b.source = sw(a.source);
        if (a.h0.grid()) b.h0 = sw(a.h0);
        if (a.psi2_anchor.grid()) b.psi2_anchor = sw(a.psi2_anchor);
        for (const ScalarField& f : a.n1) b.n1.push_back(sw(f));
        for (const ScalarField& f : a.n2) b.n2.push_back(sw(f));
        // upper-shell integration functions indexed by lower coordinates: the
        // y3/y4 entries trade places under the relabeling
        if (b.n1.size() >= 4) {
            std::swap(b.n1[2], b.n1[3]);
            std::swap(b.n2[2], b.n2[3]);
        }
        cd.shells[i] = std::move(b);
    }
    return cd;
}

ScalarField slice_at_lo(const ScalarField& f, Ax axis) {
    if (!has(f.deps(), axis)) return f;
    const GridPtr& g = f.grid();
    const DepMask deps = f.deps() & ~mask_of(axis);
    const double lo = g->axis(axis).lo;
    return sample_field(g, deps, [&](std::array<double, kMaxAxes> pt) {
        pt[static_cast<int>(axis)] = lo;
        return f.at_point(pt);
    });
}

}  // namespace afcdm::fixtures
