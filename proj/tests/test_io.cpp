#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "afcdm/config.hpp"
#include "afcdm/fieldio.hpp"
#include "afcdm/manifest.hpp"
#include "support/fixtures.hpp"

using namespace afcdm;
namespace fs = std::filesystem;

namespace {

fs::path tmpdir(const char* tag) {
    fs::path p = fs::temp_directory_path() / (std::string("afcdm_test_") + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

ScalarField awkward_field() {
    auto g = make_grid({Axis(Ax::X1, -1.5, 2.5, 9), Axis(Ax::V5, 0.0, 0.125, 11)});
    return sample_field(g, mask_of(Ax::X1) | mask_of(Ax::V5),
                        [](const std::array<double, kMaxAxes>& p) {
                            return std::sin(1e3 * p[0]) * 1e-7 + p[4] / 3.0;
                        });
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("binary round trip is bit exact") {
    const fs::path dir = tmpdir("bin");
    ScalarField f = awkward_field();
    write_field_binary(dir / "f.fld", f);
    ScalarField g = read_field_binary(dir / "f.fld");
    CHECK(g.deps() == f.deps());
    CHECK(g.samples() == f.samples());
    CHECK(*g.grid() == *f.grid());
}

TEST_CASE("csv round trip is value exact (17 significant digits)") {
    const fs::path dir = tmpdir("csv");
    ScalarField f = awkward_field();
    write_field_csv(dir / "f.csv", f);
    ScalarField g = read_field_csv(dir / "f.csv");
    CHECK(g.samples() == f.samples());  // %.17g round-trips doubles exactly
}

TEST_CASE("truncated binary file is rejected") {
    const fs::path dir = tmpdir("trunc");
    ScalarField f = awkward_field();
    write_field_binary(dir / "f.fld", f);
    const auto size = fs::file_size(dir / "f.fld");
    fs::resize_file(dir / "f.fld", size - 16);
    CHECK_THROWS_AS(read_field_binary(dir / "f.fld"), IoError);
    std::ofstream(dir / "junk.fld") << "not a field";
    CHECK_THROWS_AS(read_field_binary(dir / "junk.fld"), IoError);
}

TEST_CASE("solution directory round trip preserves the metric and residual records") {
    fixtures::Fixture fx = fixtures::make_qs_fixture(fixtures::QsFamily::Poly, 17);
    SMetric m = generate_quasistationary(fx.gd);
    const FieldEqResidualReport rep = field_equation_residuals(m, fx.gd);
    Solution sol{m, fx.gd.psi, fx.gd.j1,
                 {fx.gd.shells[0].source, fx.gd.shells[1].source, fx.gd.shells[2].source},
                 {{"note", "unit-test"}}};
    const fs::path dir = tmpdir("sol");
    write_solution(dir, sol, rep);
    Solution back = read_solution(dir);
    CHECK(back.metric.h(4).samples() == m.h(4).samples());
    CHECK(back.metric.nrow(3).coef[0].samples() == m.nrow(3).coef[0].samples());
    CHECK(back.psi.samples() == fx.gd.psi.samples());
    CHECK(back.provenance.at("note") == "unit-test");
    // recorded residuals match a recomputation exactly (full-precision record)
    const auto recorded = recorded_residuals(dir);
    const auto fresh = residual_map(
        field_equation_residuals(back.metric, back.psi, back.j1, back.sources));
    for (const auto& [k, v] : recorded)
        CHECK(std::fabs(fresh.at(k) - v) <= 1e-12 * (std::fabs(v) + 1.0));
    // export to csv and back is lossless
    export_solution(dir, "csv");
    for (const auto& e : fs::directory_iterator(dir / "fields"))
        if (e.path().extension() == ".fld") fs::remove(e.path());
    Solution csvback = read_solution(dir);
    CHECK(csvback.metric.h(4).samples() == m.h(4).samples());
    export_solution(dir, "bin");
    Solution binback = read_solution(dir);
    CHECK(binback.metric.h(4).samples() == m.h(4).samples());
}

TEST_CASE("config parser: unknown keys and sections are named") {
    const fs::path dir = tmpdir("cfg");
    {
        std::ofstream os(dir / "bad_key.cfg");
        os << "[grid]\nx1 = 0:1:16\nx2 = 0:1:16\ny3 = 0:1:16\nv5 = 0:1:16\nv7 = 0:1:16\n"
           << "[base]\npsi = const 0\nj1 = const 0\n"
           << "[shell2]\ngen = poly 1 + 0.3 y3\nmistyped = 1\n"
           << "[shell3]\ngen = poly 1 + 0.3 v5\n[shell4]\ngen = poly 1 + 0.3 v7\n";
    }
    CHECK_THROWS_WITH_AS(parse_config(dir / "bad_key.cfg"), doctest::Contains("mistyped"),
                         ConfigError);
    {
        std::ofstream os(dir / "bad_sec.cfg");
        os << "[grid]\nx1 = 0:1:16\n[weird]\nx = 1\n";
    }
    CHECK_THROWS_WITH_AS(parse_config(dir / "bad_sec.cfg"), doctest::Contains("weird"),
                         ConfigError);
    {
        std::ofstream os(dir / "bad_lambda.cfg");
        os << "[grid]\nx1 = 0:1:16\nx2 = 0:1:16\ny3 = 0:1:16\nv5 = 0:1:16\nv7 = 0:1:16\n"
           << "[base]\npsi = const 0\nj1 = const 0\n"
           << "[shell2]\nmode = phi_lambda\ngen = poly 1 + 0.3 y3\nlambda = 0\n"
           << "[shell3]\ngen = poly 1 + 0.3 v5\n[shell4]\ngen = poly 1 + 0.3 v7\n";
    }
    CHECK_THROWS_WITH_AS(parse_config(dir / "bad_lambda.cfg"), doctest::Contains("lambda"),
                         ConfigError);
}

TEST_CASE("fixture configs parse and instantiate") {
    fixtures::Fixture fx = fixtures::make_qs_fixture(fixtures::QsFamily::Trig, 17);
    CHECK(fx.gd.shells[0].mode == ShellGen::Mode::Psi);
    CHECK(fx.gd.shells[0].source.all_finite());
    CHECK(fx.rc.tolerance == 1e-6);
}

}  // TEST_SUITE
