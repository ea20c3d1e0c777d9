// Command-line front end: generate / verify / thermo / catalog / export.
// Exit codes: 0 success, 1 verification or numerical failure, 2 configuration
// or domain error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "afcdm/config.hpp"
#include "afcdm/connection.hpp"
#include "afcdm/curvature.hpp"
#include "afcdm/fieldio.hpp"
#include "afcdm/generator.hpp"
#include "afcdm/kernels.hpp"
#include "afcdm/manifest.hpp"
#include "afcdm/prime.hpp"
#include "afcdm/thermo.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct TauSpec {
    double lo = 0, hi = 0;
    int n = 0;
};

TauSpec parse_tau(const std::string& s) {
    TauSpec t;
    if (std::sscanf(s.c_str(), "%lf:%lf:%d", &t.lo, &t.hi, &t.n) != 3 || t.n < 1 || t.lo <= 0)
        throw afcdm::ConfigError("--tau needs lo:hi:n with lo > 0");
    return t;
}

// lambda spec: a constant, "linear:a:b" (a + b*tau) or "exp:a:r" (a e^{r tau})
std::vector<double> eval_lambda(const std::string& s, const std::vector<double>& tau) {
    std::vector<double> out;
    double a = 0, b = 0;
    if (std::sscanf(s.c_str(), "linear:%lf:%lf", &a, &b) == 2) {
        for (double t : tau) out.push_back(a + b * t);
    } else if (std::sscanf(s.c_str(), "exp:%lf:%lf", &a, &b) == 2) {
        for (double t : tau) out.push_back(a * std::exp(b * t));
    } else {
        try {
            std::size_t pos = 0;
            a = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
        } catch (const std::logic_error&) {
            throw afcdm::ConfigError("bad lambda spec '" + s + "'");
        }
        out.assign(tau.size(), a);
    }
    return out;
}

json norms_json(const afcdm::FieldEqResidualReport& rep) {
    json j;
    for (const auto& [k, v] : afcdm::residual_map(rep)) j[k] = v;
    return j;
}

int cmd_generate(const std::string& config_path, const std::string& out_dir,
                 const std::string& format, int threads) {
    const afcdm::RunConfig rc = afcdm::parse_config(config_path);
    const afcdm::GridPtr grid = rc.make_grid_ptr();
    std::optional<afcdm::SMetric> prime;
    if (rc.prime) prime.emplace(afcdm::prime_metric(*rc.prime, grid));

    std::vector<double> taus;
    if (rc.tau)
        for (int i = 0; i < rc.tau->grid_def.n; ++i) taus.push_back(rc.tau->grid_def.coord(i));
    else
        taus.push_back(0.0);

    auto run_slice = [&](std::size_t k, const fs::path& dir) {
        std::array<double, 3> scale = {1.0, 1.0, 1.0};
        if (rc.tau)
            for (int s = 0; s < 3; ++s) scale[s] = rc.tau->source_profile[s].at(taus[k]);
        afcdm::GeneratingData gd =
            rc.instantiate(grid, scale, prime ? &*prime : nullptr);
        afcdm::SMetric m = afcdm::generate(gd);
        const afcdm::FieldEqResidualReport rep = afcdm::field_equation_residuals(m, gd);
        afcdm::Solution sol{std::move(m), gd.psi, gd.j1,
                            {gd.shells[0].source, gd.shells[1].source, gd.shells[2].source},
                            {}};
        sol.provenance["config"] = fs::absolute(config_path).string();
        sol.provenance["kernels"] = afcdm::kernels::backend_name();
        sol.provenance["tolerance"] = std::to_string(rc.tolerance);
        if (rc.tau) sol.provenance["tau"] = std::to_string(taus[k]);
        if (rc.prime) sol.provenance["prime_family"] = rc.prime->family_name();
        afcdm::write_solution(dir, sol, rep, format == "csv" ? "csv" : "fld");
        return rep.max_all();
    };

    fs::create_directories(out_dir);
    double worst = 0.0;
    if (!rc.tau) {
        worst = run_slice(0, out_dir);
    } else {
        std::ofstream fam(fs::path(out_dir) / "family.txt");
        fam << "format = afcdm-family-1\nslices = " << taus.size() << "\n";
        for (std::size_t k = 0; k < taus.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof(name), "tau_%03zu", k);
            fam << name << " = " << taus[k] << "\n";
        }
        fam.close();
        // tau slices are independent; spread them over the worker pool
        std::vector<std::future<double>> futs;
        const int width = std::max(1, threads);
        for (std::size_t k = 0; k < taus.size();) {
            futs.clear();
            for (int w = 0; w < width && k + w < taus.size(); ++w) {
                char name[32];
                std::snprintf(name, sizeof(name), "tau_%03zu", k + w);
                fs::path dir = fs::path(out_dir) / name;
                futs.push_back(std::async(std::launch::async,
                                          [&, kk = k + w, dir]() { return run_slice(kk, dir); }));
            }
            for (auto& f : futs) worst = std::max(worst, f.get());
            k += futs.size();
        }
    }
    std::printf("generated %s (max residual %.3e, tolerance %.3e)\n", out_dir.c_str(), worst,
                rc.tolerance);
    return kExitOk;
}

int verify_one(const fs::path& dir, double tol, bool lc, bool require_lc, bool dump_connection,
               const std::string& report_format, json* out_json) {
    const afcdm::Solution sol = afcdm::read_solution(dir);
    const afcdm::FieldEqResidualReport rep =
        afcdm::field_equation_residuals(sol.metric, sol.psi, sol.j1, sol.sources);
    const auto norms = afcdm::residual_map(rep);
    // self-consistency against the manifest's recorded norms
    double max_drift = 0.0;
    for (const auto& [k, v] : afcdm::recorded_residuals(dir)) {
        auto it = norms.find(k);
        if (it != norms.end()) max_drift = std::max(max_drift, std::fabs(it->second - v));
    }
    bool pass = rep.max_all() <= tol;
    json j;
    j["dir"] = dir.string();
    j["max_residual"] = rep.max_all();
    j["tolerance"] = tol;
    j["norms"] = norms_json(rep);
    j["recorded_drift"] = max_drift;
    if (lc || require_lc) {
        const afcdm::LcResiduals lcr = afcdm::lc_residuals(sol.metric);
        j["lc_max_residual"] = lcr.max_all();
        for (const auto& sh : lcr.shells) {
            const std::string p = "shell" + std::to_string(sh.s);
            j["lc"][p] = {{"w_grad", sh.max_a}, {"h_partner", sh.max_b}, {"w_curl", sh.max_c},
                          {"n_fiber", sh.max_d}, {"n_curl", sh.max_e}};
        }
        if (require_lc && lcr.max_all() > tol) pass = false;
    }
    if (dump_connection) {
        const afcdm::DConnCoeffs dc = afcdm::canonical_dconnection(sol.metric);
        const fs::path cdir = dir / "connection";
        fs::create_directories(cdir);
        for (int s = 2; s <= 4; ++s) {
            const auto& sc = dc.shells[s - 2];
            const std::string tag = "s" + std::to_string(s) + "_";
            afcdm::write_field(cdir / (tag + "C_FFF.fld"), sc.C_FFF);
            afcdm::write_field(cdir / (tag + "C_FPP.fld"), sc.C_FPP);
            afcdm::write_field(cdir / (tag + "C_PFP.fld"), sc.C_PFP);
            for (std::size_t k = 0; k < sc.L_PPk.size(); ++k) {
                afcdm::write_field(cdir / (tag + "L_PPk" + std::to_string(k + 1) + ".fld"),
                                   sc.L_PPk[k]);
                afcdm::write_field(cdir / (tag + "L_FFk" + std::to_string(k + 1) + ".fld"),
                                   sc.L_FFk[k]);
                afcdm::write_field(cdir / (tag + "L_FPk" + std::to_string(k + 1) + ".fld"),
                                   sc.L_FPk[k]);
                afcdm::write_field(cdir / (tag + "L_PFk" + std::to_string(k + 1) + ".fld"),
                                   sc.L_PFk[k]);
            }
        }
    }
    j["pass"] = pass;
    if (out_json) {
        *out_json = j;
    } else if (report_format == "json") {
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("%s: max residual %.3e (tol %.3e) %s\n", dir.string().c_str(), rep.max_all(),
                    tol, pass ? "PASS" : "FAIL");
        if (lc || require_lc)
            std::printf("  LC residual %.3e%s\n", j["lc_max_residual"].get<double>(),
                        require_lc ? (pass ? " (required: ok)" : " (required: FAIL)") : "");
    }
    return pass ? kExitOk : kExitFail;
}

int cmd_verify(const std::string& dir_s, double tol, bool lc, bool require_lc,
               bool dump_connection, const std::string& report_format) {
    const fs::path dir(dir_s);
    if (!fs::exists(dir)) throw afcdm::ConfigError("no such solution directory: " + dir_s);
    std::vector<fs::path> dirs;
    if (fs::exists(dir / "family.txt")) {
        for (const auto& e : fs::directory_iterator(dir))
            if (e.is_directory() && e.path().filename().string().rfind("tau_", 0) == 0)
                dirs.push_back(e.path());
        std::sort(dirs.begin(), dirs.end());
    } else {
        dirs.push_back(dir);
    }
    int rcode = kExitOk;
    json all = json::array();
    for (const fs::path& d : dirs) {
        json j;
        const int r = verify_one(d, tol, lc, require_lc, dump_connection,
                                 report_format, report_format == "json" ? &j : nullptr);
        if (report_format == "json") all.push_back(j);
        rcode = std::max(rcode, r);
    }
    if (report_format == "json") std::printf("%s\n", all.dump(2).c_str());
    // write the report next to the solution
    std::ofstream rep(dir / (report_format == "json" ? "verify_report.json" : "verify_report.txt"));
    rep << (report_format == "json" ? all.dump(2) : std::string(rcode == 0 ? "PASS" : "FAIL"))
        << "\n";
    return rcode;
}

int cmd_thermo(const std::string& dir_s, const std::string& tau_s, const std::string& lh_s,
               const std::string& lv_s, bool four_d, bool source_weighted) {
    const fs::path dir(dir_s);
    if (!fs::exists(dir / "manifest.txt"))
        throw afcdm::ConfigError("not a solution directory: " + dir_s);
    const afcdm::Solution sol = afcdm::read_solution(dir);
    const TauSpec ts = parse_tau(tau_s);
    afcdm::ThermoConfig cfg;
    cfg.tau = afcdm::TauGrid{ts.lo, ts.hi, ts.n};
    std::vector<double> tau;
    for (int i = 0; i < ts.n; ++i) tau.push_back(cfg.tau.coord(i));
    cfg.lambda_h = eval_lambda(lh_s, tau);
    if (!four_d) {
        if (lv_s.empty()) throw afcdm::ConfigError("8-d thermodynamics needs --lambda-v");
        cfg.lambda_v = eval_lambda(lv_s, tau);
    }
    cfg.four_d = four_d;
    cfg.source_weighted = source_weighted;
    const afcdm::RicciCoeffs rc = afcdm::ricci_all(sol.metric);
    const afcdm::ThermoReport rep = afcdm::thermo_report(sol.metric, rc, cfg, &sol.j1);
    // CSV
    const fs::path csv = dir / "thermo.csv";
    std::FILE* fp = std::fopen(csv.string().c_str(), "w");
    if (!fp) throw afcdm::IoError("cannot write " + csv.string());
    std::fprintf(fp, "tau,V,lnZ,E,S,sigma\n");
    for (std::size_t i = 0; i < rep.tau.size(); ++i)
        std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", rep.tau[i], rep.V[i], rep.lnZ[i],
                     rep.E[i], rep.S[i], rep.sigma[i]);
    std::fclose(fp);
    // JSON summary
    json j;
    j["dir"] = dir_s;
    j["four_d"] = four_d;
    j["tau"] = rep.tau;
    j["V"] = rep.V;
    j["lnZ"] = rep.lnZ;
    j["E"] = rep.E;
    j["S"] = rep.S;
    j["sigma"] = rep.sigma;
    std::ofstream(dir / "thermo.json") << j.dump(2) << "\n";
    std::printf("wrote %s and thermo.json (V = %.12g)\n", csv.string().c_str(),
                rep.V.empty() ? 0.0 : rep.V[0]);
    return kExitOk;
}

int cmd_catalog() {
    std::printf("prime metric families:\n");
    for (const std::string& f : afcdm::prime_family_names()) std::printf("  %s\n", f.c_str());
    std::printf("generating function families:\n");
    for (const char* f : {"const", "poly", "trig", "tanh", "sech", "product", "sum"})
        std::printf("  %s\n", f);
    return kExitOk;
}

int cmd_export(const std::string& dir_s, const std::string& format) {
    const fs::path dir(dir_s);
    if (!fs::exists(dir)) throw afcdm::ConfigError("no such solution directory: " + dir_s);
    std::vector<fs::path> dirs;
    if (fs::exists(dir / "family.txt")) {
        for (const auto& e : fs::directory_iterator(dir))
            if (e.is_directory() && e.path().filename().string().rfind("tau_", 0) == 0)
                dirs.push_back(e.path());
    } else {
        dirs.push_back(dir);
    }
    for (const fs::path& d : dirs) afcdm::export_solution(d, format);
    std::printf("exported %s as %s\n", dir_s.c_str(), format.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"off-diagonal solution generator and verifier for geometric-flow-modified "
                 "Einstein equations (AFCDM)"};
    app.require_subcommand(1);

    std::string config_path, out_dir, sol_dir, format = "fld", report = "text";
    std::string tau_s, lh_s, lv_s;
    double tol = 1e-6;
    bool lc = false, require_lc = false, dump_conn = false, four_d = false, src_weighted = false;
    int threads = 1;

    CLI::App* gen = app.add_subcommand("generate", "generate a solution from a config file");
    gen->add_option("--config", config_path, "configuration file")->required();
    gen->add_option("--out", out_dir, "output solution directory")->required();
    gen->add_option("--format", format, "field format: fld | csv")
        ->check(CLI::IsMember({"fld", "csv"}));
    gen->add_option("--threads", threads, "worker threads for tau families");

    CLI::App* ver = app.add_subcommand("verify", "re-check field equation residuals");
    ver->add_option("solution", sol_dir, "solution directory")->required();
    ver->add_option("--tol", tol, "acceptance tolerance");
    ver->add_flag("--lc", lc, "also report Levi-Civita constraint residuals");
    ver->add_flag("--require-lc", require_lc, "fail unless the LC residuals pass the tolerance");
    ver->add_flag("--dump-connection", dump_conn, "write canonical connection coefficients");
    ver->add_option("--report", report, "report format: text | json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI::App* th = app.add_subcommand("thermo", "thermodynamic variables over a tau grid");
    th->add_option("solution", sol_dir, "solution directory")->required();
    th->add_option("--tau", tau_s, "tau grid lo:hi:n")->required();
    th->add_option("--lambda-h", lh_s, "running h-constant (number | linear:a:b | exp:a:r)")
        ->required();
    th->add_option("--lambda-v", lv_s, "running v-constant");
    th->add_flag("--4d", four_d, "base-projection (4-d) formulas");
    th->add_flag("--source-weighted", src_weighted, "multiply the measure by sqrt|J1|");

    CLI::App* cat = app.add_subcommand("catalog", "list catalog entries");
    cat->add_subcommand("list", "list prime metric and function families");

    CLI::App* exp = app.add_subcommand("export", "convert field files between binary and CSV");
    exp->add_option("solution", sol_dir, "solution directory")->required();
    exp->add_option("--format", format, "target format: csv | bin")->required()
        ->check(CLI::IsMember({"csv", "bin"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (gen->parsed()) return cmd_generate(config_path, out_dir, format, threads);
        if (ver->parsed()) return cmd_verify(sol_dir, tol, lc, require_lc, dump_conn, report);
        if (th->parsed()) return cmd_thermo(sol_dir, tau_s, lh_s, lv_s, four_d, src_weighted);
        if (cat->parsed()) return cmd_catalog();
        if (exp->parsed()) return cmd_export(sol_dir, format);
    } catch (const afcdm::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const afcdm::SpecError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const afcdm::AxisError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitConfig;
    } catch (const afcdm::PrimeError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitConfig;
    } catch (const afcdm::GenError& e) {
        std::fprintf(stderr, "generation error: %s\n", e.what());
        return kExitFail;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFail;
    }
    return kExitConfig;
}
