#include "afcdm/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "afcdm/fieldio.hpp"

namespace afcdm {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::map<std::string, std::string> read_manifest(const fs::path& dir) {
    std::ifstream is(dir / "manifest.txt");
    if (!is) throw IoError("cannot open " + (dir / "manifest.txt").string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        };
        trim(key);
        trim(val);
        kv[key] = val;
    }
    return kv;
}

std::string field_ext(const fs::path& dir) {
    if (fs::exists(dir / "fields" / "g1.fld")) return "fld";
    if (fs::exists(dir / "fields" / "g1.csv")) return "csv";
    throw IoError("no coefficient fields found under " + dir.string());
}

}  // namespace

std::map<std::string, double> residual_map(const FieldEqResidualReport& rep) {
    std::map<std::string, double> r;
    r["residual.poisson.linf"] = rep.poisson.linf;
    r["residual.poisson.l2"] = rep.poisson.l2;
    for (const auto& sr : rep.shells) {
        const std::string p = "residual.shell" + std::to_string(sr.s) + ".";
        r[p + "fiber_eq.linf"] = sr.fiber_eq.linf;
        r[p + "fiber_eq.l2"] = sr.fiber_eq.l2;
        r[p + "diag.linf"] = sr.diag.linf;
        r[p + "diag.l2"] = sr.diag.l2;
        auto put = [&](const char* name, const std::vector<EqNorm>& v) {
            double linf = 0, l2 = 0;
            for (const EqNorm& e : v) {
                linf = std::max(linf, e.linf);
                l2 = std::max(l2, e.l2);
            }
            r[p + name + std::string(".linf")] = linf;
            r[p + name + std::string(".l2")] = l2;
        };
        put("w_eq", sr.w_eq);
        put("n_eq", sr.n_eq);
        put("ricci_mixed_F", sr.ricci_F);
        put("ricci_mixed_P", sr.ricci_P);
    }
    return r;
}

void write_solution(const fs::path& dir, const Solution& sol,
                    const FieldEqResidualReport& residuals, const std::string& ext) {
    fs::create_directories(dir / "fields");
    const SMetric& m = sol.metric;
    const Grid& g = *m.grid();
    std::ofstream os(dir / "manifest.txt");
    if (!os) throw IoError("cannot write manifest under " + dir.string());
    os << "format = afcdm-solution-1\n";
    os << "kind = "
       << (m.config().kind == ShellKind::QuasiStationary ? "quasi_stationary" : "cosmological")
       << "\n";
    os << "fiber_label = "
       << (m.config().fiber_label == FiberLabel::Velocity ? "velocity" : "momentum") << "\n";
    os << "killing_pattern =";
    for (int s = 2; s <= 4; ++s) os << " shell" << s << ":fiber_slot" << m.config().fiber_slot(s);
    os << "\n";
    const bool momentum = m.config().fiber_label == FiberLabel::Momentum;
    for (Ax a : g.axes()) {
        const Axis& ax = g.axis(a);
        os << "axis." << axis_name(a, momentum) << " = " << fmt17(ax.lo) << ":" << fmt17(ax.hi)
           << ":" << ax.n << "\n";
    }
    os << "signature =";
    for (int sig : m.signature()) os << " " << (sig > 0 ? "+" : "-");
    os << "\n";
    for (const auto& [k, v] : sol.provenance) os << "provenance." << k << " = " << v << "\n";
    for (const auto& [k, v] : residual_map(residuals)) os << k << " = " << fmt17(v) << "\n";
    os.close();

    auto wf = [&](const std::string& name, const ScalarField& f) {
        write_field(dir / "fields" / (name + "." + ext), f);
    };
    wf("g1", m.g(1));
    wf("g2", m.g(2));
    for (int slot = 3; slot <= 8; ++slot) wf("h" + std::to_string(slot), m.h(slot));
    for (int slot = 3; slot <= 8; ++slot) {
        const NRow& row = m.nrow(slot);
        for (std::size_t k = 0; k < row.coef.size(); ++k)
            wf("n_" + std::to_string(slot) + "_" + std::to_string(k + 1), row.coef[k]);
    }
    wf("psi", sol.psi);
    wf("j1", sol.j1);
    for (int s = 2; s <= 4; ++s) wf("j" + std::to_string(s), sol.sources[s - 2]);
}

Solution read_solution(const fs::path& dir) {
    const auto kv = read_manifest(dir);
    const std::string ext = field_ext(dir);
    auto rf = [&](const std::string& name) { return read_field(dir / "fields" / (name + "." + ext)); };
    ShellConfig cfg;
    if (auto it = kv.find("kind"); it != kv.end() && it->second == "cosmological")
        cfg.kind = ShellKind::Cosmological;
    if (auto it = kv.find("fiber_label"); it != kv.end() && it->second == "momentum")
        cfg.fiber_label = FiberLabel::Momentum;
    ScalarField g1 = rf("g1"), g2 = rf("g2");
    const GridPtr grid = g1.grid();
    std::array<ScalarField, 6> h;
    for (int slot = 3; slot <= 8; ++slot) h[slot - 3] = rf("h" + std::to_string(slot));
    std::array<NRow, 6> rows;
    for (int s = 2; s <= 4; ++s)
        for (int slot : {2 * s - 1, 2 * s})
            for (int k = 1; k <= 2 * s - 2; ++k)
                rows[slot - 3].coef.push_back(
                    rf("n_" + std::to_string(slot) + "_" + std::to_string(k)));
    Solution sol{SMetric(grid, cfg, std::move(g1), std::move(g2), std::move(h), std::move(rows)),
                 rf("psi"),
                 rf("j1"),
                 {rf("j2"), rf("j3"), rf("j4")},
                 {}};
    for (const auto& [k, v] : kv)
        if (k.rfind("provenance.", 0) == 0) sol.provenance[k.substr(11)] = v;
    return sol;
}

std::map<std::string, double> recorded_residuals(const fs::path& dir) {
    const auto kv = read_manifest(dir);
    std::map<std::string, double> out;
    for (const auto& [k, v] : kv)
        if (k.rfind("residual.", 0) == 0) out[k] = std::stod(v);
    return out;
}

void export_solution(const fs::path& dir, const std::string& format) {
    if (format != "csv" && format != "bin") throw IoError("export format must be csv or bin");
    if (!fs::exists(dir / "manifest.txt")) throw IoError("not a solution directory: " + dir.string());
    const std::string src_ext = field_ext(dir);
    const std::string dst_ext = format == "csv" ? "csv" : "fld";
    if (src_ext == dst_ext) return;
    for (const auto& entry : fs::directory_iterator(dir / "fields")) {
        const fs::path p = entry.path();
        if (p.extension() == std::string(".") + src_ext) {
            ScalarField f = read_field(p);
            fs::path q = p;
            q.replace_extension("." + dst_ext);
            write_field(q, f);
        }
    }
}

}  // namespace afcdm
