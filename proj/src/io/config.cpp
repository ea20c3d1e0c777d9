#include "afcdm/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "afcdm/solvers.hpp"

namespace afcdm {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

[[noreturn]] void die(const std::string& msg, int line = 0) {
    throw ConfigError(line > 0 ? "config line " + std::to_string(line) + ": " + msg : msg);
}

std::map<std::string, Section> read_sections(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path.string());
    std::map<std::string, Section> out;
    std::string line, section;
    int ln = 0;
    while (std::getline(is, line)) {
        ++ln;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') die("malformed section header", ln);
            section = trim(line.substr(1, line.size() - 2));
            out[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) die("expected key = value", ln);
        if (section.empty()) die("key outside any [section]", ln);
        const std::string key = trim(line.substr(0, eq));
        out[section][key] = Entry{trim(line.substr(eq + 1)), ln, false};
    }
    return out;
}

const Entry* find(const Section& s, const std::string& key) {
    auto it = s.find(key);
    if (it == s.end()) return nullptr;
    it->second.used = true;
    return &it->second;
}

double num(const Entry& e, const std::string& key) {
    try {
        return std::stod(e.value);
    } catch (const std::logic_error&) {
        die("key '" + key + "': not a number: " + e.value, e.line);
    }
}

FunctionSpec spec(const Entry& e, const std::string& key) {
    try {
        return FunctionSpec::parse(e.value);
    } catch (const SpecError& err) {
        die("key '" + key + "': " + err.what(), e.line);
    }
}

Axis parse_axis(Ax id, const Entry& e) {
    // lo:hi:n
    std::istringstream ss(e.value);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
        die("axis needs lo:hi:n", e.line);
    try {
        return Axis(id, std::stod(a), std::stod(b), std::stoi(c));
    } catch (const AxisError& err) {
        die(err.what(), e.line);
    } catch (const std::logic_error&) {
        die("axis needs numeric lo:hi:n", e.line);
    }
}

void check_all_used(const std::map<std::string, Section>& sections) {
    for (const auto& [sname, sec] : sections)
        for (const auto& [key, entry] : sec)
            if (!entry.used) die("unknown key '" + key + "' in section [" + sname + "]", entry.line);
}

ShellCfgEntry parse_shell(const Section& sec, int s) {
    ShellCfgEntry e;
    if (const Entry* m = find(sec, "mode")) {
        if (m->value == "psi")
            e.mode = ShellCfgEntry::Mode::Psi;
        else if (m->value == "phi_lambda")
            e.mode = ShellCfgEntry::Mode::PhiLambda;
        else if (m->value == "coeff")
            e.mode = ShellCfgEntry::Mode::Coeff;
        else if (m->value == "eta")
            e.mode = ShellCfgEntry::Mode::Eta;
        else
            die("shell mode must be psi | phi_lambda | coeff | eta", m->line);
    }
    const Entry* g = find(sec, "gen");
    if (!g) die("[shell" + std::to_string(s) + "] needs gen = <function>");
    e.gen = spec(*g, "gen");
    if (const Entry* d = find(sec, "deps")) {
        DepMask m = 0;
        std::istringstream ss(d->value);
        std::string w;
        while (ss >> w) m |= mask_of(axis_from_name(w));
        e.gen_deps = m;
    }
    if (const Entry* src = find(sec, "source")) e.source = spec(*src, "source");
    if (const Entry* l = find(sec, "lambda")) {
        e.lambda = num(*l, "lambda");
        if (e.lambda == 0.0 && e.mode == ShellCfgEntry::Mode::PhiLambda)
            die("phi_lambda mode requires a nonzero lambda (shell " + std::to_string(s) + ")",
                l->line);
    } else if (e.mode == ShellCfgEntry::Mode::PhiLambda) {
        die("[shell" + std::to_string(s) + "] phi_lambda mode needs lambda = <nonzero>");
    }
    if (const Entry* h = find(sec, "h0")) e.h0 = spec(*h, "h0");
    if (const Entry* a = find(sec, "psi2_anchor")) e.psi2_anchor = spec(*a, "psi2_anchor");
    for (int slot = 1; slot <= 2 * s - 2; ++slot) {
        const std::string base = axis_name(axis_of_slot(slot));
        if (const Entry* n1 = find(sec, "n1_" + base)) e.n1[slot] = spec(*n1, "n1_" + base);
        if (const Entry* n2 = find(sec, "n2_" + base)) e.n2[slot] = spec(*n2, "n2_" + base);
    }
    return e;
}

PrimeMetricSpec parse_prime(const Section& sec, FiberLabel label) {
    const Entry* fam = find(sec, "family");
    if (!fam) die("[prime] needs family = <name>");
    PrimeMetricSpec spec_out;
    spec_out.fiber_label = label;
    auto get = [&](const char* key, double dflt) {
        const Entry* e = find(sec, key);
        return e ? num(*e, key) : dflt;
    };
    if (fam->value == "flat") {
        spec_out.family = FlatPrime{};
    } else if (fam->value == "new_kds") {
        NewKdS p;
        p.M = get("M", 1.0);
        p.a = get("a", 0.0);
        p.Lambda0 = get("lambda0", 0.0);
        spec_out.family = p;
    } else if (fam->value == "eb_wormhole") {
        EbWormhole p;
        p.b0 = get("b0", 1.0);
        p.k = static_cast<int>(get("k", 1));
        p.fiber_wormhole = get("fiber_wormhole", 0) != 0;
        p.vb0 = get("vb0", p.b0);
        p.vk = static_cast<int>(get("vk", p.k));
        spec_out.family = p;
    } else if (fam->value == "black_torus") {
        BlackTorus p;
        p.mu = get("mu", 1.0);
        p.Lambda = get("lambda", -3.0);
        p.b = get("b", 0.0);
        p.eps = get("eps", 0.0);
        p.k1 = get("k1", 1.0);
        p.k2 = get("k2", 1.0);
        spec_out.family = p;
    } else if (fam->value == "spheroid_void") {
        SpheroidVoid p;
        p.prolate = get("prolate", 1) != 0;
        p.r_focus = get("r_focus", 0.1);
        p.sigma = get("sigma", 0.0);
        p.xi = get("xi", 0.1);
        p.rho0 = get("rho0", 1.0);
        p.rv = get("rv", 1.0);
        p.rw = get("rw", 0.3);
        p.B0 = get("B0", 1.0);
        p.B1 = get("B1", 1.0);
        p.a0 = get("a0", 1.0);
        p.H = get("H", 0.0);
        spec_out.family = p;
    } else if (fam->value == "flrw") {
        FlrwSeed p;
        p.a0 = get("a0", 1.0);
        p.H = get("H", 0.1);
        spec_out.family = p;
    } else {
        die("unknown prime family '" + fam->value + "'", fam->line);
    }
    return spec_out;
}

}  // namespace

RunConfig parse_config(const std::filesystem::path& path) {
    auto sections = read_sections(path);
    RunConfig rc;
    auto want = [&](const std::string& name) -> Section* {
        auto it = sections.find(name);
        return it == sections.end() ? nullptr : &it->second;
    };
    // validate section names
    for (const auto& [name, _] : sections)
        if (name != "grid" && name != "config" && name != "base" && name != "shell2" &&
            name != "shell3" && name != "shell4" && name != "prime" && name != "tau" &&
            name != "output")
            die("unknown section [" + name + "]");

    Section* gsec = want("grid");
    if (!gsec) die("missing [grid] section");
    for (int i = 0; i < kMaxAxes; ++i) {
        const Ax a = static_cast<Ax>(i);
        if (const Entry* e = find(*gsec, axis_name(a, false)))
            rc.axes.push_back(parse_axis(a, *e));
        else if (const Entry* em = find(*gsec, axis_name(a, true)))
            rc.axes.push_back(parse_axis(a, *em));
    }
    if (Section* csec = want("config")) {
        if (const Entry* k = find(*csec, "kind")) {
            if (k->value == "quasi_stationary")
                rc.config.kind = ShellKind::QuasiStationary;
            else if (k->value == "cosmological")
                rc.config.kind = ShellKind::Cosmological;
            else
                die("kind must be quasi_stationary or cosmological", k->line);
        }
        if (const Entry* f = find(*csec, "fiber")) {
            if (f->value == "velocity")
                rc.config.fiber_label = FiberLabel::Velocity;
            else if (f->value == "momentum")
                rc.config.fiber_label = FiberLabel::Momentum;
            else
                die("fiber must be velocity or momentum", f->line);
        }
    }
    Section* bsec = want("base");
    if (!bsec) die("missing [base] section");
    if (const Entry* p = find(*bsec, "psi")) {
        if (p->value == "solve")
            rc.psi_solve = true;
        else
            rc.psi = spec(*p, "psi");
    }
    if (const Entry* j = find(*bsec, "j1")) rc.j1 = spec(*j, "j1");
    for (int s = 2; s <= 4; ++s) {
        Section* ssec = want("shell" + std::to_string(s));
        if (!ssec) die("missing [shell" + std::to_string(s) + "] section");
        rc.shells[s - 2] = parse_shell(*ssec, s);
    }
    if (Section* psec = want("prime")) rc.prime = parse_prime(*psec, rc.config.fiber_label);
    if (Section* tsec = want("tau")) {
        TauFamilyCfg tf;
        const Entry* g = find(*tsec, "grid");
        if (!g) die("[tau] needs grid = lo:hi:n");
        std::istringstream ss(g->value);
        std::string a, b, c;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
            die("[tau] grid needs lo:hi:n", g->line);
        tf.grid_def = TauGrid{std::stod(a), std::stod(b), std::stoi(c)};
        if (tf.grid_def.n < 1) die("[tau] grid needs n >= 1", g->line);
        for (int s = 2; s <= 4; ++s) {
            if (const Entry* e = find(*tsec, "source_profile_shell" + std::to_string(s))) {
                std::istringstream ps(e->value);
                std::string kind;
                ps >> kind;
                TauFamilyCfg::Profile& pr = tf.source_profile[s - 2];
                if (kind == "linear") {
                    pr.kind = TauFamilyCfg::Profile::Kind::Linear;
                    ps >> pr.a >> pr.b;
                } else if (kind == "exp") {
                    pr.kind = TauFamilyCfg::Profile::Kind::Exp;
                    pr.a = 1.0;
                    ps >> pr.b;
                } else {
                    die("source profile must be 'linear a b' or 'exp rate'", e->line);
                }
            }
        }
        rc.tau = tf;
    }
    if (Section* osec = want("output")) {
        if (const Entry* t = find(*osec, "tolerance")) rc.tolerance = num(*t, "tolerance");
    }
    check_all_used(sections);
    // grid / Killing consistency: each shell's fiber axis must be present
    GridPtr grid = rc.make_grid_ptr();
    for (int s = 2; s <= 4; ++s)
        if (!grid->present(rc.config.fiber_axis(s)))
            die("grid is missing the fiber axis " + axis_name(rc.config.fiber_axis(s)) +
                " of shell " + std::to_string(s));
    if (rc.needs_prime() && !rc.prime) die("eta-mode shells require a [prime] section");
    return rc;
}

bool RunConfig::needs_prime() const {
    for (const auto& s : shells)
        if (s.mode == ShellCfgEntry::Mode::Eta) return true;
    return false;
}

GeneratingData RunConfig::instantiate(const GridPtr& grid, const std::array<double, 3>& tau_scale,
                                      const SMetric* prime_metric) const {
    GeneratingData gd;
    gd.grid = grid;
    gd.config = config;
    gd.j1 = eval_on_grid(j1, grid, j1.referenced_axes());
    if (psi_solve) {
        PoissonProblem pp;
        pp.grid = grid;
        pp.rhs = scale_add(gd.j1 + ScalarField(grid, 0.0), 2.0, 0.0);
        // broadcast to the full (x1,x2) lattice
        pp.rhs = pp.rhs + eval_on_grid(FunctionSpec::constant(0.0), grid,
                                       mask_of(Ax::X1) | mask_of(Ax::X2));
        gd.psi = solve_poisson2d(pp);
    } else {
        gd.psi = eval_on_grid(psi, grid, psi.referenced_axes());
    }
    for (int s = 2; s <= 4; ++s) {
        const ShellCfgEntry& e = shells[s - 2];
        ShellGen sg;
        const DepMask gdeps = e.gen_deps.value_or(e.gen.referenced_axes());
        const DepMask sdeps = e.source_deps.value_or(e.source.referenced_axes());
        sg.source = scale_add(eval_on_grid(e.source, grid, sdeps), tau_scale[s - 2], 0.0);
        sg.Lambda = e.lambda;
        sg.h0 = eval_on_grid(e.h0, grid, e.h0.referenced_axes());
        sg.psi2_anchor = eval_on_grid(e.psi2_anchor, grid, e.psi2_anchor.referenced_axes());
        switch (e.mode) {
            case ShellCfgEntry::Mode::Psi:
                sg.mode = ShellGen::Mode::Psi;
                sg.gen = eval_on_grid(e.gen, grid, gdeps);
                break;
            case ShellCfgEntry::Mode::PhiLambda:
                sg.mode = ShellGen::Mode::PhiLambda;
                sg.gen = eval_on_grid(e.gen, grid, gdeps);
                break;
            case ShellCfgEntry::Mode::Coeff:
                sg.mode = ShellGen::Mode::CoeffAsGenerator;
                sg.gen = eval_on_grid(e.gen, grid, gdeps);
                break;
            case ShellCfgEntry::Mode::Eta: {
                if (!prime_metric) throw ConfigError("eta mode needs the prime metric");
                sg.mode = ShellGen::Mode::CoeffAsGenerator;
                sg.gen = eval_on_grid(e.gen, grid, gdeps) * prime_metric->h_partner(s);
                break;
            }
        }
        const int nc = 2 * s - 2;
        sg.n1.assign(nc, ScalarField(grid, 0.0));
        sg.n2.assign(nc, ScalarField(grid, 0.0));
        for (const auto& [slot, fs] : e.n1)
            sg.n1[slot - 1] = eval_on_grid(fs, grid, fs.referenced_axes());
        for (const auto& [slot, fs] : e.n2)
            sg.n2[slot - 1] = eval_on_grid(fs, grid, fs.referenced_axes());
        gd.shells[s - 2] = std::move(sg);
    }
    return gd;
}

}  // namespace afcdm
