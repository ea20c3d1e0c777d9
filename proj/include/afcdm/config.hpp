#pragma once
// Plain-text run configuration: [section] headers with key = value lines.
// Unknown sections or keys are hard errors naming the offender. The grammar
// is documented in the README.

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>

#include "afcdm/funcspec.hpp"
#include "afcdm/generator.hpp"
#include "afcdm/prime.hpp"
#include "afcdm/thermo.hpp"

namespace afcdm {

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TauFamilyCfg {
    TauGrid grid_def;  // reuse thermo's TauGrid shape
    // per shell: J(tau) = J * (a + b*tau) or J * exp(rate*tau)
    struct Profile {
        enum class Kind { None, Linear, Exp } kind = Kind::None;
        double a = 1.0, b = 0.0;  // linear a + b*tau; exp uses b as the rate
        double at(double tau) const {
            switch (kind) {
                case Kind::Linear: return a + b * tau;
                case Kind::Exp: return a * std::exp(b * tau);
                default: return 1.0;
            }
        }
    };
    std::array<Profile, 3> source_profile;
};

struct ShellCfgEntry {
    enum class Mode { Psi, PhiLambda, Coeff, Eta } mode = Mode::Psi;
    FunctionSpec gen;  // Psi / Phi / coefficient / eta depending on mode
    std::optional<DepMask> gen_deps;
    FunctionSpec source = FunctionSpec::constant(1.0);
    std::optional<DepMask> source_deps;
    double lambda = 0.0;
    FunctionSpec h0 = FunctionSpec::constant(-1.0);
    FunctionSpec psi2_anchor = FunctionSpec::constant(1.0);
    std::map<int, FunctionSpec> n1, n2;  // keyed by lower-coordinate slot (1-based)
};

struct RunConfig {
    std::vector<Axis> axes;
    ShellConfig config;
    bool psi_solve = false;  // solve the base Poisson problem instead of sampling psi
    FunctionSpec psi = FunctionSpec::constant(0.0);
    FunctionSpec j1 = FunctionSpec::constant(0.0);
    std::array<ShellCfgEntry, 3> shells;
    std::optional<PrimeMetricSpec> prime;
    std::optional<TauFamilyCfg> tau;
    double tolerance = 1e-6;

    GridPtr make_grid_ptr() const { return make_grid(axes); }
    // instantiate generating data; tau_scale multiplies shell sources; eta-mode
    // shells require the prime metric
    GeneratingData instantiate(const GridPtr& grid, const std::array<double, 3>& tau_scale,
                               const SMetric* prime_metric) const;
    bool needs_prime() const;
};

RunConfig parse_config(const std::filesystem::path& path);

}  // namespace afcdm
