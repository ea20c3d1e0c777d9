#pragma once
// Catalog of prime (seed) s-metrics: the rotating Kerr-de Sitter variant with
// warped curvature, Ellis-Bronnikov wormholes, AdS black torus, prolate/oblate
// spheroidal void cosmology, an adapted-frame FLRW-type seed, and flat space.
// Coordinate degeneracies (poles, horizons, axis r=0) must be excluded by the
// sampling box; violating boxes are hard errors.

#include <optional>
#include <string>
#include <variant>

#include "afcdm/smetric.hpp"

namespace afcdm {

class PrimeError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Base coordinates (x1,x2,y3,y4) = (r, phi, theta, t).
struct NewKdS {
    double M = 1.0;
    double a = 0.0;        // J/M
    double Lambda0 = 0.0;  // cosmological constant (>= 0)
    // optional fiber copy with its own constants (double BH configuration);
    // absent => flat (+,-,+,-)-signed fiber shells
    struct Fiber {
        double M, a, Lambda0;
    };
    std::optional<Fiber> fiber;
};

// (x1,x2,y3,y4) = (l, theta, phi, t); r(l) = (l^{2k} + b0^{2k})^{1/2k}.
struct EbWormhole {
    double b0 = 1.0;  // throat radius
    int k = 1;
    bool fiber_wormhole = false;  // false: flat fiber; true: v-wormhole copy
    double vb0 = 1.0;
    int vk = 1;
};

// (x1,x2,y3,y4) = (rt, x, y, t); f(rt) = -eps^2 b^2 - mu/rt - Lambda rt^2/3.
struct BlackTorus {
    double mu = 1.0;
    double Lambda = -3.0;  // AdS for a horizon-free positive f range
    double b = 0.0;        // sigma-model coupling
    double eps = 0.0;      // re-scaling coupling; 0 recovers the toroid vacuum
    double k1 = 1.0, k2 = 1.0;
    struct Fiber {
        double mu, Lambda, b, eps, k1, k2;
    };
    std::optional<Fiber> fiber;
};

struct SpheroidVoid {
    bool prolate = true;
    double r_focus = 0.1;    // focus distance r_diamond
    double sigma = 0.0;      // curvature parameter (varsigma): 1, 0, -1
    double xi = 0.1;         // void density contrast (< 1)
    double rho0 = 1.0;       // mean exterior density
    double rv = 1.0;         // void radius
    double rw = 0.3;         // wall thickness
    double B0 = 1.0, B1 = 1.0;
    double a0 = 1.0, H = 0.0;  // scale factor law a(t) = a0 * exp(H t)
};

struct FlrwSeed {
    double a0 = 1.0, H = 0.1;  // a(t) = a0 * exp(H t); h3 = a^2(t), h4 = -1
};

struct FlatPrime {};

struct PrimeMetricSpec {
    std::variant<FlatPrime, NewKdS, EbWormhole, BlackTorus, SpheroidVoid, FlrwSeed> family;
    FiberLabel fiber_label = FiberLabel::Velocity;
    std::string family_name() const;
};

SMetric prime_metric(const PrimeMetricSpec& spec, const GridPtr& grid);

// 18 Lambda0 M_pm^2 = 1 + 12 Lambda0 a^2 +- (1 - 4 Lambda0 a^2)^{3/2};
// requires Lambda0 > 0 and 4 Lambda0 a^2 <= 1.
std::pair<double, double> kds_mass_bounds(double a, double Lambda0);  // (M_minus, M_plus)

// warped scalar curvature R = 4 Lambda0 r^2 / (r^2 + a^2 cos^2 theta)
double kds_scalar_curvature(double r, double theta, double Lambda0, double a);

// names of the catalog families (for `catalog list`)
std::vector<std::string> prime_family_names();

}  // namespace afcdm
