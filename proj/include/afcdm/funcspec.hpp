#pragma once
// Closed-form function catalog used to declare generating data in config
// files: constants, polynomials, trig / tanh / sech profiles, and sum/product
// compositions. Every spec knows which axes it references so dependency
// declarations can be validated.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "afcdm/field.hpp"

namespace afcdm {

class SpecError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FunctionSpec {
    enum class Kind { Constant, Poly, Trig, Tanh, Sech, Product, Sum };

    Kind kind = Kind::Constant;
    double value = 0.0;  // Constant

    // Poly: sum of coeff * prod axis^pow
    struct Monomial {
        double coeff = 0.0;
        std::array<int, kMaxAxes> pow{};
    };
    std::vector<Monomial> monomials;

    // Trig/Tanh/Sech single-axis profiles: amp * f(omega*(u - center)) + offset
    // (Trig uses f = sin with `phase` added inside: amp*sin(omega*u + phase) + offset)
    Ax axis = Ax::X1;
    double amp = 0.0, omega = 1.0, phase = 0.0, center = 0.0, offset = 0.0;

    std::vector<FunctionSpec> children;  // Product / Sum

    double eval(const std::array<double, kMaxAxes>& pt) const;
    DepMask referenced_axes() const;
    std::string to_string() const;

    static FunctionSpec constant(double c);
    static FunctionSpec monomial(double coeff, std::initializer_list<std::pair<Ax, int>> powers);
    static FunctionSpec trig(double amp, Ax axis, double omega, double phase, double offset);
    static FunctionSpec tanh_profile(double amp, Ax axis, double k, double center, double offset);
    static FunctionSpec sech_profile(double amp, Ax axis, double k, double center, double offset);
    static FunctionSpec product(std::vector<FunctionSpec> parts);
    static FunctionSpec sum(std::vector<FunctionSpec> parts);

    // Parse the config syntax, e.g.
    //   const 1.5
    //   poly 1 + 0.05 x1 y3 + 0.04 y3^2
    //   trig amp=0.02 axis=y3 omega=1.3 phase=0.2 offset=1
    //   tanh amp=0.01 axis=y3 k=1 center=0.5 offset=1
    //   sum (poly 1 + 0.3 y3) (product (tanh ...) (poly 1 + 0.1 x1))
    static FunctionSpec parse(const std::string& text);
};

// Evaluate on the grid restricted to deps; axes referenced by the spec must be
// contained in deps (otherwise the field would not be constant along the
// remaining axes).
ScalarField eval_on_grid(const FunctionSpec& f, const GridPtr& grid, DepMask deps);

}  // namespace afcdm
