#pragma once
// Shared generating-data fixtures for the generator tests and the acceptance
// suite. Amplitudes are calibrated so the interior residuals of the decoupled
// system sit below 1e-6 at n = 64 with clean second-order decay under grid
// doubling (gentle profiles; trapezoid error dominates).

#include <string>

#include "afcdm/config.hpp"
#include "afcdm/generator.hpp"

namespace afcdm::fixtures {

enum class QsFamily { Tanh, Trig, Poly };

std::string family_name(QsFamily f);

// config text for a quasi-stationary fixture with n samples per active axis
std::string qs_fixture_config(QsFamily f, int n);

struct Fixture {
    GridPtr grid;
    RunConfig rc;
    GeneratingData gd;
};

Fixture make_qs_fixture(QsFamily f, int n);

// linear-in-fiber Psi with constant sources: both nonlinear-symmetry routes
// are exact to rounding (used by the route-equivalence criterion)
Fixture make_linear_fixture(int n);

// cosmological dual of a quasi-stationary fixture: swap the y3/y4 roles of
// every shell-2 field (requires matching y3/y4 extents)
GeneratingData dualize(const GeneratingData& qs);

// slice of a field at the lower bound of `axis` (dependency dropped)
ScalarField slice_at_lo(const ScalarField& f, Ax axis);

}  // namespace afcdm::fixtures
