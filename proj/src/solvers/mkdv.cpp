#include <cmath>

#include "afcdm/solvers.hpp"

namespace afcdm {

ScalarField mkdv_profile(double k, const GridPtr& grid, Ax r_axis, Ax t_axis) {
    if (grid->axis(r_axis).n < 33) throw SolverError("mkdv: needs n >= 33 along the r-like axis");
    const double c = 2.0 * k * k * k;  // kink speed forced by the traveling-wave reduction
    return sample_field(grid, mask_of(r_axis) | mask_of(t_axis),
                        [&](const std::array<double, kMaxAxes>& pt) {
                            return k * std::tanh(k * pt[static_cast<int>(r_axis)] +
                                                 c * pt[static_cast<int>(t_axis)]);
                        });
}

ScalarField mkdv_residual(const ScalarField& eta, Ax r_axis, Ax t_axis) {
    const ScalarField et = partial(eta, t_axis);
    const ScalarField er = partial(eta, r_axis);
    const ScalarField errr = partial(eta, r_axis, 3);
    return et - 6.0 * (eta * eta * er) + errr;
}

}  // namespace afcdm
