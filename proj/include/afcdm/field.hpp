#pragma once
// Dependency-compressed scalar fields and the finite-difference / quadrature
// tool set: 4th-order central derivatives (2nd-order one-sided at the
// boundaries), cumulative trapezoid integrals anchored at the axis lower
// bound, and trapezoid quadrature over sub-regions. Fields are immutable
// value types; every operation returns a new field.

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "afcdm/grid.hpp"

namespace afcdm {

class FieldError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ScalarField {
  public:
    ScalarField() = default;
    // constant field (deps empty)
    ScalarField(GridPtr grid, double value);
    ScalarField(GridPtr grid, DepMask deps, std::vector<double> samples);

    const GridPtr& grid() const { return grid_; }
    DepMask deps() const { return deps_; }
    const std::vector<double>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }

    // dep axes in canonical order
    std::vector<Ax> dep_axes() const;
    // value at a full multi-index (per-axis node indices; non-dep entries ignored)
    double at(const std::array<int, kMaxAxes>& idx) const;
    // nearest-node evaluation at a coordinate point
    double at_point(const std::array<double, kMaxAxes>& pt) const;

    bool all_finite() const;

  private:
    GridPtr grid_;
    DepMask deps_ = 0;
    std::vector<double> samples_;
};

// Samples fn over the subgrid spanned by deps. fn receives the coordinate
// array (non-dep axes at their lower bounds). Throws FieldError naming the
// node if fn returns a non-finite value.
ScalarField sample_field(const GridPtr& grid, DepMask deps,
                         const std::function<double(const std::array<double, kMaxAxes>&)>& fn);

// arithmetic with dependency-union broadcasting
ScalarField add(const ScalarField& a, const ScalarField& b);
ScalarField sub(const ScalarField& a, const ScalarField& b);
ScalarField mul(const ScalarField& a, const ScalarField& b);
ScalarField div(const ScalarField& a, const ScalarField& b);
ScalarField scale_add(const ScalarField& a, double s, double t);  // a*s + t
ScalarField map(const ScalarField& a, const std::function<double(double)>& f);

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) { return add(a, b); }
inline ScalarField operator-(const ScalarField& a, const ScalarField& b) { return sub(a, b); }
inline ScalarField operator*(const ScalarField& a, const ScalarField& b) { return mul(a, b); }
inline ScalarField operator/(const ScalarField& a, const ScalarField& b) { return div(a, b); }
inline ScalarField operator*(double s, const ScalarField& a) { return scale_add(a, s, 0.0); }
inline ScalarField operator-(const ScalarField& a) { return scale_add(a, -1.0, 0.0); }

// d^order/d(axis)^order, order in {1,2,3}; a field constant along axis
// differentiates to the zero field (same deps).
ScalarField partial(const ScalarField& f, Ax axis, int order = 1);

// cumulative trapezoid along axis, anchored at the axis lower bound
// (result(lo) = 0); result gains axis as a dependency.
ScalarField cumint(const ScalarField& f, Ax axis);

// Per-axis sub-bounds for quadrature; absent axes integrate over their full
// extent. Bounds snap to the nearest grid nodes.
struct Region {
    std::array<std::optional<std::pair<double, double>>, kMaxAxes> bounds{};
    Region& set(Ax a, double lo, double hi) {
        bounds[static_cast<int>(a)] = {lo, hi};
        return *this;
    }
};

// Composite trapezoid over all present axes of the region; axes the field does
// not depend on contribute their length as a measure factor.
double quadrature(const ScalarField& f, const Region& region = {});

// Restriction of f to the lower bound of `axis` (the dependency is dropped);
// used to anchor integration constants.
ScalarField slice_at_lower(const ScalarField& f, Ax axis);

// Relabel two axes of equal extent (lo, hi, n) into each other, transposing
// the sample layout accordingly; the target grid swaps the axis ids. Used by
// the space/time duality map y3 <-> y4.
ScalarField transpose_axes(const ScalarField& f, Ax a, Ax b, const GridPtr& target_grid);

// max |f| / L2 norm over interior nodes, excluding margin(n) nodes at each end
// of every dependent axis; margin(n) = max(2, ceil(0.09*(n-1))).
int interior_margin(int n);
double interior_max_abs(const ScalarField& f);
double interior_l2(const ScalarField& f);
double max_abs(const ScalarField& f);

}  // namespace afcdm
