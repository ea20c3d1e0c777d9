#include "afcdm/grid.hpp"

#include <algorithm>
#include <cmath>

namespace afcdm {

std::string axis_name(Ax a, bool momentum) {
    static const char* names[] = {"x1", "x2", "y3", "y4", "v5", "v6", "v7", "v8"};
    static const char* mom[] = {"x1", "x2", "y3", "y4", "p5", "p6", "p7", "p8"};
    return (momentum ? mom : names)[static_cast<int>(a)];
}

Ax axis_from_name(const std::string& name) {
    for (int i = 0; i < kMaxAxes; ++i) {
        const Ax a = static_cast<Ax>(i);
        if (name == axis_name(a, false) || name == axis_name(a, true)) return a;
    }
    throw AxisError("unknown axis name: " + name);
}

Axis::Axis(Ax id_, double lo_, double hi_, int n_) : id(id_), lo(lo_), hi(hi_), n(n_) {
    if (!(hi > lo)) throw AxisError("axis " + axis_name(id) + ": hi must exceed lo");
    if (n < 9) throw AxisError("axis " + axis_name(id) + ": needs n >= 9 samples");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw AxisError("axis bounds must be finite");
}

int Axis::nearest(double x) const {
    const double h = spacing();
    const int i = static_cast<int>(std::lround((x - lo) / h));
    if (i < 0 || i >= n || std::fabs(x - coord(std::clamp(i, 0, n - 1))) > 0.5 * h + 1e-12 * (hi - lo))
        throw AxisError("coordinate " + std::to_string(x) + " outside axis " + axis_name(id));
    return i;
}

Grid::Grid(std::vector<Axis> axes) {
    for (const Axis& a : axes) {
        if (present(a.id)) throw AxisError("duplicate axis " + axis_name(a.id));
        slots_[static_cast<int>(a.id)] = a;
        present_ |= mask_of(a.id);
    }
    for (int i = 0; i < kMaxAxes; ++i)
        if (has(present_, static_cast<Ax>(i))) order_.push_back(static_cast<Ax>(i));
    naxes_ = static_cast<int>(order_.size());
    if (naxes_ == 0) throw AxisError("grid needs at least one axis");
}

const Axis& Grid::axis(Ax a) const {
    if (!present(a)) throw AxisError("axis " + axis_name(a) + " not present in grid");
    return slots_[static_cast<int>(a)];
}

bool Grid::operator==(const Grid& other) const {
    if (present_ != other.present_) return false;
    for (Ax a : order_) {
        const Axis &x = axis(a), &y = other.axis(a);
        if (x.lo != y.lo || x.hi != y.hi || x.n != y.n) return false;
    }
    return true;
}

GridPtr make_grid(std::vector<Axis> axes) { return std::make_shared<const Grid>(std::move(axes)); }

}  // namespace afcdm
