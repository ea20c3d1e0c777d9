#pragma once
// Uniform tensor-product grids over the phase-space coordinates
// (x1,x2,y3,y4,v5..v8). Fields never materialize the full product; they store
// samples only over the axes they depend on (see field.hpp).

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace afcdm {

// Canonical coordinate slots. Slot numbers (1..8) match the shell structure:
// (x1,x2 | y3,y4 | v5,v6 | v7,v8).
enum class Ax : std::uint8_t { X1 = 0, X2, Y3, Y4, V5, V6, V7, V8 };

inline constexpr int kMaxAxes = 8;

inline int slot(Ax a) { return static_cast<int>(a) + 1; }
inline Ax axis_of_slot(int s) {
    if (s < 1 || s > 8) throw std::invalid_argument("axis slot out of range");
    return static_cast<Ax>(s - 1);
}

// Coordinate label; momentum=true relabels the fiber axes v5..v8 -> p5..p8
// (display only; all formulas are identical under the relabeling).
std::string axis_name(Ax a, bool momentum = false);
Ax axis_from_name(const std::string& name);

class AxisError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Axis {
    Ax id;
    double lo = 0.0;
    double hi = 1.0;
    int n = 0;

    Axis() : id(Ax::X1) {}
    Axis(Ax id_, double lo_, double hi_, int n_);

    double spacing() const { return (hi - lo) / (n - 1); }
    double coord(int i) const { return lo + spacing() * i; }
    // nearest node; throws if x is outside [lo,hi] beyond a half spacing
    int nearest(double x) const;
};

using DepMask = std::uint8_t;

inline DepMask mask_of(Ax a) { return static_cast<DepMask>(1u << static_cast<int>(a)); }
inline bool has(DepMask m, Ax a) { return (m & mask_of(a)) != 0; }

// Ordered set of axes restricted to the present ones. Immutable.
class Grid {
  public:
    explicit Grid(std::vector<Axis> axes);

    bool present(Ax a) const { return has(present_, a); }
    DepMask present_mask() const { return present_; }
    const Axis& axis(Ax a) const;
    int naxes() const { return naxes_; }
    const std::vector<Ax>& axes() const { return order_; }

    bool operator==(const Grid& other) const;

  private:
    std::array<Axis, kMaxAxes> slots_{};
    std::vector<Ax> order_;
    DepMask present_ = 0;
    int naxes_ = 0;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(std::vector<Axis> axes);

}  // namespace afcdm
