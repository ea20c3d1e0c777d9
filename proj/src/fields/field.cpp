#include "afcdm/field.hpp"

#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>

#include "afcdm/kernels.hpp"

namespace afcdm {

namespace {

struct Layout {
    std::vector<Ax> axes;          // dep axes, canonical order
    std::vector<int> shape;        // samples per axis
    std::vector<std::size_t> stride;  // row-major, last axis fastest
    std::size_t total = 1;
};

Layout layout_of(const Grid& g, DepMask deps) {
    Layout l;
    for (Ax a : g.axes())
        if (has(deps, a)) {
            l.axes.push_back(a);
            l.shape.push_back(g.axis(a).n);
        }
    l.stride.assign(l.axes.size(), 1);
    for (int i = static_cast<int>(l.axes.size()) - 2; i >= 0; --i)
        l.stride[i] = l.stride[i + 1] * l.shape[i + 1];
    for (int s : l.shape) l.total *= static_cast<std::size_t>(s);
    return l;
}

std::size_t stride_of(const Layout& l, Ax a) {
    for (std::size_t i = 0; i < l.axes.size(); ++i)
        if (l.axes[i] == a) return l.stride[i];
    return 0;
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (!a.grid() || !b.grid()) throw FieldError("operation on empty field");
    if (a.grid() != b.grid() && !(*a.grid() == *b.grid()))
        throw FieldError("fields live on different grids");
}

// odometer over the union layout applying a row functor
// fn(dst_off, a_off, b_off, len, sa, sb) for each innermost row
template <typename RowFn>
void for_rows(const Layout& u, const Layout& la, const Layout& lb, RowFn&& fn) {
    const int nd = static_cast<int>(u.axes.size());
    if (nd == 0) {
        fn(std::size_t{0}, std::size_t{0}, std::size_t{0}, std::size_t{1}, std::size_t{0},
           std::size_t{0});
        return;
    }
    std::vector<std::size_t> sa(nd), sb(nd);
    for (int i = 0; i < nd; ++i) {
        sa[i] = stride_of(la, u.axes[i]);
        sb[i] = stride_of(lb, u.axes[i]);
    }
    const std::size_t len = static_cast<std::size_t>(u.shape[nd - 1]);
    std::vector<int> idx(nd - 1, 0);
    for (;;) {
        std::size_t offd = 0, offa = 0, offb = 0;
        for (int i = 0; i < nd - 1; ++i) {
            offd += static_cast<std::size_t>(idx[i]) * u.stride[i];
            offa += static_cast<std::size_t>(idx[i]) * sa[i];
            offb += static_cast<std::size_t>(idx[i]) * sb[i];
        }
        fn(offd, offa, offb, len, sa[nd - 1], sb[nd - 1]);
        int k = nd - 2;
        while (k >= 0 && ++idx[k] == u.shape[k]) idx[k--] = 0;
        if (k < 0) break;
    }
}

enum class BinOp { Add, Sub, Mul, Div };

ScalarField binary(const ScalarField& a, const ScalarField& b, BinOp op) {
    require_same_grid(a, b);
    const Grid& g = *a.grid();
    const DepMask deps = a.deps() | b.deps();
    const Layout u = layout_of(g, deps), la = layout_of(g, a.deps()), lb = layout_of(g, b.deps());
    std::vector<double> out(u.total);
    const double* pa = a.samples().data();
    const double* pb = b.samples().data();
    const auto& K = kernels::active_table();
    for_rows(u, la, lb, [&](std::size_t od, std::size_t oa, std::size_t ob, std::size_t len,
                            std::size_t sa, std::size_t sb) {
        double* d = out.data() + od;
        const double* x = pa + oa;
        const double* y = pb + ob;
        if (sa == 1 && sb == 1) {
            switch (op) {
                case BinOp::Add: K.add(d, x, y, len); break;
                case BinOp::Sub: K.sub(d, x, y, len); break;
                case BinOp::Mul: K.mul(d, x, y, len); break;
                case BinOp::Div: K.div(d, x, y, len); break;
            }
        } else {
            for (std::size_t k = 0; k < len; ++k) {
                const double xv = x[k * sa], yv = y[k * sb];
                switch (op) {
                    case BinOp::Add: d[k] = xv + yv; break;
                    case BinOp::Sub: d[k] = xv - yv; break;
                    case BinOp::Mul: d[k] = xv * yv; break;
                    case BinOp::Div: d[k] = xv / yv; break;
                }
            }
        }
    });
    return ScalarField(a.grid(), deps, std::move(out));
}

// first/second/third derivative stencils on a contiguous line of length n,
// spacing h; interior via kernels, one-sided 2nd-order boundary rows by hand
void d1_line(double* out, const double* f, int n, double h) {
    const double c[5] = {1.0 / (12 * h), -8.0 / (12 * h), 0.0, 8.0 / (12 * h), -1.0 / (12 * h)};
    kernels::active_table().stencil5(out, f, c, static_cast<std::size_t>(n));
    out[0] = (-3 * f[0] + 4 * f[1] - f[2]) / (2 * h);
    out[1] = (f[2] - f[0]) / (2 * h);
    out[n - 2] = (f[n - 1] - f[n - 3]) / (2 * h);
    out[n - 1] = (3 * f[n - 1] - 4 * f[n - 2] + f[n - 3]) / (2 * h);
}

void d2_line(double* out, const double* f, int n, double h) {
    const double h2 = h * h;
    const double c[5] = {-1.0 / (12 * h2), 16.0 / (12 * h2), -30.0 / (12 * h2), 16.0 / (12 * h2),
                         -1.0 / (12 * h2)};
    kernels::active_table().stencil5(out, f, c, static_cast<std::size_t>(n));
    out[0] = (2 * f[0] - 5 * f[1] + 4 * f[2] - f[3]) / h2;
    out[1] = (f[0] - 2 * f[1] + f[2]) / h2;
    out[n - 2] = (f[n - 3] - 2 * f[n - 2] + f[n - 1]) / h2;
    out[n - 1] = (2 * f[n - 1] - 5 * f[n - 2] + 4 * f[n - 3] - f[n - 4]) / h2;
}

void d3_line(double* out, const double* f, int n, double h) {
    const double h3 = h * h * h;
    for (int i = 3; i <= n - 4; ++i)
        out[i] = (f[i - 3] - 8 * f[i - 2] + 13 * f[i - 1] - 13 * f[i + 1] + 8 * f[i + 2] -
                  f[i + 3]) /
                 (8 * h3);
    out[0] = (-5 * f[0] + 18 * f[1] - 24 * f[2] + 14 * f[3] - 3 * f[4]) / (2 * h3);
    out[1] = (-3 * f[0] + 10 * f[1] - 12 * f[2] + 6 * f[3] - f[4]) / (2 * h3);
    out[2] = (-f[0] + 2 * f[1] - 2 * f[3] + f[4]) / (2 * h3);
    out[n - 3] = (-f[n - 5] + 2 * f[n - 4] - 2 * f[n - 2] + f[n - 1]) / (2 * h3);
    out[n - 2] = (f[n - 5] - 6 * f[n - 4] + 12 * f[n - 3] - 10 * f[n - 2] + 3 * f[n - 1]) / (2 * h3);
    out[n - 1] = (3 * f[n - 5] - 14 * f[n - 4] + 24 * f[n - 3] - 18 * f[n - 2] + 5 * f[n - 1]) /
                 (2 * h3);
}

// apply a per-line transform along `axis` of a dep-compressed array
template <typename LineFn>
std::vector<double> apply_along(const Layout& l, const std::vector<double>& src, Ax axis,
                                LineFn&& line) {
    std::vector<double> out(src.size());
    int ai = -1;
    for (std::size_t i = 0; i < l.axes.size(); ++i)
        if (l.axes[i] == axis) ai = static_cast<int>(i);
    const int n = l.shape[ai];
    const std::size_t st = l.stride[ai];
    const std::size_t nlines = l.total / static_cast<std::size_t>(n);
    std::vector<double> fbuf(n), obuf(n);
    // enumerate line base offsets: iterate all indices with axis index = 0
    const int nd = static_cast<int>(l.axes.size());
    std::vector<int> idx(nd, 0);
    for (std::size_t ln = 0; ln < nlines; ++ln) {
        std::size_t base = 0;
        for (int i = 0; i < nd; ++i) base += static_cast<std::size_t>(idx[i]) * l.stride[i];
        if (st == 1) {
            line(out.data() + base, src.data() + base, n);
        } else {
            for (int k = 0; k < n; ++k) fbuf[k] = src[base + st * k];
            line(obuf.data(), fbuf.data(), n);
            for (int k = 0; k < n; ++k) out[base + st * k] = obuf[k];
        }
        int k = nd - 1;
        while (k >= 0) {
            if (k == ai) {
                --k;
                continue;
            }
            if (++idx[k] < l.shape[k]) break;
            idx[k--] = 0;
        }
        if (k < 0) break;
    }
    return out;
}

}  // namespace

ScalarField::ScalarField(GridPtr grid, double value)
    : grid_(std::move(grid)), deps_(0), samples_{value} {}

ScalarField::ScalarField(GridPtr grid, DepMask deps, std::vector<double> samples)
    : grid_(std::move(grid)), deps_(deps), samples_(std::move(samples)) {
    if (!grid_) throw FieldError("field needs a grid");
    if ((deps_ & ~grid_->present_mask()) != 0)
        throw FieldError("field depends on axes not present in the grid");
    const Layout l = layout_of(*grid_, deps_);
    if (samples_.size() != l.total)
        throw FieldError("sample count " + std::to_string(samples_.size()) +
                         " does not match dependency shape " + std::to_string(l.total));
}

std::vector<Ax> ScalarField::dep_axes() const {
    std::vector<Ax> r;
    if (!grid_) return r;
    for (Ax a : grid_->axes())
        if (has(deps_, a)) r.push_back(a);
    return r;
}

double ScalarField::at(const std::array<int, kMaxAxes>& idx) const {
    const Layout l = layout_of(*grid_, deps_);
    std::size_t off = 0;
    for (std::size_t i = 0; i < l.axes.size(); ++i)
        off += static_cast<std::size_t>(idx[static_cast<int>(l.axes[i])]) * l.stride[i];
    return samples_[off];
}

double ScalarField::at_point(const std::array<double, kMaxAxes>& pt) const {
    std::array<int, kMaxAxes> idx{};
    for (Ax a : dep_axes())
        idx[static_cast<int>(a)] = grid_->axis(a).nearest(pt[static_cast<int>(a)]);
    return at(idx);
}

bool ScalarField::all_finite() const {
    for (double v : samples_)
        if (!std::isfinite(v)) return false;
    return true;
}

ScalarField sample_field(const GridPtr& grid, DepMask deps,
                         const std::function<double(const std::array<double, kMaxAxes>&)>& fn) {
    const Layout l = layout_of(*grid, deps);
    std::vector<double> out(l.total);
    std::array<double, kMaxAxes> pt{};
    for (Ax a : grid->axes()) pt[static_cast<int>(a)] = grid->axis(a).lo;
    const int nd = static_cast<int>(l.axes.size());
    std::vector<int> idx(nd, 0);
    for (std::size_t off = 0; off < l.total; ++off) {
        for (int i = 0; i < nd; ++i)
            pt[static_cast<int>(l.axes[i])] = grid->axis(l.axes[i]).coord(idx[i]);
        const double v = fn(pt);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "non-finite value at node (";
            for (int i = 0; i < nd; ++i)
                os << axis_name(l.axes[i]) << "=" << pt[static_cast<int>(l.axes[i])]
                   << (i + 1 < nd ? ", " : "");
            os << ")";
            throw FieldError(os.str());
        }
        out[off] = v;
        int k = nd - 1;
        while (k >= 0 && ++idx[k] == l.shape[k]) idx[k--] = 0;
    }
    return ScalarField(grid, deps, std::move(out));
}

ScalarField add(const ScalarField& a, const ScalarField& b) { return binary(a, b, BinOp::Add); }
ScalarField sub(const ScalarField& a, const ScalarField& b) { return binary(a, b, BinOp::Sub); }
ScalarField mul(const ScalarField& a, const ScalarField& b) { return binary(a, b, BinOp::Mul); }
ScalarField div(const ScalarField& a, const ScalarField& b) { return binary(a, b, BinOp::Div); }

ScalarField scale_add(const ScalarField& a, double s, double t) {
    std::vector<double> out(a.size());
    kernels::active_table().scale_add(out.data(), a.samples().data(), s, t, a.size());
    return ScalarField(a.grid(), a.deps(), std::move(out));
}

ScalarField map(const ScalarField& a, const std::function<double(double)>& f) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a.samples()[i]);
    return ScalarField(a.grid(), a.deps(), std::move(out));
}

ScalarField partial(const ScalarField& f, Ax axis, int order) {
    if (order < 1 || order > 3) throw FieldError("unsupported derivative order");
    if (!f.grid()->present(axis)) throw FieldError("derivative axis not present in grid");
    if (!has(f.deps(), axis))
        return ScalarField(f.grid(), f.deps(), std::vector<double>(f.size(), 0.0));
    const Axis& ax = f.grid()->axis(axis);
    if (ax.n < 9) throw FieldError("derivative axis needs n >= 9");
    const Layout l = layout_of(*f.grid(), f.deps());
    const double h = ax.spacing();
    auto line = [&](double* o, const double* s, int n) {
        if (order == 1)
            d1_line(o, s, n, h);
        else if (order == 2)
            d2_line(o, s, n, h);
        else
            d3_line(o, s, n, h);
    };
    return ScalarField(f.grid(), f.deps(), apply_along(l, f.samples(), axis, line));
}

ScalarField cumint(const ScalarField& f, Ax axis) {
    if (!f.grid()->present(axis)) throw FieldError("integration axis not present in grid");
    const Axis& ax = f.grid()->axis(axis);
    const double h = ax.spacing();
    if (!has(f.deps(), axis)) {
        // constant along axis: integral is value * (coord - lo)
        ScalarField ramp = sample_field(
            f.grid(), mask_of(axis),
            [&](const std::array<double, kMaxAxes>& pt) { return pt[static_cast<int>(axis)] - ax.lo; });
        return mul(f, ramp);
    }
    const Layout l = layout_of(*f.grid(), f.deps());
    auto line = [&](double* o, const double* s, int n) {
        o[0] = 0.0;
        for (int k = 1; k < n; ++k) o[k] = o[k - 1] + 0.5 * h * (s[k - 1] + s[k]);
    };
    return ScalarField(f.grid(), f.deps(), apply_along(l, f.samples(), axis, line));
}

double quadrature(const ScalarField& f, const Region& region) {
    const Grid& g = *f.grid();
    double measure = 1.0;
    // snapped index ranges for dependent axes
    std::vector<Ax> daxes = f.dep_axes();
    std::vector<int> i0(daxes.size()), i1(daxes.size());
    for (Ax a : g.axes()) {
        const Axis& ax = g.axis(a);
        double lo = ax.lo, hi = ax.hi;
        if (region.bounds[static_cast<int>(a)]) {
            lo = region.bounds[static_cast<int>(a)]->first;
            hi = region.bounds[static_cast<int>(a)]->second;
            if (lo < ax.lo - 1e-12 || hi > ax.hi + 1e-12)
                throw FieldError("quadrature region exceeds grid bounds on axis " + axis_name(a));
        }
        if (!has(f.deps(), a)) {
            measure *= (hi - lo);
            continue;
        }
        for (std::size_t i = 0; i < daxes.size(); ++i)
            if (daxes[i] == a) {
                i0[i] = ax.nearest(lo);
                i1[i] = ax.nearest(hi);
                if (i1[i] <= i0[i]) throw FieldError("empty quadrature region on axis " + axis_name(a));
            }
    }
    if (measure == 0.0) return 0.0;
    const Layout l = layout_of(g, f.deps());
    // trapezoid weights per axis over [i0, i1]
    std::vector<std::vector<double>> w(daxes.size());
    for (std::size_t i = 0; i < daxes.size(); ++i) {
        const double h = g.axis(daxes[i]).spacing();
        w[i].assign(static_cast<std::size_t>(i1[i] - i0[i] + 1), h);
        w[i].front() = w[i].back() = 0.5 * h;
    }
    // Kahan accumulation over the sub-box
    double sum = 0.0, comp = 0.0;
    auto fold = [&](double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    const int nd = static_cast<int>(daxes.size());
    if (nd == 0) return f.samples()[0] * measure;
    std::vector<int> idx(nd, 0);
    for (;;) {
        std::size_t off = 0;
        double wt = 1.0;
        for (int i = 0; i < nd; ++i) {
            off += static_cast<std::size_t>(i0[i] + idx[i]) * l.stride[i];
            wt *= w[i][idx[i]];
        }
        fold(wt * f.samples()[off]);
        int k = nd - 1;
        while (k >= 0 && ++idx[k] == static_cast<int>(w[k].size())) idx[k--] = 0;
        if (k < 0) break;
    }
    return sum * measure;
}

ScalarField slice_at_lower(const ScalarField& f, Ax axis) {
    if (!has(f.deps(), axis)) return f;
    const Layout l = layout_of(*f.grid(), f.deps());
    const DepMask deps = f.deps() & ~mask_of(axis);
    const Layout lo = layout_of(*f.grid(), deps);
    std::vector<double> out(lo.total);
    const int nd = static_cast<int>(lo.axes.size());
    std::vector<int> idx(nd, 0);
    for (std::size_t off = 0; off < lo.total; ++off) {
        std::size_t src = 0;
        for (int i = 0; i < nd; ++i) src += static_cast<std::size_t>(idx[i]) * stride_of(l, lo.axes[i]);
        out[off] = f.samples()[src];  // axis index 0 contributes no offset
        int k = nd - 1;
        while (k >= 0 && ++idx[k] == lo.shape[k]) idx[k--] = 0;
    }
    return ScalarField(f.grid(), deps, std::move(out));
}

ScalarField transpose_axes(const ScalarField& f, Ax a, Ax b, const GridPtr& target_grid) {
    const Grid& g = *f.grid();
    const Axis &aa = g.axis(a), &ab = g.axis(b);
    if (aa.lo != ab.lo || aa.hi != ab.hi || aa.n != ab.n)
        throw FieldError("transpose_axes: axes must have identical extent");
    DepMask deps = f.deps();
    const bool had_a = has(deps, a), had_b = has(deps, b);
    DepMask tdeps = deps & ~(mask_of(a) | mask_of(b));
    if (had_a) tdeps |= mask_of(b);
    if (had_b) tdeps |= mask_of(a);
    const Layout src = layout_of(g, deps);
    const Layout dst = layout_of(*target_grid, tdeps);
    std::vector<double> out(dst.total);
    // walk the source layout; map each index to the swapped axis in the target
    const int nd = static_cast<int>(src.axes.size());
    std::vector<std::size_t> dst_stride(nd, 0);
    for (int i = 0; i < nd; ++i) {
        Ax ax = src.axes[i];
        if (ax == a)
            ax = b;
        else if (ax == b)
            ax = a;
        dst_stride[i] = stride_of(dst, ax);
    }
    std::vector<int> idx(nd, 0);
    for (std::size_t off = 0; off < src.total; ++off) {
        std::size_t doff = 0;
        for (int i = 0; i < nd; ++i) doff += static_cast<std::size_t>(idx[i]) * dst_stride[i];
        out[doff] = f.samples()[off];
        int k = nd - 1;
        while (k >= 0 && ++idx[k] == src.shape[k]) idx[k--] = 0;
    }
    return ScalarField(target_grid, tdeps, std::move(out));
}

int interior_margin(int n) {
    // the one-sided boundary stencils contaminate a fixed number of nodes per
    // stacked derivative pass (~2 per pass), so the margin never drops below 6
    // where the axis is long enough; short axes keep the minimal 2-node margin
    if (n < 17) return 2;
    const int m = static_cast<int>(std::ceil(0.09 * (n - 1)));
    return m < 6 ? 6 : m;
}

namespace {

template <typename Acc>
void interior_fold(const ScalarField& f, Acc&& acc) {
    const Layout l = layout_of(*f.grid(), f.deps());
    const int nd = static_cast<int>(l.axes.size());
    if (nd == 0) {
        acc(f.samples()[0]);
        return;
    }
    std::vector<int> lo(nd), hi(nd);
    for (int i = 0; i < nd; ++i) {
        const int m = interior_margin(l.shape[i]);
        lo[i] = m;
        hi[i] = l.shape[i] - 1 - m;
        if (hi[i] < lo[i]) throw FieldError("axis too short for interior norm");
    }
    std::vector<int> idx(lo);
    for (;;) {
        std::size_t off = 0;
        for (int i = 0; i < nd; ++i) off += static_cast<std::size_t>(idx[i]) * l.stride[i];
        acc(f.samples()[off]);
        int k = nd - 1;
        while (k >= 0 && ++idx[k] > hi[k]) idx[k] = lo[k], --k;
        if (k < 0) break;
    }
}

}  // namespace

double interior_max_abs(const ScalarField& f) {
    double m = 0.0;
    interior_fold(f, [&](double v) {
        const double x = std::fabs(v);
        if (x > m) m = x;
    });
    return m;
}

double interior_l2(const ScalarField& f) {
    double s = 0.0;
    std::size_t cnt = 0;
    interior_fold(f, [&](double v) {
        s += v * v;
        ++cnt;
    });
    return cnt ? std::sqrt(s / static_cast<double>(cnt)) : 0.0;
}

double max_abs(const ScalarField& f) {
    return kernels::active_table().max_abs(f.samples().data(), f.size());
}

}  // namespace afcdm
