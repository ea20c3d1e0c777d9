#include "afcdm/funcspec.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace afcdm {

double FunctionSpec::eval(const std::array<double, kMaxAxes>& pt) const {
    switch (kind) {
        case Kind::Constant:
            return value;
        case Kind::Poly: {
            double s = 0.0;
            for (const Monomial& m : monomials) {
                double t = m.coeff;
                for (int i = 0; i < kMaxAxes; ++i)
                    for (int p = 0; p < m.pow[i]; ++p) t *= pt[i];
                s += t;
            }
            return s;
        }
        case Kind::Trig:
            return amp * std::sin(omega * pt[static_cast<int>(axis)] + phase) + offset;
        case Kind::Tanh:
            return amp * std::tanh(omega * (pt[static_cast<int>(axis)] - center)) + offset;
        case Kind::Sech: {
            const double u = omega * (pt[static_cast<int>(axis)] - center);
            return amp / std::cosh(u) + offset;
        }
        case Kind::Product: {
            double s = 1.0;
            for (const FunctionSpec& c : children) s *= c.eval(pt);
            return s;
        }
        case Kind::Sum: {
            double s = 0.0;
            for (const FunctionSpec& c : children) s += c.eval(pt);
            return s;
        }
    }
    return 0.0;
}

DepMask FunctionSpec::referenced_axes() const {
    switch (kind) {
        case Kind::Constant:
            return 0;
        case Kind::Poly: {
            DepMask m = 0;
            for (const Monomial& mo : monomials)
                for (int i = 0; i < kMaxAxes; ++i)
                    if (mo.pow[i] > 0) m |= static_cast<DepMask>(1u << i);
            return m;
        }
        case Kind::Trig:
        case Kind::Tanh:
        case Kind::Sech:
            return amp != 0.0 ? mask_of(axis) : 0;
        case Kind::Product:
        case Kind::Sum: {
            DepMask m = 0;
            for (const FunctionSpec& c : children) m |= c.referenced_axes();
            return m;
        }
    }
    return 0;
}

FunctionSpec FunctionSpec::constant(double c) {
    FunctionSpec f;
    f.kind = Kind::Constant;
    f.value = c;
    return f;
}

FunctionSpec FunctionSpec::monomial(double coeff, std::initializer_list<std::pair<Ax, int>> powers) {
    FunctionSpec f;
    f.kind = Kind::Poly;
    Monomial m;
    m.coeff = coeff;
    for (auto [a, p] : powers) m.pow[static_cast<int>(a)] = p;
    f.monomials.push_back(m);
    return f;
}

FunctionSpec FunctionSpec::trig(double amp, Ax axis, double omega, double phase, double offset) {
    FunctionSpec f;
    f.kind = Kind::Trig;
    f.amp = amp;
    f.axis = axis;
    f.omega = omega;
    f.phase = phase;
    f.offset = offset;
    return f;
}

FunctionSpec FunctionSpec::tanh_profile(double amp, Ax axis, double k, double center, double offset) {
    FunctionSpec f;
    f.kind = Kind::Tanh;
    f.amp = amp;
    f.axis = axis;
    f.omega = k;
    f.center = center;
    f.offset = offset;
    return f;
}

FunctionSpec FunctionSpec::sech_profile(double amp, Ax axis, double k, double center, double offset) {
    FunctionSpec f = tanh_profile(amp, axis, k, center, offset);
    f.kind = Kind::Sech;
    return f;
}

FunctionSpec FunctionSpec::product(std::vector<FunctionSpec> parts) {
    FunctionSpec f;
    f.kind = Kind::Product;
    f.children = std::move(parts);
    return f;
}

FunctionSpec FunctionSpec::sum(std::vector<FunctionSpec> parts) {
    FunctionSpec f;
    f.kind = Kind::Sum;
    f.children = std::move(parts);
    return f;
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip();
        return i >= s.size();
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    std::string word() {
        skip();
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                                s[j] == '.' || s[j] == '-' || s[j] == '+' || s[j] == '^' ||
                                s[j] == '='))
            ++j;
        std::string w = s.substr(i, j - i);
        i = j;
        return w;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw SpecError("function spec parse error at offset " + std::to_string(i) + ": " + why +
                        " in \"" + s + "\"");
    }
};

double to_num(Cursor& c, const std::string& w) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(w, &pos);
        if (pos != w.size()) c.fail("bad number '" + w + "'");
        return v;
    } catch (const std::logic_error&) {
        c.fail("bad number '" + w + "'");
    }
}

FunctionSpec parse_spec(Cursor& c);

// keyword args: name=value ... ; axis= takes an axis label
void parse_kv(Cursor& c, FunctionSpec& f) {
    while (!c.eof() && c.peek() != ')') {
        std::string w = c.word();
        const auto eq = w.find('=');
        if (eq == std::string::npos) c.fail("expected key=value, got '" + w + "'");
        const std::string key = w.substr(0, eq);
        const std::string val = w.substr(eq + 1);
        if (key == "axis")
            f.axis = axis_from_name(val);
        else if (key == "amp")
            f.amp = to_num(c, val);
        else if (key == "omega" || key == "k")
            f.omega = to_num(c, val);
        else if (key == "phase")
            f.phase = to_num(c, val);
        else if (key == "center")
            f.center = to_num(c, val);
        else if (key == "offset")
            f.offset = to_num(c, val);
        else
            c.fail("unknown parameter '" + key + "'");
    }
}

// poly body: monomials separated by '+' or '-'; each monomial is
// [coeff] [axis[^p]]...
void parse_poly(Cursor& c, FunctionSpec& f) {
    f.kind = FunctionSpec::Kind::Poly;
    double sign = 1.0;
    FunctionSpec::Monomial cur;
    bool have = false;
    auto flush = [&]() {
        if (have) {
            cur.coeff *= sign;
            f.monomials.push_back(cur);
        }
        cur = {};
        cur.coeff = 1.0;
        have = false;
        sign = 1.0;
    };
    cur.coeff = 1.0;
    while (!c.eof() && c.peek() != ')') {
        std::string w = c.word();
        if (w.empty()) c.fail("unexpected character");
        if (w == "+") {
            flush();
            continue;
        }
        if (w == "-") {
            flush();
            sign = -1.0;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(w[0]))) {
            int p = 1;
            std::string name = w;
            const auto caret = w.find('^');
            if (caret != std::string::npos) {
                name = w.substr(0, caret);
                p = static_cast<int>(to_num(c, w.substr(caret + 1)));
            }
            cur.pow[static_cast<int>(axis_from_name(name))] += p;
            have = true;
        } else {
            // leading sign may be glued to the number
            cur.coeff *= to_num(c, w);
            have = true;
        }
    }
    flush();
    if (f.monomials.empty()) c.fail("empty polynomial");
}

FunctionSpec parse_spec(Cursor& c) {
    if (c.peek() == '(') {
        ++c.i;
        FunctionSpec f = parse_spec(c);
        if (c.peek() != ')') c.fail("expected ')'");
        ++c.i;
        return f;
    }
    const std::string head = c.word();
    FunctionSpec f;
    if (head == "const") {
        f.kind = FunctionSpec::Kind::Constant;
        f.value = to_num(c, c.word());
    } else if (head == "poly") {
        parse_poly(c, f);
    } else if (head == "trig") {
        f.kind = FunctionSpec::Kind::Trig;
        parse_kv(c, f);
    } else if (head == "tanh") {
        f.kind = FunctionSpec::Kind::Tanh;
        parse_kv(c, f);
    } else if (head == "sech") {
        f.kind = FunctionSpec::Kind::Sech;
        parse_kv(c, f);
    } else if (head == "product" || head == "sum") {
        f.kind = head == "product" ? FunctionSpec::Kind::Product : FunctionSpec::Kind::Sum;
        while (!c.eof() && c.peek() == '(') {
            ++c.i;
            f.children.push_back(parse_spec(c));
            if (c.peek() != ')') c.fail("expected ')'");
            ++c.i;
        }
        if (f.children.empty()) c.fail(head + " needs at least one (...) child");
    } else {
        c.fail("unknown function family '" + head + "'");
    }
    return f;
}

void print_spec(std::ostringstream& os, const FunctionSpec& f) {
    using K = FunctionSpec::Kind;
    switch (f.kind) {
        case K::Constant:
            os << "const " << f.value;
            break;
        case K::Poly: {
            os << "poly ";
            bool first = true;
            for (const auto& m : f.monomials) {
                if (!first) os << " + ";
                first = false;
                os << m.coeff;
                for (int i = 0; i < kMaxAxes; ++i)
                    if (m.pow[i] > 0) {
                        os << " " << axis_name(static_cast<Ax>(i));
                        if (m.pow[i] > 1) os << "^" << m.pow[i];
                    }
            }
            break;
        }
        case K::Trig:
            os << "trig amp=" << f.amp << " axis=" << axis_name(f.axis) << " omega=" << f.omega
               << " phase=" << f.phase << " offset=" << f.offset;
            break;
        case K::Tanh:
        case K::Sech:
            os << (f.kind == K::Tanh ? "tanh" : "sech") << " amp=" << f.amp
               << " axis=" << axis_name(f.axis) << " k=" << f.omega << " center=" << f.center
               << " offset=" << f.offset;
            break;
        case K::Product:
        case K::Sum:
            os << (f.kind == K::Product ? "product" : "sum");
            for (const auto& ch : f.children) {
                os << " (";
                print_spec(os, ch);
                os << ")";
            }
            break;
    }
}

}  // namespace

FunctionSpec FunctionSpec::parse(const std::string& text) {
    Cursor c{text};
    FunctionSpec f = parse_spec(c);
    if (!c.eof()) c.fail("trailing input");
    return f;
}

std::string FunctionSpec::to_string() const {
    std::ostringstream os;
    os.precision(17);
    print_spec(os, *this);
    return os.str();
}

ScalarField eval_on_grid(const FunctionSpec& f, const GridPtr& grid, DepMask deps) {
    const DepMask used = f.referenced_axes();
    if ((used & ~deps) != 0)
        throw SpecError("function references axes outside the declared dependency set: " +
                        f.to_string());
    if ((deps & ~grid->present_mask()) != 0) throw SpecError("dependency axis not present in grid");
    return sample_field(grid, deps,
                        [&](const std::array<double, kMaxAxes>& pt) { return f.eval(pt); });
}

}  // namespace afcdm
