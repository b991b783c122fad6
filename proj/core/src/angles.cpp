#include "quadtile/angles.hpp"

#include <sstream>
#include <stdexcept>

namespace quadtile {

namespace {

const char* const kGreek[4] = {"α", "β", "γ", "δ"};
const char* const kSuper[10] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};

std::string superscript(int n) {
    std::string digits = std::to_string(n);
    std::string out;
    for (char ch : digits) out += kSuper[ch - '0'];
    return out;
}

// Decode one UTF-8 code point starting at i; advances i.
char32_t next_code_point(const std::string& s, std::size_t& i) {
    auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char c = byte(i);
    if (c < 0x80) {
        ++i;
        return c;
    }
    int len = (c >= 0xF0) ? 4 : (c >= 0xE0) ? 3 : 2;
    if (i + len > s.size()) throw std::invalid_argument("truncated UTF-8 in signature");
    char32_t cp = c & (0x3F >> (len - 1));
    for (int k = 1; k < len; ++k) cp = (cp << 6) | (byte(i + k) & 0x3F);
    i += len;
    return cp;
}

int superscript_digit(char32_t cp) {
    switch (cp) {
        case U'⁰': return 0;
        case U'¹': return 1;
        case U'²': return 2;
        case U'³': return 3;
        case U'⁴': return 4;
        case U'⁵': return 5;
        case U'⁶': return 6;
        case U'⁷': return 7;
        case U'⁸': return 8;
        case U'⁹': return 9;
        default: return -1;
    }
}

int angle_index(char32_t cp) {
    switch (cp) {
        case U'α': case U'a': return 0;
        case U'β': case U'b': return 1;
        case U'γ': case U'g': return 2;
        case U'δ': case U'd': return 3;
        default: return -1;
    }
}

AngleExpr fold(const AngleExpr& x, std::optional<int> f) {
    if (!f) return x;
    return AngleExpr(x.c0 + x.c1 / Rational(*f), 0);
}

}  // namespace

Rational AngleExpr::at(int f) const { return c0 + c1 / Rational(f); }

double AngleExpr::radians(int f) const { return static_cast<double>(at(f)) * 3.14159265358979323846; }

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

std::string pi_multiple_str(const Rational& r) {
    if (r == 0) return "0";
    std::ostringstream os;
    auto num = numerator(r);
    auto den = denominator(r);
    if (num < 0) {
        os << "−";
        num = -num;
    }
    if (num != 1) os << num;
    os << "π";
    if (den != 1) os << "/" << den;
    return os.str();
}

std::string AngleExpr::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (c0 != 0) out = pi_multiple_str(c0);
    if (c1 != 0) {
        Rational mag = c1 < 0 ? Rational(-c1) : c1;
        std::ostringstream term;
        if (numerator(mag) != 1) term << numerator(mag);
        term << "π/";
        if (denominator(mag) != 1) term << "(" << denominator(mag) << "f)";
        else term << "f";
        if (out.empty()) out = (c1 < 0 ? "−" : "") + term.str();
        else out += (c1 < 0 ? " − " : " + ") + term.str();
    }
    return out;
}

const char* angle_name(Angle a) { return kGreek[static_cast<int>(a)]; }

int VertexSignature::exponent(int i) const {
    switch (i) {
        case 0: return a;
        case 1: return b;
        case 2: return c;
        case 3: return d;
        default: throw std::out_of_range("angle index");
    }
}

std::string VertexSignature::str() const {
    std::string out;
    auto e = exponents();
    for (int i = 0; i < 4; ++i) {
        if (e[i] == 0) continue;
        out += kGreek[i];
        if (e[i] > 1) out += superscript(e[i]);
    }
    return out.empty() ? "∅" : out;
}

std::string VertexSignature::ascii() const {
    static const char names[4] = {'a', 'b', 'g', 'd'};
    std::string out;
    auto e = exponents();
    for (int i = 0; i < 4; ++i)
        if (e[i] > 0) out += names[i] + std::to_string(e[i]);
    return out;
}

VertexSignature parse_signature(const std::string& text) {
    std::array<int, 4> e{};
    std::size_t i = 0;
    int current = -1;
    bool current_has_exp = false;
    int exp = 0;
    auto flush = [&]() {
        if (current < 0) return;
        e[current] += current_has_exp ? exp : 1;
        current = -1;
        current_has_exp = false;
        exp = 0;
    };
    while (i < text.size()) {
        char32_t cp = next_code_point(text, i);
        if (cp == U' ' || cp == U'^' || cp == U'·' || cp == U'*' || cp == U'\t') continue;
        int digit = superscript_digit(cp);
        if (digit < 0 && cp >= U'0' && cp <= U'9') digit = static_cast<int>(cp - U'0');
        if (digit >= 0) {
            if (current < 0) throw std::invalid_argument("exponent without angle in '" + text + "'");
            exp = exp * 10 + digit;
            current_has_exp = true;
            continue;
        }
        int idx = angle_index(cp);
        if (idx < 0) throw std::invalid_argument("unexpected character in signature '" + text + "'");
        flush();
        current = idx;
    }
    flush();
    VertexSignature sig{e[0], e[1], e[2], e[3]};
    if (sig.degree() == 0) throw std::invalid_argument("empty signature");
    return sig;
}

std::vector<VertexSignature> parse_signature_list(const std::string& text) {
    std::vector<VertexSignature> out;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) {
        bool blank = token.find_first_not_of(" \t{}") == std::string::npos;
        if (blank) continue;
        std::string cleaned;
        for (char ch : token)
            if (ch != '{' && ch != '}') cleaned += ch;
        out.push_back(parse_signature(cleaned));
    }
    return out;
}

Rational quad_sum_residual(const AngleSet& angles, int f) { return quad_sum_residual(angles).at(f); }

Rational vertex_sum_residual(const VertexSignature& sig, const AngleSet& angles, int f) {
    return vertex_sum_residual(sig, angles).at(f);
}

AngleExpr quad_sum_residual(const AngleSet& angles) {
    AngleExpr sum = angles[0] + angles[1] + angles[2] + angles[3];
    return sum - AngleExpr(2, 4);
}

AngleExpr vertex_sum_residual(const VertexSignature& sig, const AngleSet& angles) {
    AngleExpr sum;
    for (int i = 0; i < 4; ++i) sum = sum + Rational(sig.exponent(i)) * angles[i];
    return sum - AngleExpr(2, 0);
}

VertexSignature SymbolicSignature::at(int f) const {
    std::array<int, 4> out{};
    for (int i = 0; i < 4; ++i) {
        Rational v = e[i].p + e[i].q * f;
        if (denominator(v) != 1 || v < 0)
            throw std::domain_error("exponent of " + label + " is not a nonnegative integer at f=" + std::to_string(f));
        out[i] = static_cast<int>(numerator(v));
    }
    return {out[0], out[1], out[2], out[3]};
}

std::array<Rational, 3> symbolic_vertex_residual(const SymbolicSignature& sig, const AngleSet& angles) {
    // (p + q f)(c0 + c1/f) = q c0 f + (p c0 + q c1) + p c1 / f
    std::array<Rational, 3> r{Rational(0), Rational(-2), Rational(0)};
    for (int i = 0; i < 4; ++i) {
        const auto& ex = sig.e[i];
        r[0] += ex.q * angles[i].c0;
        r[1] += ex.p * angles[i].c0 + ex.q * angles[i].c1;
        r[2] += ex.p * angles[i].c1;
    }
    return r;
}

AngleSet AngleSolution::assignment() const {
    if (kind != Kind::unique) throw std::logic_error("assignment requested for a non-unique angle solution");
    AngleSet out;
    for (int i = 0; i < 4; ++i) out[i] = expressions[i].constant;
    return out;
}

std::array<Rational, 4> AngleSolution::evaluate(const std::array<Rational, 4>& free_values, int fv) const {
    std::array<Rational, 4> out;
    for (int i = 0; i < 4; ++i) {
        Rational v = expressions[i].constant.at(fv);
        for (int j = 0; j < 4; ++j) v += expressions[i].coeff[j] * free_values[j];
        out[i] = v;
    }
    return out;
}

std::string AngleSolution::str() const {
    if (kind == Kind::infeasible) return "infeasible";
    std::ostringstream os;
    for (int i = 0; i < 4; ++i) {
        if (i) os << ", ";
        os << kGreek[i] << " = ";
        bool is_free = false;
        for (Angle a : free)
            if (static_cast<int>(a) == i) is_free = true;
        if (is_free) {
            os << "free";
            continue;
        }
        const auto& ex = expressions[i];
        std::string s = ex.constant.is_zero() ? "" : ex.constant.str();
        for (int j = 0; j < 4; ++j) {
            const Rational& k = ex.coeff[j];
            if (k == 0) continue;
            Rational mag = k < 0 ? Rational(-k) : k;
            std::string term = (mag == 1 ? std::string() : rational_str(mag) + "·") + kGreek[j];
            if (s.empty()) s = (k < 0 ? "−" : "") + term;
            else s += (k < 0 ? " − " : " + ") + term;
        }
        os << (s.empty() ? "0" : s);
    }
    return os.str();
}

AngleSolution solve_angle_system(const std::vector<VertexSignature>& signatures, bool include_quad_sum,
                                 std::optional<int> f) {
    if (signatures.empty()) throw std::invalid_argument("solve_angle_system needs at least one signature");

    struct Row {
        std::array<Rational, 4> a;
        AngleExpr rhs;
    };
    std::vector<Row> rows;
    for (const auto& s : signatures) {
        Row r;
        for (int i = 0; i < 4; ++i) r.a[i] = s.exponent(i);
        r.rhs = fold(AngleExpr(2, 0), f);
        rows.push_back(r);
    }
    if (include_quad_sum) rows.push_back({{1, 1, 1, 1}, fold(AngleExpr(2, 4), f)});

    // Pivot from delta down to alpha so the free angles come out alpha-first.
    const int order[4] = {3, 2, 1, 0};
    std::array<int, 4> pivot_row{-1, -1, -1, -1};
    std::size_t r = 0;
    for (int col : order) {
        std::size_t p = r;
        while (p < rows.size() && rows[p].a[col] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Rational inv = Rational(1) / rows[r].a[col];
        for (auto& x : rows[r].a) x *= inv;
        rows[r].rhs = inv * rows[r].rhs;
        for (std::size_t q = 0; q < rows.size(); ++q) {
            if (q == r || rows[q].a[col] == 0) continue;
            Rational k = rows[q].a[col];
            for (int j = 0; j < 4; ++j) rows[q].a[j] -= k * rows[r].a[j];
            rows[q].rhs = rows[q].rhs - k * rows[r].rhs;
        }
        pivot_row[col] = static_cast<int>(r);
        ++r;
    }

    AngleSolution sol;
    sol.f = f;
    sol.rank = static_cast<int>(r);
    for (std::size_t q = r; q < rows.size(); ++q) {
        if (!rows[q].rhs.is_zero()) {
            sol.kind = AngleSolution::Kind::infeasible;
            return sol;
        }
    }
    for (int i = 0; i < 4; ++i) {
        if (pivot_row[i] < 0) {
            sol.free.push_back(static_cast<Angle>(i));
            sol.expressions[i].coeff[i] = 1;
            continue;
        }
        const Row& row = rows[pivot_row[i]];
        sol.expressions[i].constant = row.rhs;
        for (int j = 0; j < 4; ++j)
            if (j != i && pivot_row[j] < 0) sol.expressions[i].coeff[j] = -row.a[j];
    }
    sol.kind = sol.free.empty() ? AngleSolution::Kind::unique : AngleSolution::Kind::parametric;
    return sol;
}

}  // namespace quadtile
