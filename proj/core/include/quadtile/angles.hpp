#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace quadtile {

using Rational = boost::multiprecision::cpp_rational;

/// Exact angle c0*pi + c1*pi/f with f kept symbolic.
struct AngleExpr {
    Rational c0;
    Rational c1;

    AngleExpr() = default;
    AngleExpr(Rational pi_coeff, Rational pi_over_f_coeff = 0)
        : c0(std::move(pi_coeff)), c1(std::move(pi_over_f_coeff)) {}

    /// Multiple of pi after substituting f.
    Rational at(int f) const;
    double radians(int f) const;
    bool is_zero() const { return c0 == 0 && c1 == 0; }

    /// Human form such as "π − 8π/f" or "π/2 + 4π/f".
    std::string str() const;

    friend AngleExpr operator+(const AngleExpr& x, const AngleExpr& y) { return {x.c0 + y.c0, x.c1 + y.c1}; }
    friend AngleExpr operator-(const AngleExpr& x, const AngleExpr& y) { return {x.c0 - y.c0, x.c1 - y.c1}; }
    friend AngleExpr operator-(const AngleExpr& x) { return {-x.c0, -x.c1}; }
    friend AngleExpr operator*(const Rational& k, const AngleExpr& x) { return {k * x.c0, k * x.c1}; }
    friend bool operator==(const AngleExpr& x, const AngleExpr& y) { return x.c0 == y.c0 && x.c1 == y.c1; }
};

enum class Angle : int { alpha = 0, beta = 1, gamma = 2, delta = 3 };

const char* angle_name(Angle a);

/// alpha^a beta^b gamma^c delta^d
struct VertexSignature {
    int a = 0;
    int b = 0;
    int c = 0;
    int d = 0;

    int degree() const { return a + b + c + d; }
    int exponent(int i) const;
    std::array<int, 4> exponents() const { return {a, b, c, d}; }

    /// Greek form with superscripts, e.g. "αβ²".
    std::string str() const;
    /// ASCII form, e.g. "a1b2".
    std::string ascii() const;

    auto operator<=>(const VertexSignature&) const = default;
};

/// Degree ascending, then exponent vector descending: α³, αβ², αδ², βγδ.
struct CatalogOrder {
    bool operator()(const VertexSignature& x, const VertexSignature& y) const {
        if (x.degree() != y.degree()) return x.degree() < y.degree();
        return x.exponents() > y.exponents();
    }
};

/// Parses "αβ²", "a b^2", "ab2", "a^2d^2", "b g d" and similar.
VertexSignature parse_signature(const std::string& text);
/// Comma separated list of signatures.
std::vector<VertexSignature> parse_signature_list(const std::string& text);

using AngleSet = std::array<AngleExpr, 4>;

/// alpha+beta+gamma+delta - (2+4/f)pi, as a multiple of pi.
Rational quad_sum_residual(const AngleSet& angles, int f);
/// a*alpha + b*beta + c*gamma + d*delta - 2pi, as a multiple of pi.
Rational vertex_sum_residual(const VertexSignature& sig, const AngleSet& angles, int f);

/// Same residuals with f left symbolic.
AngleExpr quad_sum_residual(const AngleSet& angles);
AngleExpr vertex_sum_residual(const VertexSignature& sig, const AngleSet& angles);

/// Exponent p + q*f for vertices such as alpha^{f/2} or alpha delta^{(f+8)/8}.
struct SymbolicExponent {
    Rational p;
    Rational q;
};

struct SymbolicSignature {
    std::array<SymbolicExponent, 4> e;
    std::string label;

    VertexSignature at(int f) const;
};

/// Residual of the vertex sum as a Laurent polynomial in f: coefficients of f^1, f^0, f^-1.
/// All three vanish iff the vertex closes for every f.
std::array<Rational, 3> symbolic_vertex_residual(const SymbolicSignature& sig, const AngleSet& angles);

struct AngleSolution {
    enum class Kind { unique, parametric, infeasible };

    /// Pivot angle = constant + sum over free angles of coeff * angle.
    struct Expression {
        AngleExpr constant;
        std::array<Rational, 4> coeff{};
    };

    Kind kind = Kind::infeasible;
    int rank = 0;
    /// Free angles in canonical order (alpha first).
    std::vector<Angle> free;
    /// For every angle; a free angle maps to itself.
    std::array<Expression, 4> expressions{};
    /// Set when f was substituted.
    std::optional<int> f;

    /// Assignment for unique solutions.
    AngleSet assignment() const;
    /// Evaluates at the given values of the free angles (multiples of pi).
    std::array<Rational, 4> evaluate(const std::array<Rational, 4>& free_values, int f) const;
    std::string str() const;
};

/// Exact solve of the vertex equations (and optionally the quadrilateral sum) for
/// (alpha, beta, gamma, delta) in the basis {pi, pi/f}. With f given the basis collapses to pi.
AngleSolution solve_angle_system(const std::vector<VertexSignature>& signatures, bool include_quad_sum,
                                 std::optional<int> f = std::nullopt);

std::string rational_str(const Rational& r);
/// "2π/3", "−π/2", "0".
std::string pi_multiple_str(const Rational& r);

}  // namespace quadtile
