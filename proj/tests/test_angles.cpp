#include <doctest.h>

#include <algorithm>
#include <random>

#include "quadtile/angles.hpp"

using namespace quadtile;

namespace {

Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }

/// Angle c0*pi + c1*pi/f with rational coefficients n0/d0 and n1/d1.
AngleExpr ang(long n0, long d0, long n1 = 0, long d1 = 1) { return AngleExpr(q(n0, d0), q(n1, d1)); }

std::vector<VertexSignature> sigs(const std::string& text) { return parse_signature_list(text); }

// Independent oracle: substitutes a solution back into every equation of the system.
void check_satisfies(const AngleSolution& sol, const std::vector<VertexSignature>& system, bool quad) {
    REQUIRE(sol.kind == AngleSolution::Kind::unique);
    AngleSet a = sol.assignment();
    for (const auto& s : system) CHECK(vertex_sum_residual(s, a).is_zero());
    if (quad) CHECK(quad_sum_residual(a).is_zero());
}

}  // namespace

TEST_CASE("signature parsing and printing") {
    CHECK(parse_signature("αβ²") == VertexSignature{1, 2, 0, 0});
    CHECK(parse_signature("a b^2") == VertexSignature{1, 2, 0, 0});
    CHECK(parse_signature("a^2d^2") == VertexSignature{2, 0, 0, 2});
    CHECK(parse_signature("b g d") == VertexSignature{0, 1, 1, 1});
    CHECK(parse_signature("δ¹⁰") == VertexSignature{0, 0, 0, 10});
    CHECK(parse_signature("aab") == VertexSignature{2, 1, 0, 0});
    CHECK(VertexSignature{1, 2, 0, 0}.str() == "αβ²");
    CHECK(VertexSignature{0, 0, 0, 10}.str() == "δ¹⁰");
    CHECK(VertexSignature{2, 0, 0, 2}.ascii() == "a2d2");
    CHECK_THROWS_AS(parse_signature("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_signature("²"), std::invalid_argument);
    CHECK_THROWS_AS(parse_signature(""), std::invalid_argument);
    auto list = parse_signature_list("{αβ², α²δ², γ⁴, δ⁶}");
    REQUIRE(list.size() == 4);
    CHECK(list[3] == VertexSignature{0, 0, 0, 6});
}

TEST_CASE("catalog order is degree first, then exponents descending") {
    std::vector<VertexSignature> v = sigs("βγδ,αδ²,α³,αβ²");
    std::sort(v.begin(), v.end(), CatalogOrder{});
    CHECK(v == sigs("α³,αβ²,αδ²,βγδ"));
}

TEST_CASE("angle expressions print in pi units") {
    CHECK(ang(1, 1, -8).str() == "π − 8π/f");
    CHECK(ang(1, 2, 4).str() == "π/2 + 4π/f");
    CHECK(ang(0, 1, 8).str() == "8π/f");
    CHECK(ang(2, 3).str() == "2π/3");
    CHECK(ang(0, 1).str() == "0");
    CHECK(ang(1, 1, -8).at(16) == q(1, 2));
}

TEST_CASE("quad sum residual") {
    CHECK(quad_sum_residual({ang(2, 3), ang(2, 3), ang(1, 2), ang(1, 3)}, 24) == 0);
    AngleSet square{ang(1, 2), ang(1, 2), ang(1, 2), ang(1, 2)};
    for (int f : {6, 16, 100}) CHECK(quad_sum_residual(square, f) == q(-4, f));
    AngleSet fam{ang(1, 1, -8), ang(1, 2, 4), ang(1, 2), ang(0, 1, 8)};
    CHECK(quad_sum_residual(fam, 16) == 0);
    CHECK(quad_sum_residual(fam).is_zero());
}

TEST_CASE("vertex sum residual") {
    AngleSet earth{ang(0, 1, 4), ang(2, 3), ang(2, 3), ang(2, 3)};
    CHECK(vertex_sum_residual(parse_signature("βγδ"), earth, 12) == 0);
    CHECK(vertex_sum_residual(parse_signature("α³"), {ang(2, 3), ang(0, 1), ang(0, 1), ang(0, 1)}, 6) == 0);
    AngleSet fam{ang(1, 1, -8), ang(1, 2, 4), ang(1, 2), ang(0, 1, 8)};
    CHECK(vertex_sum_residual(parse_signature("δ⁴"), fam, 16) == 0);
    CHECK(vertex_sum_residual(parse_signature("δ⁴"), fam, 24) == q(-2, 3));
    CHECK(vertex_sum_residual(parse_signature("αβ²γ"), fam, 16) != 0);
}

TEST_CASE("symbolic exponents close for every f") {
    AngleSet pq{ang(1, 1, -8), ang(1, 2, 4), ang(1, 2), ang(0, 1, 8)};
    SymbolicSignature pole{{{{0, 0}, {0, 0}, {0, 0}, {0, q(1, 4)}}}, "δ^{f/4}"};
    SymbolicSignature ad{{{{1, 0}, {0, 0}, {0, 0}, {1, q(1, 8)}}}, "αδ^{(f+8)/8}"};
    SymbolicSignature bd{{{{0, 0}, {2, 0}, {0, 0}, {-1, q(1, 8)}}}, "β²δ^{(f−8)/8}"};
    for (const auto& s : {pole, ad, bd}) {
        auto r = symbolic_vertex_residual(s, pq);
        CHECK(r[0] == 0);
        CHECK(r[1] == 0);
        CHECK(r[2] == 0);
    }
    CHECK(pole.at(24) == VertexSignature{0, 0, 0, 6});
    CHECK(ad.at(40) == VertexSignature{1, 0, 0, 6});
    CHECK(bd.at(24) == VertexSignature{0, 2, 0, 2});
    CHECK_THROWS_AS(pole.at(18), std::domain_error);

    AngleSet earth{ang(0, 1, 4), ang(2, 3), ang(2, 3), ang(2, 3)};
    SymbolicSignature alpha_pole{{{{0, q(1, 2)}, {0, 0}, {0, 0}, {0, 0}}}, "α^{f/2}"};
    auto r = symbolic_vertex_residual(alpha_pole, earth);
    CHECK((r[0] == 0 && r[1] == 0 && r[2] == 0));
    // Off by one delta: the residual is the constant -8/f term.
    SymbolicSignature wrong{{{{0, 0}, {0, 0}, {0, 0}, {-1, q(1, 4)}}}, "δ^{f/4-1}"};
    auto w = symbolic_vertex_residual(wrong, pq);
    CHECK(w[1] == 0);
    CHECK(w[2] == -8);
}

TEST_CASE("earth map family: βγδ gives α = 4π/f with two free angles") {
    auto sol = solve_angle_system(sigs("βγδ"), true);
    CHECK(sol.kind == AngleSolution::Kind::parametric);
    CHECK(sol.rank == 2);
    CHECK(sol.free == std::vector<Angle>{Angle::beta, Angle::gamma});
    CHECK(sol.expressions[0].constant == ang(0, 1, 4));
    CHECK(sol.expressions[0].coeff == std::array<Rational, 4>{});
    // δ = 2π − β − γ
    CHECK(sol.expressions[3].constant == ang(2, 1));
    CHECK(sol.expressions[3].coeff[1] == -1);
    CHECK(sol.expressions[3].coeff[2] == -1);
}

TEST_CASE("(f/4,4)-earth map family: αβ², α²δ², γ⁴") {
    auto system = sigs("αβ²,α²δ²,γ⁴");
    auto sol = solve_angle_system(system, true);
    REQUIRE(sol.kind == AngleSolution::Kind::unique);
    AngleSet a = sol.assignment();
    CHECK(a[0] == ang(1, 1, -8));
    CHECK(a[1] == ang(1, 2, 4));
    CHECK(a[2] == ang(1, 2));
    CHECK(a[3] == ang(0, 1, 8));
    check_satisfies(sol, system, true);
}

TEST_CASE("flip family alternative: αβ², γ⁴, δ⁴") {
    auto system = sigs("αβ²,γ⁴,δ⁴");
    auto sol = solve_angle_system(system, true);
    REQUIRE(sol.kind == AngleSolution::Kind::unique);
    AngleSet a = sol.assignment();
    CHECK(a[0] == ang(0, 1, 8));
    CHECK(a[1] == ang(1, 1, -4));
    CHECK(a[2] == ang(1, 2));
    CHECK(a[3] == ang(1, 2));
    check_satisfies(sol, system, true);
}

TEST_CASE("cube subdivision family: α³, β²δ², γ⁴ forces f = 24") {
    auto system = sigs("α³,β²δ²,γ⁴");
    CHECK(solve_angle_system(system, true).kind == AngleSolution::Kind::infeasible);
    auto sol = solve_angle_system(system, true, 24);
    REQUIRE(sol.kind == AngleSolution::Kind::parametric);
    CHECK(sol.free == std::vector<Angle>{Angle::beta});
    CHECK(sol.expressions[0].constant == ang(2, 3));
    CHECK(sol.expressions[2].constant == ang(1, 2));
    CHECK(sol.expressions[3].constant == ang(1, 1));
    CHECK(sol.expressions[3].coeff[1] == -1);
    for (int f : {16, 32}) CHECK(solve_angle_system(system, true, f).kind == AngleSolution::Kind::infeasible);
}

TEST_CASE("prism subdivision family: α³, αβ², γ⁴") {
    auto system = sigs("α³,αβ²,γ⁴");
    auto sol = solve_angle_system(system, true);
    REQUIRE(sol.kind == AngleSolution::Kind::unique);
    AngleSet a = sol.assignment();
    CHECK(a[0] == ang(2, 3));
    CHECK(a[1] == ang(2, 3));
    CHECK(a[2] == ang(1, 2));
    CHECK(a[3] == ang(1, 6, 4));
    CHECK(a[3].at(24) == q(1, 3));
    check_satisfies(sol, system, true);
}

TEST_CASE("αβ² with γ²δ²: α = 8π/f, β = π − 4π/f, γ + δ = π") {
    auto sol = solve_angle_system(sigs("αβ²,γ²δ²"), true);
    REQUIRE(sol.kind == AngleSolution::Kind::parametric);
    CHECK(sol.free == std::vector<Angle>{Angle::gamma});
    CHECK(sol.expressions[0].constant == ang(0, 1, 8));
    CHECK(sol.expressions[1].constant == ang(1, 1, -4));
    CHECK(sol.expressions[3].constant == ang(1, 1));
    CHECK(sol.expressions[3].coeff[2] == -1);
}

TEST_CASE("αβ² with αδ²: β = δ = π − α/2, γ = 4π/f") {
    auto sol = solve_angle_system(sigs("αβ²,αδ²"), true);
    REQUIRE(sol.kind == AngleSolution::Kind::parametric);
    CHECK(sol.free == std::vector<Angle>{Angle::alpha});
    for (int i : {1, 3}) {
        CHECK(sol.expressions[i].constant == ang(1, 1));
        CHECK(sol.expressions[i].coeff[0] == q(-1, 2));
    }
    CHECK(sol.expressions[2].constant == ang(0, 1, 4));
    auto v = sol.evaluate({q(1, 2), 0, 0, 0}, 16);
    CHECK(v == std::array<Rational, 4>{q(1, 2), q(3, 4), q(1, 4), q(3, 4)});
}

TEST_CASE("concrete f collapses the basis") {
    auto sol = solve_angle_system(sigs("αβ²,α²δ²,γ⁴"), true, 16);
    REQUIRE(sol.kind == AngleSolution::Kind::unique);
    REQUIRE(sol.f == 16);
    AngleSet a = sol.assignment();
    CHECK(a[0] == ang(1, 2));
    CHECK(a[1] == ang(3, 4));
    CHECK(a[3] == ang(1, 2));
    CHECK(a[0].c1 == 0);
}

TEST_CASE("inconsistent systems are reported, not thrown") {
    auto sol = solve_angle_system(sigs("α³,α⁴"), false);
    CHECK(sol.kind == AngleSolution::Kind::infeasible);
    CHECK_THROWS_AS(sol.assignment(), std::logic_error);
}

TEST_CASE("solution does not depend on signature order") {
    std::mt19937 rng(7);
    auto base = sigs("αβ²,α²δ²,γ⁴,δ⁴");
    auto ref = solve_angle_system(base, true);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = base;
        std::shuffle(p.begin(), p.end(), rng);
        auto sol = solve_angle_system(p, true);
        CHECK(sol.kind == ref.kind);
        for (int i = 0; i < 4; ++i) CHECK(sol.expressions[i].constant == ref.expressions[i].constant);
    }
}

TEST_CASE("random unique solutions satisfy every equation exactly") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> e(0, 4);
    int unique = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<VertexSignature> system;
        for (int k = 0; k < 3; ++k) {
            VertexSignature s{e(rng), e(rng), e(rng), e(rng)};
            if (s.degree() >= 3) system.push_back(s);
        }
        if (system.empty()) continue;
        auto sol = solve_angle_system(system, true);
        if (sol.kind != AngleSolution::Kind::unique) continue;
        ++unique;
        check_satisfies(sol, system, true);
    }
    CHECK(unique > 10);
}
