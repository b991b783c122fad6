#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "quadtile/constructors.hpp"
#include "quadtile/geometry.hpp"
#include "quadtile/tilingmap.hpp"

using namespace quadtile;

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt5 = std::sqrt(5.0);

double arc(const Vec3& x, const Vec3& y) {
    double d = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    return std::acos(std::max(-1.0, std::min(1.0, d)));
}

bool same_quad(const SphericalQuad& x, const SphericalQuad& y, double tol) {
    return std::abs(x.a - y.a) < tol && std::abs(x.b - y.b) < tol && std::abs(x.c - y.c) < tol &&
           std::abs(x.alpha - y.alpha) < tol && std::abs(x.beta - y.beta) < tol &&
           std::abs(x.gamma - y.gamma) < tol && std::abs(x.delta - y.delta) < tol;
}

std::size_t count_lines(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);)
        if (line.rfind(prefix, 0) == 0) ++n;
    return n;
}

}  // namespace

TEST_CASE("rotation matrices") {
    Mat3 r = rot_y(0.3) * rot_y(-0.3);
    Mat3 id = identity3();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(r[i][j] == doctest::Approx(id[i][j]).epsilon(1e-15));
    // Z(π − θ) applied twice with θ = π/2 is a half turn about z.
    Mat3 h = rot_z_supplement(pi / 2) * rot_z_supplement(pi / 2);
    CHECK(h[0][0] == doctest::Approx(-1));
    CHECK(h[1][1] == doctest::Approx(-1));
    CHECK(h[2][2] == doctest::Approx(1));
}

TEST_CASE("closed form family tile at f = 24") {
    SphericalQuad q = closed_form_family(24);
    CHECK(std::abs(std::cos(q.a) - sqrt5 / 3) < 1e-12);
    CHECK(std::abs(std::cos(q.b) - (sqrt5 + 1) / (2 * std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(std::cos(q.c) - (sqrt5 - 1) / (2 * std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(q.alpha - 2 * pi / 3) < 1e-15);
    CHECK(std::abs(q.beta - 2 * pi / 3) < 1e-15);
    CHECK(std::abs(q.delta - pi / 3) < 1e-15);
    CHECK(holonomy_residual(q) < 1e-9);
    for (double r : trig_residuals(q)) CHECK(std::abs(r) < 1e-9);
}

TEST_CASE("the family tile at f = 24 is the cube subdivision tile at δ = π/3") {
    CHECK(same_quad(closed_form_family(24), closed_form_cube_subdivision(pi / 3), 1e-12));
}

TEST_CASE("closed forms satisfy both tile equations") {
    for (int f : {16, 24, 32, 40, 64, 200}) {
        CAPTURE(f);
        SphericalQuad q = closed_form_family(f);
        CHECK(holonomy_residual(q) < 1e-9);
        for (double r : trig_residuals(q)) CHECK(std::abs(r) < 1e-9);
        CHECK(area(q) == doctest::Approx(4 * pi / f));
        CHECK(convexity_bounds(q, f).ok());
    }
    for (double d : {0.3 * pi, 0.4 * pi, 0.45 * pi, 0.55 * pi, 0.6 * pi, 0.7 * pi}) {
        CAPTURE(d);
        SphericalQuad q = closed_form_cube_subdivision(d);
        CHECK(holonomy_residual(q) < 1e-9);
        for (double r : trig_residuals(q)) CHECK(std::abs(r) < 1e-9);
        CHECK(area(q) == doctest::Approx(pi / 6));
    }
}

TEST_CASE("a wrong edge breaks both tile equations") {
    SphericalQuad q = closed_form_family(24);
    q.b += 1e-3;
    CHECK(holonomy_residual(q) > 1e-5);
    CHECK(std::abs(trig_residuals(q)[1]) > 1e-5);
}

TEST_CASE("family tile at f = 16") {
    SphericalQuad q = closed_form_family(16);
    CHECK(std::abs(q.alpha - pi / 2) < 1e-15);
    CHECK(area(q) == doctest::Approx(pi / 4));
    CHECK(std::abs(std::cos(q.a) - (sqrt5 - 1) / 2) < 1e-12);
}

TEST_CASE("closed form domain errors") {
    CHECK_THROWS_AS(closed_form_family(8), GeometryError);
    CHECK_THROWS_AS(closed_form_family(12), GeometryError);
    try {
        closed_form_family(10);
        FAIL("f = 10 accepted");
    } catch (const DegeneracyError& e) {
        CHECK(e.pair() == "b=c");
    }
    CHECK_THROWS_AS(closed_form_cube_subdivision(0.2), GeometryError);
    CHECK_THROWS_AS(closed_form_cube_subdivision(pi), GeometryError);
    try {
        closed_form_cube_subdivision(pi / 2);
        FAIL("δ = π/2 accepted");
    } catch (const DegeneracyError& e) {
        CHECK(e.pair() == "b=c");
    }
}

TEST_CASE("edge solver") {
    auto prism = solve_edges(2 * pi / 3, 2 * pi / 3, pi / 2, pi / 3);
    REQUIRE(prism.size() == 1);
    CHECK(same_quad(prism[0], closed_form_family(24), 1e-12));

    auto f16 = solve_edges(pi / 2, 3 * pi / 4, pi / 2, pi / 2);
    REQUIRE_FALSE(f16.empty());
    bool found = false;
    for (const auto& q : f16) {
        CHECK(holonomy_residual(q) < 1e-9);
        found |= std::abs(std::cos(q.a) - (sqrt5 - 1) / 2) < 1e-12;
    }
    CHECK(found);

    for (int f : {32, 48}) {
        SphericalQuad ref = closed_form_family(f);
        auto sols = solve_edges(ref.alpha, ref.beta, ref.gamma, ref.delta);
        bool match = false;
        for (const auto& q : sols) match |= same_quad(q, ref, 1e-9);
        CHECK(match);
    }

    CHECK_THROWS_AS(solve_edges(pi / 2, pi / 2, pi / 2, pi / 2), GeometryError);
    CHECK_THROWS_AS(solve_edges(-1, 2, 2, 2), GeometryError);
    try {
        solve_edges(2, 1.5, 1.6, 1.5);
        FAIL("β = δ accepted");
    } catch (const DegeneracyError& e) {
        CHECK(e.pair() == "beta=delta");
    }
}

TEST_CASE("degeneracy loci of the family") {
    auto loci = family_degeneracy_loci();
    std::vector<double> ab, ac, bc;
    for (const auto& l : loci) (l.pair == "a=b" ? ab : l.pair == "a=c" ? ac : bc).push_back(l.f);
    REQUIRE(ab.size() == 1);
    REQUIRE(ac.size() == 2);
    REQUIRE(bc.size() == 2);
    // The a=b root is exactly f = 20/3; the published 6.666661841292876 agrees to 6 significant figures.
    CHECK(std::abs(ab[0] - 20.0 / 3) < 1e-12);
    CHECK(std::abs(ab[0] - 6.666661841292876) < 5e-6);
    CHECK(std::abs(ac[0] - 20.0 / 3) < 1e-9);
    CHECK(std::abs(ac[1] - 13.89229433053042) < 5e-5);
    CHECK(std::abs(ac[1] - 13.89229433053042) < 1e-10);
    CHECK(std::abs(bc[0] - 20.0 / 3) < 1e-9);
    CHECK(std::abs(bc[1] - 10) < 1e-12);
}

TEST_CASE("cube subdivision exclusions") {
    auto ex = cube_exclusions();
    REQUIRE(ex.size() == 3);
    CHECK(ex[0].pair == "a=b");
    CHECK(std::abs(ex[0].delta / pi - 0.4322221997677038) < 5e-11);
    CHECK(ex[1].pair == "b=c");
    CHECK(std::abs(ex[1].delta / pi - 0.5) < 1e-12);
    CHECK(ex[2].pair == "a=c");
    CHECK(std::abs(ex[2].delta / pi - 0.5677778002322962) < 5e-11);
    // Symmetric about π/2 since δ ↦ π − δ swaps b and c.
    CHECK(std::abs(ex[0].delta + ex[2].delta - pi) < 1e-12);
}

TEST_CASE("lune quadrilaterals") {
    LuneQuad in = lune_quad(1.0, 1.2, 0.4, false);
    CHECK(std::abs(area(in.quad) - 1.2) < 1e-12);
    CHECK(in.quad.a == 1.0);
    CHECK(std::abs(in.quad.alpha - 1.2) < 1e-12);
    CHECK(holonomy_residual(in.quad) < 1e-9);
    CHECK(in.warnings.empty());

    LuneQuad sym = lune_quad(1.0, 1.2, 0.6, false);
    CHECK(sym.warnings == std::vector<std::string>{"b=c"});

    LuneQuad ex = lune_quad(0.8, 1.0, 0.5, true);
    CHECK(std::abs(area(ex.quad) - 1.0) < 1e-12);
    CHECK(ex.quad.beta > pi);
    CHECK(holonomy_residual(ex.quad) < 1e-9);

    CHECK_THROWS_AS(lune_quad(1.0, 1.2, 1.3, false), GeometryError);
    CHECK_THROWS_AS(lune_quad(1.8, 1.0, 0.5, true), GeometryError);
    CHECK_THROWS_AS(lune_quad(0.8, 1.0, 2.5, true), GeometryError);
    CHECK_THROWS_AS(lune_quad(0.0, 1.0, 0.5, false), GeometryError);
}

TEST_CASE("lune quadrilateral with cos θ = cos a / (1 − cos a) has a = c or a = b") {
    // With α and a chosen so that the root lies in range, the warning names an edge coincidence with a.
    double a = 1.2, ca = std::cos(a);
    double theta = std::acos(ca / (1 - ca));
    double alpha = theta + 0.5;
    LuneQuad q = lune_quad(a, alpha, theta, false);
    bool hit = std::abs(q.quad.a - q.quad.b) < 1e-9 || std::abs(q.quad.a - q.quad.c) < 1e-9;
    CHECK(hit);
    CHECK_FALSE(q.warnings.empty());
}

TEST_CASE("convexity bounds") {
    CHECK(convexity_bounds(closed_form_family(16), 16).ok());
    SphericalQuad bad{1, 1, 1, 1.0, 0.5, pi - 1e-3, 0.4};
    auto rep = convexity_bounds(bad, 16);
    bool violated = rep.failed("gamma + beta < pi + delta") || rep.failed("gamma + delta < pi + beta");
    CHECK(violated);
    SphericalQuad tiny{1, 1, 1, 0.1, 2, 2, 2};
    CHECK(convexity_bounds(tiny, 24).failed("alpha > 2pi/f"));
}

TEST_CASE("realizations close and cover the sphere") {
    struct Case {
        const char* name;
        TilingMap map;
        SphericalQuad quad;
    };
    std::vector<Case> cases = {
        {"pq16", pq_earth_map(16), closed_form_family(16)},
        {"pq24", pq_earth_map(24), closed_form_family(24)},
        {"pq40", pq_earth_map(40), closed_form_family(40)},
        {"cube", quad_subdivide(Base::cube), closed_form_cube_subdivision(pi / 3)},
        {"cube 0.4π", quad_subdivide(Base::cube), closed_form_cube_subdivision(0.4 * pi)},
        {"octahedron", quad_subdivide(Base::octahedron), closed_form_cube_subdivision(pi / 3)},
        {"prism", quad_subdivide(Base::triangular_prism), closed_form_cube_subdivision(pi / 3)},
        {"alphadelta24", family_alphadelta(24), closed_form_family(24)},
        {"beta2delta24", family_beta2delta(24), closed_form_family(24)},
        {"alphadelta40", family_alphadelta(40), closed_form_family(40)},
        {"beta2delta40", family_beta2delta(40), closed_form_family(40)},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        Realization r = realize(c.map, c.quad);
        CHECK(r.max_gap < 1e-6);
        CHECK(std::abs(r.area_sum - 4 * pi) < 1e-6);
        REQUIRE(static_cast<int>(r.vertices.size()) == c.map.vertex_count());
        for (const auto& v : r.vertices) CHECK(std::abs(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] - 1) < 1e-12);
        // Independent check: every glued edge has the length of its label.
        const double len[3] = {c.quad.a, c.quad.b, c.quad.c};
        for (const auto& e : c.map.edges())
            CHECK(std::abs(arc(r.vertices[e.v1], r.vertices[e.v2]) - len[static_cast<int>(e.label)]) < 1e-9);
        // Distinct vertices land on distinct points.
        double closest = 10;
        for (std::size_t i = 0; i < r.vertices.size(); ++i)
            for (std::size_t j = i + 1; j < r.vertices.size(); ++j)
                closest = std::min(closest, arc(r.vertices[i], r.vertices[j]));
        CHECK(closest > 1e-3);
        for (double t : r.tile_residuals) CHECK(t < 1e-9);
    }
}

TEST_CASE("earth maps realize with lune tiles") {
    for (int f : {6, 8, 12, 20}) {
        CAPTURE(f);
        LuneQuad l = lune_quad(1.1, 4 * pi / f, 0.7 * 4 * pi / f, false);
        Realization r = realize(earth_map(f), l.quad);
        CHECK(r.max_gap < 1e-9);
        CHECK(std::abs(r.area_sum - 4 * pi) < 1e-9);
    }
}

TEST_CASE("realization failures") {
    SphericalQuad q = closed_form_family(24);
    q.a += 1e-2;
    try {
        realize(pq_earth_map(24), q);
        FAIL("perturbed tile closed");
    } catch (const RealizationError& e) {
        CHECK(e.gap() > 1e-6);
        CHECK(e.worst_vertex() >= 0);
    }
    // Tile angles that do not fit the vertices are rejected before placement.
    CHECK_THROWS_AS(realize(pq_earth_map(24), closed_form_cube_subdivision(0.4 * pi)), RealizationError);
    CHECK_THROWS_AS(realize(pq_earth_map(16), closed_form_family(24)), RealizationError);
}

TEST_CASE("OBJ and SVG export") {
    TilingMap m = pq_earth_map(16);
    Realization r = realize(m, closed_form_family(16));
    std::string obj = to_obj(m, r);
    CHECK(count_lines(obj, "v ") == static_cast<std::size_t>(m.vertex_count()));
    CHECK(count_lines(obj, "f ") == 16);
    CHECK(count_lines(obj, "l ") == 0);
    std::string sampled = to_obj(m, r, 8);
    CHECK(count_lines(sampled, "l ") == m.edges().size());
    CHECK(count_lines(sampled, "v ") == static_cast<std::size_t>(m.vertex_count()) + 8 * m.edges().size());

    std::string svg = to_svg(m, r);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("class=\"a\"") != std::string::npos);
    CHECK(svg.find("class=\"b\"") != std::string::npos);
    CHECK(svg.find("class=\"b-inner\"") != std::string::npos);
    CHECK(svg.find("class=\"c\"") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
}

TEST_CASE("realized tile areas agree with the angle excess") {
    SphericalQuad q = closed_form_family(24);
    Realization r = realize(pq_earth_map(24), q);
    CHECK(r.area_sum / 24 == doctest::Approx(oracle::polygon_excess({q.alpha, q.beta, q.gamma, q.delta})));
}
