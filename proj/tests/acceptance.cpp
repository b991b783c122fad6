// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "quadtile/angles.hpp"
#include "quadtile/combinatorics.hpp"
#include "quadtile/constructors.hpp"
#include "quadtile/geometry.hpp"
#include "quadtile/symmetry.hpp"
#include "quadtile/tilingmap.hpp"

using namespace quadtile;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) detail << "; ";
            detail << what;
            ok = false;
        }
    }
};

std::vector<VertexSignature> sigs(const std::string& text) { return parse_signature_list(text); }

AngleExpr ang(long n0, long d0, long n1 = 0) { return AngleExpr(Rational(n0) / d0, Rational(n1)); }

void catalog(Outcome& out) {
    const std::size_t sizes[3] = {4, 9, 11};
    for (int k = 3; k <= 5; ++k) {
        auto lit = degree_vertex_catalog(k);
        out.expect(lit.size() == sizes[k - 3], "degree " + std::to_string(k) + " size");
        out.expect(lit == oracle::brute_force_catalog(k), "degree " + std::to_string(k) + " differs from brute force");
    }
}

void families(Outcome& out) {
    auto check = [&](const std::string& name, const TilingMap& m, const std::vector<VertexSignature>& avc) {
        auto rep = verify(m, avc, m.f());
        for (const auto& it : rep.failures()) out.expect(false, name + ": " + it.name + " " + it.detail);
    };
    for (int f : {6, 8, 10, 12, 50})
        check("earth_map(" + std::to_string(f) + ")", earth_map(f), {{f / 2, 0, 0, 0}, {0, 1, 1, 1}});
    for (int f : {16, 24, 32})
        check("pq_earth_map(" + std::to_string(f) + ")", pq_earth_map(f),
              {{1, 2, 0, 0}, {2, 0, 0, 2}, {0, 0, 4, 0}, {0, 0, 0, f / 4}});
    check("cube", quad_subdivide(Base::cube), sigs("α³,β²δ²,γ⁴"));
    check("octahedron", quad_subdivide(Base::octahedron), sigs("α³,β²δ²,γ⁴"));
    check("prism", quad_subdivide(Base::triangular_prism), sigs("α³,αβ²,α²δ²,β²δ²,γ⁴"));
    for (int f : {24, 40}) {
        check("alphadelta(" + std::to_string(f) + ")", family_alphadelta(f),
              {{1, 2, 0, 0}, {2, 0, 0, 2}, {0, 0, 4, 0}, {1, 0, 0, (f + 8) / 8}});
        check("beta2delta(" + std::to_string(f) + ")", family_beta2delta(f),
              {{1, 2, 0, 0}, {2, 0, 0, 2}, {0, 0, 4, 0}, {0, 2, 0, (f - 8) / 8}, {1, 0, 0, (f + 8) / 8}});
    }
}

void angle_formulas(Outcome& out) {
    auto unique = [&](const std::string& system, const AngleSet& expected) {
        auto sol = solve_angle_system(sigs(system), true);
        out.expect(sol.kind == AngleSolution::Kind::unique && sol.assignment() == expected, "{" + system + "}");
    };
    // (f/4,4)-earth map and its flip modifications.
    unique("αβ²,α²δ²,γ⁴", {ang(1, 1, -8), ang(1, 2, 4), ang(1, 2), ang(0, 1, 8)});
    // Triangular prism subdivision.
    unique("α³,αβ²,γ⁴", {ang(2, 3), ang(2, 3), ang(1, 2), ang(1, 6, 4)});
    unique("αβ²,γ⁴,δ⁴", {ang(0, 1, 8), ang(1, 1, -4), ang(1, 2), ang(1, 2)});

    // Earth map: α = 4π/f, β + γ + δ = 2π.
    auto earth = solve_angle_system(sigs("βγδ"), true);
    out.expect(earth.kind == AngleSolution::Kind::parametric && earth.expressions[0].constant == ang(0, 1, 4) &&
                   earth.expressions[3].constant == ang(2, 1) && earth.expressions[3].coeff[1] == -1 &&
                   earth.expressions[3].coeff[2] == -1,
               "{βγδ}");
    // Cube subdivision at f = 24: α = 2π/3, γ = π/2, β + δ = π.
    auto cube = solve_angle_system(sigs("α³,β²δ²,γ⁴"), true, 24);
    out.expect(cube.kind == AngleSolution::Kind::parametric && cube.expressions[0].constant == ang(2, 3) &&
                   cube.expressions[2].constant == ang(1, 2) && cube.expressions[3].constant == ang(1, 1) &&
                   cube.expressions[3].coeff[1] == -1,
               "{α³, β²δ², γ⁴}");
    // αβ² with αδ²: β = δ = π − α/2, γ = 4π/f.
    auto ab = solve_angle_system(sigs("αβ²,αδ²"), true);
    out.expect(ab.kind == AngleSolution::Kind::parametric && ab.expressions[1].constant == ang(1, 1) &&
                   ab.expressions[1].coeff[0] == Rational(-1) / 2 && ab.expressions[3].coeff[0] == Rational(-1) / 2 &&
                   ab.expressions[2].constant == ang(0, 1, 4),
               "{αβ², αδ²}");
}

void closed_form(Outcome& out) {
    SphericalQuad q = closed_form_family(24);
    const double s5 = std::sqrt(5.0), s3 = std::sqrt(3.0);
    out.expect(std::abs(std::cos(q.a) - s5 / 3) < 1e-12, "cos a");
    out.expect(std::abs(std::cos(q.b) - (s5 + 1) / (2 * s3)) < 1e-12, "cos b");
    out.expect(std::abs(std::cos(q.c) - (s5 - 1) / (2 * s3)) < 1e-12, "cos c");
    out.expect(holonomy_residual(q) < 1e-9, "holonomy residual");
    for (double r : trig_residuals(q)) out.expect(std::abs(r) < 1e-9, "trig residual");
    SphericalQuad c = closed_form_cube_subdivision(pi / 3);
    double diff = std::max({std::abs(q.a - c.a), std::abs(q.b - c.b), std::abs(q.c - c.c), std::abs(q.alpha - c.alpha),
                            std::abs(q.beta - c.beta), std::abs(q.gamma - c.gamma), std::abs(q.delta - c.delta)});
    out.expect(diff < 1e-12, "family(24) vs cube(π/3) differ by " + std::to_string(diff));
}

void degeneracy(Outcome& out) {
    // Agreement to n significant figures: within half a unit of the n-th digit.
    auto sig_figs = [](double x, double ref, int n) {
        double unit = std::pow(10.0, std::floor(std::log10(std::abs(ref))) - (n - 1));
        return std::abs(x - ref) <= unit / 2;
    };
    bool ab = false, ac = false, bc = false;
    for (const auto& l : family_degeneracy_loci()) {
        if (l.pair == "a=b") ab |= sig_figs(l.f, 6.666661841292876, 6);
        if (l.pair == "a=c") ac |= sig_figs(l.f, 13.89229433053042, 6);
        if (l.pair == "b=c") bc |= std::abs(l.f - 10) < 1e-12;
    }
    out.expect(ab, "a=b root");
    out.expect(ac, "a=c root");
    out.expect(bc, "b=c at f = 10");
    bool lo = false, hi = false;
    for (const auto& e : cube_exclusions()) {
        lo |= sig_figs(e.delta / pi, 0.4322221997677038, 10);
        hi |= sig_figs(e.delta / pi, 0.5677778002322962, 10);
    }
    out.expect(lo, "exclusion 0.4322221998");
    out.expect(hi, "exclusion 0.5677778002");
}

void realization(Outcome& out) {
    auto run = [&](const std::string& name, const TilingMap& m, const SphericalQuad& q) {
        try {
            Realization r = realize(m, q);
            out.expect(r.max_gap < 1e-6, name + " gap " + std::to_string(r.max_gap));
            out.expect(std::abs(r.area_sum - 4 * pi) < 1e-6, name + " area");
        } catch (const std::exception& e) {
            out.expect(false, name + ": " + e.what());
        }
    };
    run("pq16", pq_earth_map(16), closed_form_family(16));
    run("pq24", pq_earth_map(24), closed_form_family(24));
    run("cube", quad_subdivide(Base::cube), closed_form_cube_subdivision(pi / 3));
    run("prism", quad_subdivide(Base::triangular_prism), closed_form_cube_subdivision(pi / 3));
}

void symmetry(Outcome& out) {
    auto check = [&](const std::string& name, const TilingMap& m, const std::string& cls, int order) {
        SymmetryClass sc = classify(m);
        out.expect(sc.name == cls, name + " is " + sc.name + ", expected " + cls);
        out.expect(sc.order == order, name + " order " + std::to_string(sc.order));
        out.expect(oracle::face_automorphism_count(m) == order, name + " oracle order");
        return sc;
    };
    for (int f : {6, 8, 12, 50}) {
        SymmetryClass sc = check("earth_map(" + std::to_string(f) + ")", earth_map(f), "D_" + std::to_string(f / 2), f);
        out.expect(sc.rotation_order == sc.order, "earth map has reversing elements");
        out.expect(sc.family_label == "D_{f/2}", "earth map label");
    }
    SymmetryClass cube = check("cube", quad_subdivide(Base::cube), "T_h", 24);
    out.expect(cube.inversion, "cube inversion");
    check("prism", quad_subdivide(Base::triangular_prism), "D_3", 6);
    SymmetryClass pq = check("pq16", pq_earth_map(16), "D_2d", 8);
    out.expect(pq.family_label == "D_{f/8 v}", "pq16 label " + pq.family_label);
    out.expect(pq.mirrors > 0, "pq16 mirrors");
    out.expect(!pq.horizontal_mirror, "pq16 horizontal mirror");
    check("beta2delta(24)", family_beta2delta(24), "C_2", 2);
    check("alphadelta(24)", family_alphadelta(24), "D_2", 4);
}

void avc_search(Outcome& out) {
    for (int f : {6, 16, 24}) {
        AVCSearchResult r = search_avcs(f, f / 2);
        out.expect(!r.truncated, "f=" + std::to_string(f) + " truncated");
        for (const auto& fam : known_families(f)) {
            const AVCCandidate* c = r.find(fam.avc);
            out.expect(c != nullptr, "f=" + std::to_string(f) + " missing " + fam.name);
        }
        if (f > 8) {
            bool flagged = true, present = false;
            for (const auto& c : r.candidates) {
                bool has_ab2 = false, has_g2d2 = false;
                for (const auto& s : c.signatures) {
                    has_ab2 |= s == VertexSignature{1, 2, 0, 0};
                    has_g2d2 |= s == VertexSignature{0, 0, 2, 2};
                }
                if (!(has_ab2 && has_g2d2)) continue;
                present = true;
                flagged &= !c.flags.empty() && c.realized_by.empty();
            }
            out.expect(flagged, "f=" + std::to_string(f) + " unflagged {αβ², γ²δ²} candidate");
            if (f == 24) out.expect(present, "f=24 no {αβ², γ²δ²} candidate to flag");
        }
    }
}

void properties(Outcome& out) {
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> e(0, 7);
    for (int i = 0; i < 1000; ++i) {
        VertexSignature s{e(rng), e(rng), e(rng), e(rng)};
        if (s.degree() < 3) s.a += 3;
        if (parity_admissible(s) != oracle::listed_vertex(s)) {
            out.expect(false, "parity disagrees at " + s.str());
            break;
        }
    }
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        bool ext = i % 2;
        double a = (ext ? pi / 2 : pi) * unit(rng), alpha = pi * unit(rng);
        double theta = (ext ? pi - alpha : alpha) * unit(rng);
        worst = std::max(worst, std::abs(area(lune_quad(a, alpha, theta, ext).quad) - alpha));
    }
    out.expect(worst < 1e-9, "lune area error " + std::to_string(worst));

    TilingMap pq = pq_earth_map(40);
    auto zones = decompose_time_zones(pq);
    const int n = static_cast<int>(zones.size());
    int done = 0;
    for (int trial = 0; trial < 200 && done < 10; ++trial) {
        int start = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int count = std::uniform_int_distribution<int>(1, n - 1)(rng);
        std::vector<int> tiles;
        for (int i = 0; i < count; ++i)
            for (int t : zones[(start + i) % n].tiles) tiles.push_back(t);
        try {
            TilingMap twice = flip_disk(flip_segment(pq, start, count), tiles);
            out.expect(isomorphic(twice, pq), "double flip changed the map");
            ++done;
        } catch (const FlipInvalid&) {
        }
    }
    out.expect(done == 10, "only " + std::to_string(done) + " admissible segments");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void(Outcome&)> run;
    };
    const Criterion criteria[] = {
        {"catalog exactness", catalog},
        {"family verification", families},
        {"angle solver formulas", angle_formulas},
        {"closed-form geometry at f=24", closed_form},
        {"degeneracy loci", degeneracy},
        {"realization closure", realization},
        {"symmetry classification", symmetry},
        {"AVC search", avc_search},
        {"property suites", properties},
    };
    int failed = 0, index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome out;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %d. %s (%.2fs)%s%s\n", out.ok ? "PASS" : "FAIL", index, c.name, secs,
                    out.ok ? "" : ": ", out.detail.str().c_str());
        failed += !out.ok;
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed ? 1 : 0;
}
