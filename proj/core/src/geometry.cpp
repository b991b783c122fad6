#include "quadtile/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "quadtile/tilingmap.hpp"

namespace quadtile {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt5 = std::sqrt(5.0);

constexpr double kIdentityTol = 1e-9;
constexpr double kEdgeTol = 1e-9;

double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }
Vec3 cross(const Vec3& x, const Vec3& y) {
    return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}
Vec3 add(const Vec3& x, const Vec3& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2]}; }
Vec3 scale(double s, const Vec3& x) { return {s * x[0], s * x[1], s * x[2]}; }
double norm(const Vec3& x) { return std::sqrt(dot(x, x)); }
Vec3 normalized(const Vec3& x) { return scale(1.0 / norm(x), x); }
Vec3 mat_vec(const Mat3& m, const Vec3& x) {
    return {dot(m[0], x), dot(m[1], x), dot(m[2], x)};
}

/// Great-circle distance, accurate near 0 and π.
double arc(const Vec3& x, const Vec3& y) { return std::atan2(norm(cross(x, y)), dot(x, y)); }

/// Counterclockwise angle (about the outward normal at p) from the direction of r to the direction of q.
double corner_angle(const Vec3& p, const Vec3& q, const Vec3& r) {
    Vec3 tq = add(q, scale(-dot(p, q), p));
    Vec3 tr = add(r, scale(-dot(p, r), p));
    double ang = std::atan2(dot(p, cross(tr, tq)), dot(tr, tq));
    return ang < 0 ? ang + 2 * pi : ang;
}

/// Signed spherical excess of triangle xyz.
double triangle_excess(const Vec3& x, const Vec3& y, const Vec3& z) {
    double num = dot(x, cross(y, z));
    double den = 1 + dot(x, y) + dot(y, z) + dot(z, x);
    return 2 * std::atan2(num, den);
}

double clamp_cos(double x, const char* what) {
    if (x < -1 - 1e-12 || x > 1 + 1e-12) throw GeometryError(std::string(what) + " out of [-1, 1]");
    return std::clamp(x, -1.0, 1.0);
}

void check_distinct(const SphericalQuad& q) {
    if (std::abs(q.a - q.b) < kEdgeTol) throw DegeneracyError("a=b", "degenerate quadrilateral: a = b");
    if (std::abs(q.a - q.c) < kEdgeTol) throw DegeneracyError("a=c", "degenerate quadrilateral: a = c");
    if (std::abs(q.b - q.c) < kEdgeTol) throw DegeneracyError("b=c", "degenerate quadrilateral: b = c");
}

/// Roots of h on (lo, hi) from sign changes on a uniform grid, refined by TOMS 748.
std::vector<double> scan_roots(const std::function<double(double)>& h, double lo, double hi, int n,
                               const std::function<bool(double)>& skip) {
    std::vector<double> roots;
    double step = (hi - lo) / n;
    double x0 = lo + step / 2, h0 = h(x0);
    for (int i = 1; i < n; ++i) {
        double x1 = lo + step / 2 + i * step, h1 = h(x1);
        if (skip(x0) || skip(x1)) {
            x0 = x1;
            h0 = h1;
            continue;
        }
        if (h0 == 0) {
            roots.push_back(x0);
        } else if (h0 * h1 < 0) {
            std::uintmax_t iters = 200;
            auto r = boost::math::tools::toms748_solve(h, x0, x1, h0, h1,
                                                       boost::math::tools::eps_tolerance<double>(52), iters);
            roots.push_back((r.first + r.second) / 2);
        }
        x0 = x1;
        h0 = h1;
    }
    return roots;
}

}  // namespace

Mat3 identity3() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) out[i][j] += x[i][k] * y[k][j];
    return out;
}

Mat3 rot_y(double x) {
    double c = std::cos(x), s = std::sin(x);
    return {{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}};
}

Mat3 rot_z_supplement(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return {{{-c, -s, 0}, {s, -c, 0}, {0, 0, 1}}};
}

Mat3 holonomy(const SphericalQuad& q) {
    return rot_y(q.b) * rot_z_supplement(q.beta) * rot_y(q.a) * rot_z_supplement(q.alpha) * rot_y(q.a) *
           rot_z_supplement(q.delta) * rot_y(q.c) * rot_z_supplement(q.gamma);
}

double holonomy_residual(const SphericalQuad& q) {
    Mat3 m = holonomy(q);
    Mat3 id = identity3();
    double r = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(m[i][j] - id[i][j]));
    return r;
}

std::array<double, 3> trig_residuals(const SphericalQuad& q) {
    double ca = std::cos(q.a), cb = std::cos(q.b), cc = std::cos(q.c);
    double sa = std::sin(q.alpha), sb = std::sin(q.beta), sg = std::sin(q.gamma), sd = std::sin(q.delta);
    double cal = std::cos(q.alpha), cbe = std::cos(q.beta), cga = std::cos(q.gamma), cde = std::cos(q.delta);
    double r10 = (cal - 1) * sb * sd * ca * ca + sa * (cbe * sd + cde * sb) * ca + sb * sd + cga - cal * cbe * cde;
    double r11 = cb - (ca * sa * sd + cbe * cga - cal * cde) / (sb * sg);
    double r12 = cc + (cde * sb * (cal - 1) * ca * ca + sa * (cbe * cde - sb * sd) * ca + cal * cbe * sd + cde * sb) / sg;
    return {r10, r11, r12};
}

std::vector<SphericalQuad> solve_edges(double alpha, double beta, double gamma, double delta) {
    for (double x : {alpha, beta, gamma, delta})
        if (!(x > 0 && x < 2 * pi)) throw GeometryError("angles must lie in (0, 2π)");
    if (alpha + beta + gamma + delta <= 2 * pi) throw GeometryError("angle sum must exceed 2π");
    if (std::abs(beta - delta) < kIdentityTol && std::abs(gamma - pi) > kIdentityTol)
        throw DegeneracyError("beta=delta", "β = δ with γ ≠ π admits no a²bc tile");
    double sa = std::sin(alpha), sb = std::sin(beta), sg = std::sin(gamma), sd = std::sin(delta);
    double cal = std::cos(alpha), cbe = std::cos(beta), cga = std::cos(gamma), cde = std::cos(delta);
    if (std::abs(sg) < 1e-12 || std::abs(sb * sg) < 1e-12)
        throw GeometryError("singular division: sin β sin γ = 0");

    double A2 = (cal - 1) * sb * sd;
    double A1 = sa * (cbe * sd + cde * sb);
    double A0 = sb * sd + cga - cal * cbe * cde;
    std::vector<double> roots;
    if (std::abs(A2) < 1e-14) {
        if (std::abs(A1) > 1e-14) roots.push_back(-A0 / A1);
    } else {
        double disc = A1 * A1 - 4 * A2 * A0;
        if (disc < 0) return {};
        double sq = std::sqrt(disc);
        // Stable pair of roots.
        double qq = -0.5 * (A1 + std::copysign(sq, A1));
        roots.push_back(qq / A2);
        if (qq != 0) roots.push_back(A0 / qq);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

    std::vector<SphericalQuad> out;
    for (double ca : roots) {
        if (ca < -1 - 1e-12 || ca > 1 + 1e-12) continue;
        ca = std::clamp(ca, -1.0, 1.0);
        double cb = (ca * sa * sd + cbe * cga - cal * cde) / (sb * sg);
        double cc = -(cde * sb * (cal - 1) * ca * ca + sa * (cbe * cde - sb * sd) * ca + cal * cbe * sd + cde * sb) / sg;
        if (cb < -1 - 1e-12 || cb > 1 + 1e-12 || cc < -1 - 1e-12 || cc > 1 + 1e-12) continue;
        SphericalQuad q{std::acos(ca), std::acos(std::clamp(cb, -1.0, 1.0)), std::acos(std::clamp(cc, -1.0, 1.0)),
                        alpha, beta, gamma, delta};
        if (holonomy_residual(q) < kIdentityTol) out.push_back(q);
    }
    return out;
}

SphericalQuad closed_form_family(int f) {
    if (f <= 8) throw GeometryError("closed_form_family needs f > 8, got " + std::to_string(f));
    const double A = 4 * pi / f;
    const double u = std::cos(A);
    SphericalQuad q;
    q.alpha = pi - 8 * pi / f;
    q.beta = pi / 2 + 4 * pi / f;
    q.gamma = pi / 2;
    q.delta = 8 * pi / f;
    q.a = std::acos(clamp_cos((4 * u * u + sqrt5 - 3) / (4 * u * u), "cos a"));
    q.b = std::acos(clamp_cos((-(sqrt5 - 3) * u * u + sqrt5 - 2) / u, "cos b"));
    q.c = std::acos(clamp_cos((sqrt5 - 1) / (4 * u), "cos c"));
    check_distinct(q);
    if (f % 8 != 0 || f < 16)
        throw GeometryError("closed_form_family needs f = 0 mod 8 and f >= 16, got " + std::to_string(f));
    return q;
}

SphericalQuad closed_form_cube_subdivision(double delta) {
    if (!(delta > pi / 4 && delta < 3 * pi / 4))
        throw GeometryError("closed_form_cube_subdivision needs δ in (π/4, 3π/4)");
    double s = std::sin(delta), c = std::cos(delta);
    double r = std::sqrt(3 * s * s - 1);
    SphericalQuad q;
    q.alpha = 2 * pi / 3;
    q.beta = pi - delta;
    q.gamma = pi / 2;
    q.delta = delta;
    q.a = std::acos(clamp_cos(r / (std::sqrt(3.0) * s), "cos a"));
    q.b = std::acos(clamp_cos((r + c) / (2 * s), "cos b"));
    q.c = std::acos(clamp_cos((r - c) / (2 * s), "cos c"));
    check_distinct(q);
    return q;
}

std::vector<DegeneracyLocus> family_degeneracy_loci() {
    // Differences of the closed-form cosines times 4u², u = cos(4π/f).
    auto A = [](double u) { return 4 * u * u + sqrt5 - 3; };
    auto B = [](double u) { return 4 * u * (-(sqrt5 - 3) * u * u + sqrt5 - 2); };
    auto C = [](double u) { return (sqrt5 - 1) * u; };
    std::vector<std::pair<std::string, std::function<double(double)>>> pairs = {
        {"a=b", [&](double u) { return A(u) - B(u); }},
        {"a=c", [&](double u) { return A(u) - C(u); }},
        {"b=c", [&](double u) { return B(u) - C(u); }},
    };
    std::vector<DegeneracyLocus> out;
    for (const auto& [name, h] : pairs) {
        auto roots = scan_roots(h, -1.0, 1.0, 20000, [](double u) { return std::abs(u) < 1e-3; });
        std::vector<double> fs;
        for (double u : roots) fs.push_back(4 * pi / std::acos(u));
        std::sort(fs.begin(), fs.end());
        for (double f : fs) out.push_back({name, f});
    }
    return out;
}

std::vector<CubeExclusion> cube_exclusions() {
    auto ca = [](double d) { return std::sqrt(3 * std::sin(d) * std::sin(d) - 1) / (std::sqrt(3.0) * std::sin(d)); };
    auto cb = [](double d) { return (std::sqrt(3 * std::sin(d) * std::sin(d) - 1) + std::cos(d)) / (2 * std::sin(d)); };
    auto cc = [](double d) { return (std::sqrt(3 * std::sin(d) * std::sin(d) - 1) - std::cos(d)) / (2 * std::sin(d)); };
    std::vector<std::pair<std::string, std::function<double(double)>>> pairs = {
        {"a=b", [&](double d) { return ca(d) - cb(d); }},
        {"a=c", [&](double d) { return ca(d) - cc(d); }},
        {"b=c", [&](double d) { return cb(d) - cc(d); }},
    };
    std::vector<CubeExclusion> out;
    for (const auto& [name, h] : pairs)
        for (double d : scan_roots(h, pi / 4, 3 * pi / 4, 20001, [](double) { return false; }))
            out.push_back({name, d});
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.delta < y.delta; });
    return out;
}

LuneQuad lune_quad(double a, double alpha, double theta, bool exterior) {
    if (!(a > 0 && a < pi)) throw GeometryError("lune_quad needs a in (0, π)");
    if (!(alpha > 0 && alpha < pi)) throw GeometryError("lune_quad needs α in (0, π)");
    if (exterior) {
        if (!(a < pi / 2)) throw GeometryError("exterior lune_quad needs a < π/2; the quadrilateral is not simple");
        if (!(theta > 0 && theta < pi - alpha)) throw GeometryError("exterior lune_quad needs θ in (0, π − α)");
    } else if (!(theta > 0 && theta < alpha)) {
        throw GeometryError("interior lune_quad needs θ in (0, α)");
    }
    auto point = [](double colat, double lon) {
        return Vec3{std::sin(colat) * std::cos(lon), std::sin(colat) * std::sin(lon), std::cos(colat)};
    };
    Vec3 A{0, 0, 1};
    Vec3 B = point(a, 0);
    Vec3 C = point(pi - a, exterior ? -theta : theta);
    Vec3 D = point(a, alpha);

    LuneQuad out;
    SphericalQuad& q = out.quad;
    q.a = a;
    q.b = arc(B, C);
    q.c = arc(C, D);
    q.alpha = corner_angle(A, D, B);
    q.beta = corner_angle(B, A, C);
    q.gamma = corner_angle(C, B, D);
    q.delta = corner_angle(D, C, A);
    for (double x : {q.alpha, q.beta, q.gamma, q.delta})
        if (x < 1e-9 || x > 2 * pi - 1e-9 || std::abs(x - pi) < 1e-9)
            throw GeometryError("lune_quad: near-degenerate corner");
    if (std::abs(q.a - q.b) < kEdgeTol) out.warnings.push_back("a=b");
    if (std::abs(q.a - q.c) < kEdgeTol) out.warnings.push_back("a=c");
    if (std::abs(q.b - q.c) < kEdgeTol) out.warnings.push_back("b=c");
    return out;
}

double area(const SphericalQuad& q) { return q.alpha + q.beta + q.gamma + q.delta - 2 * pi; }

CheckReport convexity_bounds(const SphericalQuad& q, int f) {
    CheckReport rep;
    const double lb = 2 * pi / f;
    const char* names[4] = {"alpha > 2pi/f", "beta > 2pi/f", "gamma > 2pi/f", "delta > 2pi/f"};
    double angles[4] = {q.alpha, q.beta, q.gamma, q.delta};
    for (int i = 0; i < 4; ++i) rep.add(names[i], angles[i] > lb);
    rep.add("gamma + delta < pi + beta", q.gamma + q.delta < pi + q.beta);
    rep.add("gamma + beta < pi + delta", q.gamma + q.beta < pi + q.delta);
    return rep;
}

namespace {

/// Corners of a tile with A at the north pole and AB along the prime meridian, counterclockwise.
std::array<Vec3, 4> local_tile(const SphericalQuad& q, bool mirrored) {
    Vec3 p{0, 0, 1}, t{1, 0, 0};
    const double len[4] = {q.a, q.b, q.c, q.a};
    const double ang[4] = {q.alpha, q.beta, q.gamma, q.delta};
    std::array<Vec3, 4> out;
    for (int k = 0; k < 4; ++k) {
        out[k] = p;
        if (k == 3) break;
        double d = len[k];
        Vec3 np = add(scale(std::cos(d), p), scale(std::sin(d), t));
        Vec3 nt = add(scale(-std::sin(d), p), scale(std::cos(d), t));
        p = np;
        t = nt;
        double turn = pi - ang[k + 1];
        t = add(scale(std::cos(turn), t), scale(std::sin(turn), cross(p, t)));
    }
    if (mirrored)
        for (auto& v : out) v[1] = -v[1];
    return out;
}

/// Frame with columns x, the unit component of y orthogonal to x, and their cross product.
Mat3 frame(const Vec3& x, const Vec3& y) {
    Vec3 e1 = normalized(x);
    Vec3 e2 = normalized(add(y, scale(-dot(e1, y), e1)));
    Vec3 e3 = cross(e1, e2);
    return {{{e1[0], e2[0], e3[0]}, {e1[1], e2[1], e3[1]}, {e1[2], e2[2], e3[2]}}};
}

Mat3 transpose(const Mat3& m) {
    Mat3 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
    return t;
}

}  // namespace

Realization realize(const TilingMap& map, const SphericalQuad& q, double tol) {
    const double ang[4] = {q.alpha, q.beta, q.gamma, q.delta};
    for (int v = 0; v < map.vertex_count(); ++v) {
        const auto& s = map.vertices()[v].signature;
        double sum = s.a * ang[0] + s.b * ang[1] + s.c * ang[2] + s.d * ang[3];
        if (std::abs(sum - 2 * pi) > 1e-9)
            throw RealizationError("angles incompatible with vertex " + std::to_string(v) + " (" + s.str() +
                                       "): angle sum - 2π = " + std::to_string(sum - 2 * pi),
                                   v, std::abs(sum - 2 * pi));
    }

    const std::array<Vec3, 4> local[2] = {local_tile(q, false), local_tile(q, true)};
    const int f = map.f();
    Realization r;
    r.tiles.assign(f, {});
    std::vector<char> placed(f, 0);
    r.tiles[0] = local[0];
    placed[0] = 1;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        for (int k = 0; k < 4; ++k) {
            int s2 = map.glue(slot_of(t, k));
            int u = slot_tile(s2), g = slot_edge(s2);
            if (placed[u]) continue;
            bool par = map.parallel(slot_of(t, k));
            // Targets for corners g and g+1 of u.
            const Vec3& p_start = r.tiles[t][k];
            const Vec3& p_end = r.tiles[t][(k + 1) % 4];
            const Vec3& tg0 = par ? p_start : p_end;
            const Vec3& tg1 = par ? p_end : p_start;
            const auto& lu = local[map.orientation(u)];
            Mat3 rot = frame(tg0, tg1) * transpose(frame(lu[g], lu[(g + 1) % 4]));
            for (int c = 0; c < 4; ++c) r.tiles[u][c] = mat_vec(rot, lu[c]);
            placed[u] = 1;
            queue.push_back(u);
        }
    }

    const int V = map.vertex_count();
    std::vector<std::vector<Vec3>> seen(V);
    for (int t = 0; t < f; ++t)
        for (int c = 0; c < 4; ++c) seen[map.vertex_of(t, c)].push_back(r.tiles[t][c]);
    r.vertices.resize(V);
    for (int v = 0; v < V; ++v) {
        Vec3 sum{0, 0, 0};
        for (const auto& p : seen[v]) sum = add(sum, p);
        r.vertices[v] = normalized(sum);
        for (const auto& p : seen[v]) {
            double gap = norm(add(p, scale(-1, r.vertices[v])));
            if (gap > r.max_gap) {
                r.max_gap = gap;
                r.worst_vertex = v;
            }
        }
    }

    const double len[4] = {q.a, q.b, q.c, q.a};
    r.tile_residuals.assign(f, 0);
    for (int t = 0; t < f; ++t) {
        const auto& P = r.tiles[t];
        double excess = triangle_excess(P[0], P[1], P[2]) + triangle_excess(P[0], P[2], P[3]);
        r.area_sum += std::abs(excess);
        for (int k = 0; k < 4; ++k) {
            double d = arc(r.vertices[map.vertex_of(t, k)], r.vertices[map.vertex_of(t, (k + 1) % 4)]);
            r.tile_residuals[t] = std::max(r.tile_residuals[t], std::abs(d - len[k]));
        }
    }
    if (r.max_gap > tol)
        throw RealizationError("closure failure at vertex " + std::to_string(r.worst_vertex) +
                                   ": gap " + std::to_string(r.max_gap),
                               r.worst_vertex, r.max_gap);
    return r;
}

}  // namespace quadtile
