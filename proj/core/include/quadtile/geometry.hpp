#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadtile/report.hpp"

namespace quadtile {

class TilingMap;

/// Edges a, b, c and angles at corners A, B, C, D, all in radians.
struct SphericalQuad {
    double a = 0;
    double b = 0;
    double c = 0;
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
    double delta = 0;
};

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

Mat3 identity3();
Mat3 operator*(const Mat3& x, const Mat3& y);
/// Rotation about the y-axis by x.
Mat3 rot_y(double x);
/// Z(π − θ).
Mat3 rot_z_supplement(double theta);

/// Y(b)Z(π−β)Y(a)Z(π−α)Y(a)Z(π−δ)Y(c)Z(π−γ).
Mat3 holonomy(const SphericalQuad& q);
/// Max-abs entry of holonomy(q) − I.
double holonomy_residual(const SphericalQuad& q);

/// Residuals of the quadratic in cos a, and of the linear expressions for cos b and cos c.
std::array<double, 3> trig_residuals(const SphericalQuad& q);

class GeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two of a, b, c coincide, or β = δ with γ ≠ π.
class DegeneracyError : public GeometryError {
public:
    DegeneracyError(const std::string& pair, const std::string& what) : GeometryError(what), pair_(pair) {}
    /// "a=b", "a=c", "b=c" or "beta=delta"
    const std::string& pair() const { return pair_; }

private:
    std::string pair_;
};

/// Both roots of the cos a quadratic, cos b and cos c from the linear equations, filtered by
/// range and holonomy residual < 1e-9.
std::vector<SphericalQuad> solve_edges(double alpha, double beta, double gamma, double delta);

/// Tile of the (f/4,4)-earth map family: α = π−8π/f, β = π/2+4π/f, γ = π/2, δ = 8π/f.
SphericalQuad closed_form_family(int f);

/// Cube subdivision tile: α = 2π/3, β = π−δ, γ = π/2, δ ∈ (π/4, 3π/4).
SphericalQuad closed_form_cube_subdivision(double delta);

struct DegeneracyLocus {
    std::string pair;
    double f = 0;
};

/// Values of f (as a real parameter) where two edges of closed_form_family coincide. Sorted by pair, then f.
std::vector<DegeneracyLocus> family_degeneracy_loci();

struct CubeExclusion {
    std::string pair;
    double delta = 0;
};

/// δ ∈ (π/4, 3π/4) where two edges of closed_form_cube_subdivision coincide, ascending.
std::vector<CubeExclusion> cube_exclusions();

struct LuneQuad {
    SphericalQuad quad;
    std::vector<std::string> warnings;  ///< edge coincidences "a=b", "a=c", "b=c"
};

/// A at the north pole, B and D at distance a on meridians 0 and α, C at distance π−a on
/// meridian θ (interior) or −θ (exterior).
LuneQuad lune_quad(double a, double alpha, double theta, bool exterior);

/// α + β + γ + δ − 2π.
double area(const SphericalQuad& q);

/// Each angle > 2π/f, γ+δ < π+β, γ+β < π+δ.
CheckReport convexity_bounds(const SphericalQuad& q, int f);

struct Realization {
    std::vector<Vec3> vertices;                   ///< unit vectors, indexed by map vertex
    std::vector<std::array<Vec3, 4>> tiles;       ///< placed corners A, B, C, D per tile
    std::vector<double> tile_residuals;           ///< max edge-length deviation per tile
    double max_gap = 0;                           ///< max corner mismatch at a vertex
    int worst_vertex = -1;
    double area_sum = 0;
};

class RealizationError : public std::runtime_error {
public:
    RealizationError(const std::string& what, int worst_vertex, double gap)
        : std::runtime_error(what), worst_vertex_(worst_vertex), gap_(gap) {}
    int worst_vertex() const { return worst_vertex_; }
    double gap() const { return gap_; }

private:
    int worst_vertex_;
    double gap_;
};

/// Places tile 0 with A at the north pole and AB along the prime meridian, then propagates
/// across the glue breadth first. Throws on angle/AVC mismatch or on closure gap > tol.
Realization realize(const TilingMap& map, const SphericalQuad& q, double tol = 1e-6);

/// Wavefront OBJ. With samples > 1 each edge is also emitted as a geodesic polyline.
std::string to_obj(const TilingMap& map, const Realization& r, int samples = 0);

/// Stereographic projection from the south pole; edge classes a (thin), b (double), c (heavy).
std::string to_svg(const TilingMap& map, const Realization& r);

}  // namespace quadtile
