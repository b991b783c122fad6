#pragma once

#include <string>
#include <vector>

namespace quadtile {

class TilingMap;

/// Tile t goes to tiles[t]; corner k of t goes to corner k of tiles[t].
struct MapAutomorphism {
    std::vector<int> tiles;
    bool preserving = true;

    int order() const;
    bool is_identity() const;
    MapAutomorphism operator*(const MapAutomorphism& rhs) const;  ///< (this ∘ rhs)
    MapAutomorphism inverse() const;
    auto operator<=>(const MapAutomorphism&) const = default;
};

/// All label- and glue-preserving tile permutations, sorted.
std::vector<MapAutomorphism> automorphisms(const TilingMap& map);

std::vector<int> fixed_vertices(const TilingMap& map, const MapAutomorphism& g);
/// Edges mapped to themselves (endpoints fixed or swapped).
std::vector<int> fixed_edges(const TilingMap& map, const MapAutomorphism& g);

/// Closed edge cycles that, at every vertex they pass, split the corner cycle into two halves
/// with mirror-equal angle and edge labels. Each cycle lists edge indices in walk order starting from its smallest.
std::vector<std::vector<int>> vertex_bisecting_cycles(const TilingMap& map);

struct SymmetryClass {
    std::string name;         ///< Schoenflies name, e.g. "D_2d", "T_h"
    int order = 0;            ///< automorphism group size
    int rotation_order = 0;   ///< size of the orientation-preserving subgroup
    int principal_axis_order = 1;
    int mirrors = 0;
    bool inversion = false;
    bool horizontal_mirror = false;  ///< a mirror perpendicular to the principal axis
    std::vector<MapAutomorphism> generators;
    std::string family_label;  ///< label used for the tiling's family, empty if not a known family

    std::string str() const;
};

SymmetryClass classify(const TilingMap& map);

}  // namespace quadtile
