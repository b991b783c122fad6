#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "quadtile/tilingmap.hpp"

namespace quadtile {

class FlipInvalid : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotZoneDecomposable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// AVC {βγδ, α^{f/2}}. Tiles 2i (north) and 2i+1 (south) form time zone i.
TilingMap earth_map(int f);

/// (f/4,4)-earth map tiling, AVC {αβ², α²δ², γ⁴, δ^{f/4}}. Tiles 8i..8i+7 form time zone i.
TilingMap pq_earth_map(int f);

enum class Base { cube, octahedron, triangular_prism };

Base parse_base(const std::string& name);
const char* base_name(Base b);

/// Cube and octahedron: AVC {α³, β²δ², γ⁴}; prism: {α³, αβ², α²δ², β²δ², γ⁴}. All f = 24.
TilingMap quad_subdivide(Base base);

/// AVC {αβ², α²δ², γ⁴, αδ^{(f+8)/8}}: zones 1..m of pq_earth_map(f) flipped, m = (f-8)/16.
TilingMap family_alphadelta(int f);

/// AVC {αβ², α²δ², γ⁴, β²δ^{(f-8)/8}, αδ^{(f+8)/8}}: zones 1..m and m+1..2m flipped separately.
TilingMap family_beta2delta(int f);

struct TimeZoneDisk {
    std::vector<int> tiles;             ///< sorted
    std::vector<int> boundary_slots;    ///< disk-side slots in boundary order
    std::vector<int> boundary_vertices; ///< boundary_slots[i] joins vertex i and i+1
    bool flipped = false;               ///< opposite handedness to the zone holding tile 0
};

/// Zones in cyclic order starting from the zone of tile 0.
std::vector<TimeZoneDisk> decompose_time_zones(const TilingMap& map);

/// Reflects the disk formed by `tiles` and glues it back. The reflection swaps a boundary vertex
/// where the disk has only δ corners with a neighbouring boundary vertex where it has a single α.
TilingMap flip_disk(const TilingMap& map, const std::vector<int>& tiles);

/// Flips zones zone_start, ..., zone_start + zone_count - 1 (cyclically) of the decomposition.
TilingMap flip_segment(const TilingMap& map, int zone_start, int zone_count);

/// Same glue with every tile reflected.
TilingMap mirror(const TilingMap& map);

}  // namespace quadtile
