#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadtile/angles.hpp"
#include "quadtile/report.hpp"

namespace quadtile {

// Corner k of a tile carries angle k (A=alpha, B=beta, C=gamma, D=delta).
// Edge k runs from corner k to corner k+1: AB=a, BC=b, CD=c, DA=a.
enum class EdgeLabel : std::uint8_t { a, b, c };

constexpr EdgeLabel edge_label(int edge) {
    return edge == 1 ? EdgeLabel::b : edge == 2 ? EdgeLabel::c : EdgeLabel::a;
}
const char* edge_label_name(EdgeLabel l);
const char* edge_slot_name(int edge);
int parse_edge_slot(const std::string& name);

constexpr int slot_of(int tile, int edge) { return 4 * tile + edge; }
constexpr int slot_tile(int slot) { return slot / 4; }
constexpr int slot_edge(int slot) { return slot % 4; }

/// One glued pair of edge slots. `parallel` identifies corner e with e' and e+1 with e'+1;
/// otherwise corner e meets e'+1 and e+1 meets e'. Tiles glued in parallel are mirror images.
struct GlueEntry {
    int tile1 = 0;
    int edge1 = 0;
    int tile2 = 0;
    int edge2 = 0;
    bool parallel = false;
};

struct CornerRef {
    int tile = 0;
    int corner = 0;
    auto operator<=>(const CornerRef&) const = default;
};

struct VertexCycle {
    /// Corners in rotational order around the vertex.
    std::vector<CornerRef> corners;
    /// exits[i] is the slot of corners[i]'s tile crossed to reach corners[i+1].
    std::vector<int> exits;
    VertexSignature signature;

    int degree() const { return static_cast<int>(corners.size()); }
};

struct MapEdge {
    int slot1 = 0;
    int slot2 = 0;
    int v1 = 0;  ///< vertex at the start corner of slot1
    int v2 = 0;  ///< vertex at the end corner of slot1
    EdgeLabel label = EdgeLabel::a;
};

class TilingMapError : public std::runtime_error {
public:
    enum class Kind { LabelMismatch, NonInvolution, Disconnected, EulerCharacteristic, NonOrientable, Malformed };

    TilingMapError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

const char* error_kind_name(TilingMapError::Kind k);

/// Labeled quadrilateral map on the sphere. Immutable once built.
class TilingMap {
public:
    TilingMap() = default;

    static TilingMap build(int f, const std::vector<GlueEntry>& glue);
    /// Faces given as vertex ids of corners A, B, C, D. Edges are matched by endpoint pairs.
    static TilingMap from_faces(const std::vector<std::array<int, 4>>& faces);
    static TilingMap from_json(const std::string& text);

    int f() const { return f_; }
    int glue(int slot) const { return glue_[slot]; }
    bool parallel(int slot) const { return parallel_[slot] != 0; }
    /// 0 when A,B,C,D read counterclockwise from outside, 1 for the mirror image. Fixed by tile 0 = 0.
    int orientation(int tile) const { return orient_[tile]; }
    int vertex_of(int tile, int corner) const { return corner_vertex_[4 * tile + corner]; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const std::vector<VertexCycle>& vertices() const { return vertices_; }
    const std::vector<MapEdge>& edges() const { return edges_; }
    /// Edge index of a slot.
    int edge_of(int slot) const { return slot_edge_index_[slot]; }

    std::vector<GlueEntry> glue_entries() const;
    std::vector<std::array<int, 4>> faces() const;
    std::string to_json() const;

    /// Relabels tiles: tile t becomes tile perm[t].
    TilingMap permuted(const std::vector<int>& perm) const;

    /// Minimal BFS code over all start tiles; equal codes iff isomorphic (mirror images included).
    std::vector<int> canonical_code() const;

private:
    void derive();

    int f_ = 0;
    std::vector<int> glue_;
    std::vector<std::uint8_t> parallel_;
    std::vector<std::uint8_t> orient_;
    std::vector<int> corner_vertex_;
    std::vector<VertexCycle> vertices_;
    std::vector<MapEdge> edges_;
    std::vector<int> slot_edge_index_;
};

bool isomorphic(const TilingMap& x, const TilingMap& y);

/// Vertex signature multiplicities in catalog order.
using Avc = std::map<VertexSignature, int, CatalogOrder>;

Avc extract_avc(const TilingMap& map);

/// "αβ²×8 α²δ²×4 γ⁴×4 δ⁴×2"
std::string avc_summary(const Avc& avc);

/// Exact AVC match (set equality), parity, counting identities and balance.
CheckReport verify(const TilingMap& map, const std::vector<VertexSignature>& expected, int f);

}  // namespace quadtile
