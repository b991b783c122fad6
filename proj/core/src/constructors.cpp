#include "quadtile/constructors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "quadtile/combinatorics.hpp"

namespace quadtile {

namespace {

using Faces = std::vector<std::array<int, 4>>;

int mod(int x, int m) { return ((x % m) + m) % m; }

struct Boundary {
    std::vector<int> vertices;  // cyclic
    std::vector<int> slots;     // slots[i] joins vertices[i] and vertices[i+1]
};

// Boundary of a tile set as a simple vertex cycle. Throws FlipInvalid otherwise.
Boundary disk_boundary(const TilingMap& map, const std::vector<char>& in) {
    std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbour, slot)
    int edges = 0;
    for (int t = 0; t < map.f(); ++t) {
        if (!in[t]) continue;
        for (int k = 0; k < 4; ++k) {
            int s = slot_of(t, k);
            if (in[slot_tile(map.glue(s))]) continue;
            int u = map.vertex_of(t, k), v = map.vertex_of(t, (k + 1) % 4);
            adj[u].push_back({v, s});
            adj[v].push_back({u, s});
            ++edges;
        }
    }
    if (adj.empty()) throw FlipInvalid("tile set has no boundary");
    for (const auto& [v, nb] : adj)
        if (nb.size() != 2) throw FlipInvalid("boundary is not a simple cycle at vertex " + std::to_string(v));
    Boundary b;
    int start = adj.begin()->first;
    int prev = -1, cur = start;
    // Walk in the direction of the smaller slot first for determinism.
    do {
        const auto& nb = adj[cur];
        int pick = 0;
        if (prev == -1) pick = nb[0].second <= nb[1].second ? 0 : 1;
        else if (nb[0].first == prev && nb[1].first != prev) pick = 1;
        else if (nb[0].first == prev && nb[1].first == prev) throw FlipInvalid("boundary has a digon");
        b.vertices.push_back(cur);
        b.slots.push_back(nb[pick].second);
        prev = cur;
        cur = nb[pick].first;
    } while (cur != start && static_cast<int>(b.vertices.size()) <= edges);
    if (static_cast<int>(b.vertices.size()) != edges) throw FlipInvalid("boundary is not a single cycle");
    return b;
}

// Angle counts of the disk's corners at each boundary vertex.
std::vector<VertexSignature> boundary_word(const TilingMap& map, const std::vector<char>& in, const Boundary& b) {
    std::map<int, int> pos;
    for (int i = 0; i < static_cast<int>(b.vertices.size()); ++i) pos[b.vertices[i]] = i;
    std::vector<VertexSignature> word(b.vertices.size());
    for (int t = 0; t < map.f(); ++t) {
        if (!in[t]) continue;
        for (int k = 0; k < 4; ++k) {
            auto it = pos.find(map.vertex_of(t, k));
            if (it == pos.end()) continue;
            auto& w = word[it->second];
            (k == 0 ? w.a : k == 1 ? w.b : k == 2 ? w.c : w.d)++;
        }
    }
    return word;
}

bool delta_only(const VertexSignature& s) { return s.d > 0 && s.a == 0 && s.b == 0 && s.c == 0; }
bool single_alpha(const VertexSignature& s) { return s.a == 1 && s.b == 0 && s.c == 0 && s.d == 0; }

// Reflection centres c: the map p -> c - p swaps a δ-only boundary vertex with a neighbouring single-α one.
std::vector<int> reflection_centres(const std::vector<VertexSignature>& word) {
    const int L = static_cast<int>(word.size());
    std::set<int> cs;
    for (int i = 0; i < L; ++i) {
        if (!delta_only(word[i])) continue;
        for (int j : {mod(i + 1, L), mod(i - 1, L)})
            if (single_alpha(word[j])) cs.insert(mod(i + j, L));
    }
    return {cs.begin(), cs.end()};
}

bool all_admissible(const TilingMap& m) {
    for (const auto& v : m.vertices())
        if (!parity_admissible(v.signature)) return false;
    return true;
}

std::vector<char> membership(int f, const std::vector<int>& tiles) {
    std::vector<char> in(f, 0);
    for (int t : tiles) {
        if (t < 0 || t >= f) throw std::out_of_range("tile index " + std::to_string(t) + " out of range");
        in[t] = 1;
    }
    return in;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::domain_error(msg);
}

}  // namespace

TilingMap earth_map(int f) {
    require(f >= 6 && f % 2 == 0, "earth_map needs even f >= 6, got " + std::to_string(f));
    const int n = f / 2;
    // N=0, S=1, M_i = 2+i, P_i = 2+n+i
    auto M = [&](int i) { return 2 + mod(i, n); };
    auto P = [&](int i) { return 2 + n + mod(i, n); };
    Faces faces;
    for (int i = 0; i < n; ++i) {
        faces.push_back({0, M(i - 1), P(i), M(i)});
        faces.push_back({1, P(i + 1), M(i), P(i)});
    }
    return TilingMap::from_faces(faces);
}

TilingMap pq_earth_map(int f) {
    require(f >= 16 && f % 8 == 0, "pq_earth_map needs f = 0 mod 8 and f >= 16, got " + std::to_string(f));
    const int k = f / 8;
    // N=0, S=1, X_i, Y_i, Z_i, W_i (i mod k), B_j, Q_j (j mod 2k)
    auto X = [&](int i) { return 2 + mod(i, k); };
    auto Y = [&](int i) { return 2 + k + mod(i, k); };
    auto Z = [&](int i) { return 2 + 2 * k + mod(i, k); };
    auto W = [&](int i) { return 2 + 3 * k + mod(i, k); };
    auto B = [&](int j) { return 2 + 4 * k + mod(j, 2 * k); };
    auto Q = [&](int j) { return 2 + 6 * k + mod(j, 2 * k); };
    auto half = [](int j) { return j >= 0 ? j / 2 : -((1 - j) / 2); };  // floor(j/2)
    auto n = [&](int j) { return std::array<int, 4>{Y(half(j - 1)), B(j), X(half(j)), 0}; };
    auto p = [&](int j) { return std::array<int, 4>{Q(j), B(j), X(half(j)), Z(half(j))}; };
    auto s = [&](int j) { return std::array<int, 4>{B(j), Q(j), W(half(j - 1)), Y(half(j - 1))}; };
    auto t = [&](int j) { return std::array<int, 4>{Z(half(j)), Q(j), W(half(j - 1)), 1}; };
    Faces faces;
    for (int i = 0; i < k; ++i) {
        int j = 2 * i;
        faces.push_back(n(j));
        faces.push_back(n(j + 1));
        faces.push_back(p(j));
        faces.push_back(p(j + 1));
        faces.push_back(s(mod(j + 1, 2 * k)));
        faces.push_back(s(mod(j + 2, 2 * k)));
        faces.push_back(t(mod(j + 1, 2 * k)));
        faces.push_back(t(mod(j + 2, 2 * k)));
    }
    return TilingMap::from_faces(faces);
}

Base parse_base(const std::string& name) {
    if (name == "cube") return Base::cube;
    if (name == "octahedron") return Base::octahedron;
    if (name == "triangular_prism" || name == "prism" || name == "triangular-prism") return Base::triangular_prism;
    throw std::domain_error("unsupported base '" + name + "'");
}

const char* base_name(Base b) {
    switch (b) {
        case Base::cube: return "cube";
        case Base::octahedron: return "octahedron";
        case Base::triangular_prism: return "triangular_prism";
    }
    return "?";
}

namespace {

// Cube vertices are 3-bit ids. Face (axis, side) lists its vertices cyclically.
struct Cube {
    std::vector<std::array<int, 4>> faces;
    std::map<std::pair<int, int>, int> edge_id;

    Cube() {
        for (int ax = 0; ax < 3; ++ax) {
            int u = (ax + 1) % 3, w = (ax + 2) % 3;
            for (int side = 0; side < 2; ++side) {
                auto v = [&](int bu, int bw) { return (side << ax) | (bu << u) | (bw << w); };
                faces.push_back({v(0, 0), v(1, 0), v(1, 1), v(0, 1)});
            }
        }
        for (int x = 0; x < 8; ++x)
            for (int b = 0; b < 3; ++b) {
                int y = x ^ (1 << b);
                if (x < y) edge_id[{x, y}] = static_cast<int>(edge_id.size());
            }
    }
    int edge(int x, int y) const { return edge_id.at({std::min(x, y), std::max(x, y)}); }
};

TilingMap cube_subdivision() {
    Cube cube;
    // Segment i of a face joins its centre to the midpoint of side (v_i, v_{i+1}); label b when (i+p) even.
    for (int pattern = 0; pattern < 64; ++pattern) {
        std::map<int, std::vector<bool>> side_is_b;
        for (int F = 0; F < 6; ++F)
            for (int i = 0; i < 4; ++i) {
                int p = (pattern >> F) & 1;
                side_is_b[cube.edge(cube.faces[F][i], cube.faces[F][(i + 1) % 4])].push_back((i + p) % 2 == 0);
            }
        bool ok = true;
        for (const auto& [e, labels] : side_is_b) ok = ok && labels.size() == 2 && labels[0] != labels[1];
        if (!ok) continue;
        Faces faces;
        for (int F = 0; F < 6; ++F) {
            int p = (pattern >> F) & 1;
            for (int i = 0; i < 4; ++i) {
                int v = cube.faces[F][i];
                int prev = 8 + cube.edge(cube.faces[F][(i + 3) % 4], v);
                int next = 8 + cube.edge(v, cube.faces[F][(i + 1) % 4]);
                bool next_b = (i + p) % 2 == 0;
                int mb = next_b ? next : prev, mc = next_b ? prev : next;
                faces.push_back({v, mb, 20 + F, mc});
            }
        }
        return TilingMap::from_faces(faces);
    }
    throw std::logic_error("no consistent b/c pattern on the cube");
}

TilingMap octahedron_subdivision() {
    // Vertex 2*axis+sign; faces pick one vertex per axis.
    std::vector<std::array<int, 3>> tri;
    for (int s = 0; s < 8; ++s) tri.push_back({0 + (s & 1), 2 + ((s >> 1) & 1), 4 + ((s >> 2) & 1)});
    std::map<std::pair<int, int>, int> edge_id;
    for (int x = 0; x < 6; ++x)
        for (int y = x + 1; y < 6; ++y)
            if (x / 2 != y / 2) edge_id[{x, y}] = static_cast<int>(edge_id.size());
    auto edge = [&](int x, int y) { return edge_id.at({std::min(x, y), std::max(x, y)}); };
    // Bit e of `h` set: the half of edge e at its smaller endpoint is the b-half.
    for (int h = 0; h < (1 << 12); ++h) {
        auto half_is_b = [&](int v, int w) {
            bool low_b = (h >> edge(v, w)) & 1;
            return v < w ? low_b : !low_b;
        };
        // Around each vertex, halves towards opposite neighbours share a label, adjacent ones differ.
        bool ok = true;
        for (int v = 0; v < 6 && ok; ++v) {
            int o1 = (v / 2 + 1) % 3, o2 = (v / 2 + 2) % 3;
            bool l1 = half_is_b(v, 2 * o1), l2 = half_is_b(v, 2 * o2);
            ok = half_is_b(v, 2 * o1 + 1) == l1 && half_is_b(v, 2 * o2 + 1) == l2 && l1 != l2;
        }
        if (!ok) continue;
        Faces faces;
        for (int F = 0; F < 8; ++F)
            for (int i = 0; i < 3; ++i) {
                int v = tri[F][i], w1 = tri[F][(i + 1) % 3], w2 = tri[F][(i + 2) % 3];
                int m1 = 6 + edge(v, w1), m2 = 6 + edge(v, w2);
                int mb = half_is_b(v, w1) ? m1 : m2, mc = half_is_b(v, w1) ? m2 : m1;
                faces.push_back({18 + F, mb, v, mc});
            }
        return TilingMap::from_faces(faces);
    }
    throw std::logic_error("no consistent b/c pattern on the octahedron");
}

}  // namespace

TilingMap quad_subdivide(Base base) {
    switch (base) {
        case Base::cube: return cube_subdivision();
        case Base::octahedron: return octahedron_subdivision();
        case Base::triangular_prism: {
            // Reflecting the hemisphere of three cube faces around one cube vertex.
            TilingMap cube = cube_subdivision();
            std::vector<int> disk;
            Cube c;
            for (int F = 0; F < 6; ++F)
                if (std::find(c.faces[F].begin(), c.faces[F].end(), 0) != c.faces[F].end())
                    for (int i = 0; i < 4; ++i) disk.push_back(4 * F + i);
            return flip_disk(cube, disk);
        }
    }
    throw std::domain_error("unsupported base");
}

TilingMap flip_disk(const TilingMap& map, const std::vector<int>& tiles) {
    std::vector<char> in = membership(map.f(), tiles);
    int count = static_cast<int>(std::count(in.begin(), in.end(), 1));
    if (count == 0) throw FlipInvalid("empty tile set");
    if (count == map.f()) return mirror(map);

    Boundary b = disk_boundary(map, in);
    auto word = boundary_word(map, in, b);
    const int L = static_cast<int>(b.vertices.size());
    std::map<int, int> pos;
    for (int i = 0; i < L; ++i) pos[b.vertices[i]] = i;

    Faces base = map.faces();
    for (int c : reflection_centres(word)) {
        Faces faces = base;
        for (int t = 0; t < map.f(); ++t) {
            if (!in[t]) continue;
            for (int& v : faces[t]) {
                auto it = pos.find(v);
                if (it != pos.end()) v = b.vertices[mod(c - it->second, L)];
            }
        }
        try {
            TilingMap out = TilingMap::from_faces(faces);
            if (all_admissible(out)) return out;
        } catch (const TilingMapError&) {
        }
    }
    throw FlipInvalid("no admissible reflection of the disk boundary (length " + std::to_string(L) + ")");
}

TilingMap mirror(const TilingMap& map) { return TilingMap::build(map.f(), map.glue_entries()); }

namespace {

std::vector<std::vector<int>> earth_zones(const TilingMap& map) {
    std::vector<std::vector<int>> zones;
    std::vector<char> used(map.f(), 0);
    for (int t = 0; t < map.f(); ++t) {
        if (used[t]) continue;
        int u = slot_tile(map.glue(slot_of(t, 2)));
        if (used[u] || u == t) throw NotZoneDecomposable("c-edge pairing is not a perfect matching");
        used[t] = used[u] = 1;
        zones.push_back({std::min(t, u), std::max(t, u)});
    }
    return zones;
}

std::vector<std::vector<int>> star_zones(const TilingMap& map) {
    std::vector<std::vector<int>> stars;
    std::vector<int> star_of(map.f(), -1);
    for (const auto& v : map.vertices()) {
        if (!(v.signature == VertexSignature{0, 0, 4, 0})) continue;
        std::vector<int> s;
        for (const auto& c : v.corners) s.push_back(c.tile);
        std::sort(s.begin(), s.end());
        for (int t : s) star_of[t] = static_cast<int>(stars.size());
        stars.push_back(s);
    }
    for (int t = 0; t < map.f(); ++t)
        if (star_of[t] < 0) throw NotZoneDecomposable("tile " + std::to_string(t) + " is not around a γ⁴ vertex");
    std::sort(stars.begin(), stars.end());
    for (int i = 0; i < static_cast<int>(stars.size()); ++i)
        for (int t : stars[i]) star_of[t] = i;
    const int n = static_cast<int>(stars.size());
    // Stars sharing three edges form a zone.
    std::vector<std::vector<int>> partners(n);
    for (int i = 0; i < n; ++i) {
        std::map<int, int> shared;
        for (int t : stars[i])
            for (int k = 0; k < 4; ++k) {
                int j = star_of[slot_tile(map.glue(slot_of(t, k)))];
                if (j != i) ++shared[j];
            }
        for (const auto& [j, cnt] : shared)
            if (cnt == 3) partners[i].push_back(j);
    }
    std::vector<int> match(n, -1);
    auto rec = [&](auto&& self) -> bool {
        int i = static_cast<int>(std::find(match.begin(), match.end(), -1) - match.begin());
        if (i == n) return true;
        for (int j : partners[i]) {
            if (match[j] != -1) continue;
            match[i] = j;
            match[j] = i;
            if (self(self)) return true;
            match[i] = match[j] = -1;
        }
        return false;
    };
    if (!rec(rec)) throw NotZoneDecomposable("γ⁴ stars do not pair into zones");
    std::vector<std::vector<int>> zones;
    for (int i = 0; i < n; ++i) {
        if (match[i] < i) continue;
        std::vector<int> z = stars[i];
        z.insert(z.end(), stars[match[i]].begin(), stars[match[i]].end());
        std::sort(z.begin(), z.end());
        zones.push_back(z);
    }
    return zones;
}

bool same_cyclic_word(const std::vector<VertexSignature>& x, const std::vector<VertexSignature>& y) {
    if (x.size() != y.size()) return false;
    const int L = static_cast<int>(x.size());
    for (int r = 0; r < L; ++r)
        for (int dir : {1, -1}) {
            bool eq = true;
            for (int i = 0; i < L && eq; ++i) eq = x[i] == y[mod(r + dir * i, L)];
            if (eq) return true;
        }
    return false;
}

}  // namespace

std::vector<TimeZoneDisk> decompose_time_zones(const TilingMap& map) {
    Avc avc = extract_avc(map);
    bool earth = avc.count({0, 1, 1, 1}) > 0;
    std::vector<std::vector<int>> zones;
    int expected = 0;
    if (earth) {
        zones = earth_zones(map);
        expected = map.f() / 2;
    } else if (avc.count({0, 0, 4, 0})) {
        zones = star_zones(map);
        expected = map.f() / 8;
    } else {
        throw NotZoneDecomposable("map has neither βγδ nor γ⁴ vertices");
    }
    if (static_cast<int>(zones.size()) != expected)
        throw NotZoneDecomposable("found " + std::to_string(zones.size()) + " zones, expected " +
                                  std::to_string(expected));

    const int n = static_cast<int>(zones.size());
    std::vector<int> zone_of(map.f(), -1);
    for (int z = 0; z < n; ++z)
        for (int t : zones[z]) zone_of[t] = z;

    // Cyclic order from the zone of tile 0.
    std::vector<int> order{zone_of[0]};
    std::vector<char> seen(n, 0);
    seen[zone_of[0]] = 1;
    while (static_cast<int>(order.size()) < n) {
        int cur = order.back(), best = -1;
        for (int t : zones[cur])
            for (int k = 0; k < 4; ++k) {
                int z = zone_of[slot_tile(map.glue(slot_of(t, k)))];
                if (!seen[z] && (best < 0 || zones[z][0] < zones[best][0])) best = z;
            }
        if (best < 0) throw NotZoneDecomposable("zones do not form a cycle");
        seen[best] = 1;
        order.push_back(best);
    }

    std::vector<TimeZoneDisk> out;
    std::vector<VertexSignature> first_word;
    for (int z : order) {
        TimeZoneDisk d;
        d.tiles = zones[z];
        std::vector<char> in = membership(map.f(), d.tiles);
        Boundary b;
        try {
            b = disk_boundary(map, in);
        } catch (const FlipInvalid& e) {
            throw NotZoneDecomposable(std::string("zone is not a disk: ") + e.what());
        }
        auto word = boundary_word(map, in, b);
        if (out.empty()) first_word = word;
        else if (!same_cyclic_word(first_word, word))
            throw NotZoneDecomposable("zone boundary words differ");
        d.boundary_slots = b.slots;
        d.boundary_vertices = b.vertices;
        // Handedness from an anchor tile: D at a δ-only boundary vertex, A at a neighbouring α-only one.
        int anchor = d.tiles[0];
        if (!earth) {
            const int L = static_cast<int>(word.size());
            std::map<int, int> pos;
            for (int i = 0; i < L; ++i) pos[b.vertices[i]] = i;
            for (int t : d.tiles) {
                auto pd = pos.find(map.vertex_of(t, 3)), pa = pos.find(map.vertex_of(t, 0));
                if (pd == pos.end() || pa == pos.end()) continue;
                if (delta_only(word[pd->second]) && word[pa->second].a > 0 && word[pa->second].b == 0 &&
                    word[pa->second].c == 0 && word[pa->second].d == 0) {
                    anchor = t;
                    break;
                }
            }
        }
        d.flipped = map.orientation(anchor) != 0;
        out.push_back(std::move(d));
    }
    bool ref = out[0].flipped;
    for (auto& d : out) d.flipped = d.flipped != ref;
    return out;
}

TilingMap flip_segment(const TilingMap& map, int zone_start, int zone_count) {
    auto zones = decompose_time_zones(map);
    const int n = static_cast<int>(zones.size());
    if (zone_count <= 0 || zone_count > n)
        throw std::domain_error("zone_count must be in 1.." + std::to_string(n));
    std::vector<int> tiles;
    for (int i = 0; i < zone_count; ++i) {
        const auto& z = zones[mod(zone_start + i, n)].tiles;
        tiles.insert(tiles.end(), z.begin(), z.end());
    }
    return flip_disk(map, tiles);
}

namespace {

void require_flip_family(int f, const char* name) {
    require(f >= 24 && f % 16 == 8,
            std::string(name) + " needs f = 8 mod 16 and f >= 24, got " + std::to_string(f));
}

std::vector<int> zone_range(int first, int last) {
    std::vector<int> tiles;
    for (int t = 8 * first; t < 8 * (last + 1); ++t) tiles.push_back(t);
    return tiles;
}

}  // namespace

TilingMap family_alphadelta(int f) {
    require_flip_family(f, "family_alphadelta");
    const int m = (f - 8) / 16;
    return flip_disk(pq_earth_map(f), zone_range(1, m));
}

TilingMap family_beta2delta(int f) {
    require_flip_family(f, "family_beta2delta");
    const int m = (f - 8) / 16;
    TilingMap once = flip_disk(pq_earth_map(f), zone_range(1, m));
    return flip_disk(once, zone_range(m + 1, 2 * m));
}

}  // namespace quadtile
