#include "quadtile/symmetry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "quadtile/combinatorics.hpp"
#include "quadtile/tilingmap.hpp"

namespace quadtile {

int MapAutomorphism::order() const {
    MapAutomorphism p = *this;
    int k = 1;
    while (!p.is_identity()) {
        p = p * *this;
        ++k;
    }
    return k;
}

bool MapAutomorphism::is_identity() const {
    for (int t = 0; t < static_cast<int>(tiles.size()); ++t)
        if (tiles[t] != t) return false;
    return true;
}

MapAutomorphism MapAutomorphism::operator*(const MapAutomorphism& rhs) const {
    MapAutomorphism out;
    out.tiles.resize(tiles.size());
    for (std::size_t t = 0; t < tiles.size(); ++t) out.tiles[t] = tiles[rhs.tiles[t]];
    out.preserving = preserving == rhs.preserving;
    return out;
}

MapAutomorphism MapAutomorphism::inverse() const {
    MapAutomorphism out;
    out.tiles.resize(tiles.size());
    for (std::size_t t = 0; t < tiles.size(); ++t) out.tiles[tiles[t]] = static_cast<int>(t);
    out.preserving = preserving;
    return out;
}

std::vector<MapAutomorphism> automorphisms(const TilingMap& map) {
    const int f = map.f();
    std::vector<MapAutomorphism> out;
    for (int target = 0; target < f; ++target) {
        std::vector<int> img(f, -1);
        std::vector<char> used(f, 0);
        img[0] = target;
        used[target] = 1;
        std::deque<int> queue{0};
        bool ok = true;
        while (ok && !queue.empty()) {
            int t = queue.front();
            queue.pop_front();
            for (int k = 0; k < 4 && ok; ++k) {
                int s = slot_of(t, k), s_img = slot_of(img[t], k);
                int n = slot_tile(map.glue(s)), n_img = slot_tile(map.glue(s_img));
                if (slot_edge(map.glue(s)) != slot_edge(map.glue(s_img)) || map.parallel(s) != map.parallel(s_img)) {
                    ok = false;
                } else if (img[n] == -1) {
                    if (used[n_img]) {
                        ok = false;
                    } else {
                        img[n] = n_img;
                        used[n_img] = 1;
                        queue.push_back(n);
                    }
                } else if (img[n] != n_img) {
                    ok = false;
                }
            }
        }
        if (!ok) continue;
        out.push_back({img, map.orientation(target) == map.orientation(0)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

int vertex_image(const TilingMap& map, const MapAutomorphism& g, int v) {
    const auto& c = map.vertices()[v].corners.front();
    return map.vertex_of(g.tiles[c.tile], c.corner);
}

int edge_image(const TilingMap& map, const MapAutomorphism& g, int e) {
    int s = map.edges()[e].slot1;
    return map.edge_of(slot_of(g.tiles[slot_tile(s)], slot_edge(s)));
}

}  // namespace

std::vector<int> fixed_vertices(const TilingMap& map, const MapAutomorphism& g) {
    std::vector<int> out;
    for (int v = 0; v < map.vertex_count(); ++v)
        if (vertex_image(map, g, v) == v) out.push_back(v);
    return out;
}

std::vector<int> fixed_edges(const TilingMap& map, const MapAutomorphism& g) {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(map.edges().size()); ++e)
        if (edge_image(map, g, e) == e) out.push_back(e);
    return out;
}

std::vector<std::vector<int>> vertex_bisecting_cycles(const TilingMap& map) {
    // partner[v][e]: the edge opposite e at v when the pair bisects v label-wise.
    std::vector<std::map<int, int>> partner(map.vertex_count());
    for (int v = 0; v < map.vertex_count(); ++v) {
        const auto& cyc = map.vertices()[v];
        const int d = cyc.degree();
        if (d % 2) continue;
        std::vector<int> edges(d);
        std::vector<EdgeLabel> labels(d);
        for (int i = 0; i < d; ++i) {
            edges[i] = map.edge_of(cyc.exits[i]);
            labels[i] = map.edges()[edges[i]].label;
        }
        auto corner = [&](int i) { return cyc.corners[((i % d) + d) % d].corner; };
        auto label = [&](int i) { return labels[((i % d) + d) % d]; };
        for (int i = 0; i < d / 2; ++i) {
            // Edge i sits between corners i and i+1; reflect across edges i and i + d/2.
            bool ok = true;
            for (int j = 0; j < d / 2 && ok; ++j) ok = corner(i + 1 + j) == corner(i - j);
            for (int k = 1; k < d / 2 && ok; ++k) ok = label(i + k) == label(i - k);
            if (!ok) continue;
            partner[v][edges[i]] = edges[i + d / 2];
            partner[v][edges[i + d / 2]] = edges[i];
        }
    }
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    const auto& E = map.edges();
    for (int e0 = 0; e0 < static_cast<int>(E.size()); ++e0) {
        std::vector<int> path{e0};
        int e = e0, v = E[e0].v2;
        bool closed = false;
        while (static_cast<int>(path.size()) <= static_cast<int>(E.size())) {
            auto it = partner[v].find(e);
            if (it == partner[v].end()) break;
            int next = it->second;
            if (next == e0) {
                closed = v == E[e0].v1;
                break;
            }
            v = E[next].v1 == v ? E[next].v2 : E[next].v1;
            e = next;
            path.push_back(e);
        }
        if (!closed) continue;
        auto m = std::min_element(path.begin(), path.end());
        std::rotate(path.begin(), m, path.end());
        if (path.size() > 2 && path[path.size() - 1] < path[1]) std::reverse(path.begin() + 1, path.end());
        if (seen.insert(path).second) out.push_back(path);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool fixes_nothing(const TilingMap& map, const MapAutomorphism& g) {
    return fixed_vertices(map, g).empty() && fixed_edges(map, g).empty();
}

std::string family_label_for(const TilingMap& map) {
    Avc avc = extract_avc(map);
    std::vector<VertexSignature> keys;
    for (const auto& [s, n] : avc) keys.push_back(s);
    static const std::map<std::string, std::string> labels = {
        {"earth map", "D_{f/2}"},     {"pq earth map", "D_{f/8 v}"}, {"cube subdivision", "T_h"},
        {"prism subdivision", "D_3"}, {"alphadelta", "D_2"},         {"beta2delta", "C_2"},
    };
    for (const auto& fam : known_families(map.f()))
        if (fam.avc == keys) return labels.at(fam.name);
    return "";
}

std::vector<MapAutomorphism> closure(const std::vector<MapAutomorphism>& gens, int f) {
    MapAutomorphism id;
    id.tiles.resize(f);
    std::iota(id.tiles.begin(), id.tiles.end(), 0);
    std::set<MapAutomorphism> group{id};
    std::deque<MapAutomorphism> queue{id};
    while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            auto y = g * x;
            if (group.insert(y).second) queue.push_back(y);
        }
    }
    return {group.begin(), group.end()};
}

}  // namespace

SymmetryClass classify(const TilingMap& map) {
    SymmetryClass sc;
    auto group = automorphisms(map);
    sc.order = static_cast<int>(group.size());
    sc.family_label = family_label_for(map);

    std::vector<MapAutomorphism> rot, rev;
    for (const auto& g : group) (g.preserving ? rot : rev).push_back(g);
    sc.rotation_order = static_cast<int>(rot.size());

    // Rotation axes keyed by fixed cells.
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> axis_order;
    int n = 1;
    const MapAutomorphism* principal = nullptr;
    for (const auto& r : rot) {
        if (r.is_identity()) continue;
        int k = r.order();
        auto& o = axis_order[{fixed_vertices(map, r), fixed_edges(map, r)}];
        o = std::max(o, k);
        if (k > n) {
            n = k;
            principal = &r;
        }
    }
    int high_axes = 0;
    for (const auto& [cells, k] : axis_order) high_axes += k >= 3;

    for (const auto& g : rev) {
        if (g.order() != 2) continue;
        if (fixes_nothing(map, g)) sc.inversion = true;
        else ++sc.mirrors;
    }

    const int R = sc.rotation_order;
    std::string base;
    bool dihedral = false;
    if (high_axes >= 2) {
        base = R == 12 ? "T" : R == 24 ? "O" : R == 60 ? "I" : "";
        sc.principal_axis_order = R == 12 ? 3 : R == 24 ? 4 : 5;
    } else if (R == n) {
        base = "C_" + std::to_string(n);
        sc.principal_axis_order = n;
    } else if (R == 2 * n) {
        base = "D_" + std::to_string(n);
        sc.principal_axis_order = n;
        dihedral = true;
    }
    if (base.empty()) {
        sc.name = "unclassified(order " + std::to_string(sc.order) + ", rotations " + std::to_string(R) + ")";
        return sc;
    }

    // For D_2 the principal axis is the square of an order-4 rotoreflection when one exists.
    MapAutomorphism s4_square;
    bool has_s4 = false;
    if (dihedral && n == 2) {
        for (const auto& g : rev)
            if (g.order() == 4) {
                s4_square = g * g;
                principal = &s4_square;
                has_s4 = true;
                break;
            }
    }
    if (principal && high_axes < 2) {
        for (const auto& g : rev) {
            if (g.order() != 2 || fixes_nothing(map, g)) continue;
            if (g * *principal == *principal * g && fixes_nothing(map, g * *principal)) {
                sc.horizontal_mirror = true;
                break;
            }
        }
    }

    if (rev.empty()) {
        sc.name = base;
    } else if (high_axes >= 2) {
        sc.name = base == "T" ? (sc.inversion ? "T_h" : "T_d") : base + "_h";
    } else if (dihedral) {
        if (n == 2) sc.name = has_s4 ? "D_2d" : "D_2h";
        else sc.name = base + (sc.horizontal_mirror ? "h" : "d");
    } else if (n == 1) {
        sc.name = sc.mirrors ? "C_s" : "C_i";
    } else if (sc.horizontal_mirror) {
        sc.name = base + "h";
    } else if (sc.mirrors) {
        sc.name = base + "v";
    } else {
        sc.name = "S_" + std::to_string(2 * n);
    }

    // Greedy generating set in sorted order.
    for (const auto& g : group) {
        auto sub = closure(sc.generators, map.f());
        if (!std::binary_search(sub.begin(), sub.end(), g)) sc.generators.push_back(g);
    }
    return sc;
}

std::string SymmetryClass::str() const {
    std::string out = name + ", order " + std::to_string(order);
    if (!family_label.empty()) out += ", label " + family_label;
    return out;
}

}  // namespace quadtile
