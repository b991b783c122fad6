#include "quadtile/tilingmap.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

#include "quadtile/combinatorics.hpp"

namespace quadtile {

namespace {

using Kind = TilingMapError::Kind;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
};

}  // namespace

const char* edge_label_name(EdgeLabel l) {
    switch (l) {
        case EdgeLabel::a: return "a";
        case EdgeLabel::b: return "b";
        case EdgeLabel::c: return "c";
    }
    return "?";
}

const char* edge_slot_name(int edge) {
    static const char* names[4] = {"AB", "BC", "CD", "DA"};
    return names[edge & 3];
}

int parse_edge_slot(const std::string& name) {
    static const char* names[4] = {"AB", "BC", "CD", "DA"};
    for (int e = 0; e < 4; ++e)
        if (name == names[e]) return e;
    throw TilingMapError(Kind::Malformed, "unknown edge slot '" + name + "'");
}

const char* error_kind_name(TilingMapError::Kind k) {
    switch (k) {
        case Kind::LabelMismatch: return "label-mismatch";
        case Kind::NonInvolution: return "non-involution";
        case Kind::Disconnected: return "disconnected";
        case Kind::EulerCharacteristic: return "euler-characteristic";
        case Kind::NonOrientable: return "non-orientable";
        case Kind::Malformed: return "malformed";
    }
    return "?";
}

TilingMap TilingMap::build(int f, const std::vector<GlueEntry>& glue) {
    if (f <= 0) throw TilingMapError(Kind::Malformed, "tile count must be positive");
    const int slots = 4 * f;
    TilingMap m;
    m.f_ = f;
    m.glue_.assign(slots, -1);
    m.parallel_.assign(slots, 0);

    for (const auto& g : glue) {
        if (g.tile1 < 0 || g.tile1 >= f || g.tile2 < 0 || g.tile2 >= f || g.edge1 < 0 || g.edge1 > 3 ||
            g.edge2 < 0 || g.edge2 > 3)
            throw TilingMapError(Kind::NonInvolution, "glue entry refers to a slot outside the map");
        int s1 = slot_of(g.tile1, g.edge1);
        int s2 = slot_of(g.tile2, g.edge2);
        if (s1 == s2)
            throw TilingMapError(Kind::NonInvolution, "slot " + std::to_string(g.tile1) + ":" +
                                                          edge_slot_name(g.edge1) + " glued to itself");
        if (m.glue_[s1] != -1 || m.glue_[s2] != -1)
            throw TilingMapError(Kind::NonInvolution, "slot glued twice");
        m.glue_[s1] = s2;
        m.glue_[s2] = s1;
        m.parallel_[s1] = m.parallel_[s2] = g.parallel ? 1 : 0;
    }
    for (int s = 0; s < slots; ++s)
        if (m.glue_[s] < 0)
            throw TilingMapError(Kind::NonInvolution, "slot " + std::to_string(slot_tile(s)) + ":" +
                                                          edge_slot_name(slot_edge(s)) + " is not glued");
    for (int s = 0; s < slots; ++s) {
        int t = m.glue_[s];
        if (edge_label(slot_edge(s)) != edge_label(slot_edge(t))) {
            std::ostringstream os;
            os << "edge " << slot_tile(s) << ":" << edge_slot_name(slot_edge(s)) << " ("
               << edge_label_name(edge_label(slot_edge(s))) << ") glued to " << slot_tile(t) << ":"
               << edge_slot_name(slot_edge(t)) << " (" << edge_label_name(edge_label(slot_edge(t))) << ")";
            throw TilingMapError(Kind::LabelMismatch, os.str());
        }
    }

    // Connectivity and orientation in one sweep.
    m.orient_.assign(f, 2);
    m.orient_[0] = 0;
    std::vector<int> stack{0};
    int seen = 1;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int e = 0; e < 4; ++e) {
            int s = slot_of(t, e);
            int u = slot_tile(m.glue_[s]);
            std::uint8_t want = m.orient_[t] ^ m.parallel_[s];
            if (m.orient_[u] == 2) {
                m.orient_[u] = want;
                ++seen;
                stack.push_back(u);
            }
        }
    }
    if (seen != f) throw TilingMapError(Kind::Disconnected, "map has more than one component");
    for (int s = 0; s < slots; ++s) {
        int t = slot_tile(s);
        int u = slot_tile(m.glue_[s]);
        if ((m.orient_[t] ^ m.parallel_[s]) != m.orient_[u])
            throw TilingMapError(Kind::NonOrientable, "tile orientations cannot be made consistent");
    }

    m.derive();
    int euler = m.vertex_count() - 2 * f + f;
    if (euler != 2)
        throw TilingMapError(Kind::EulerCharacteristic,
                             "v - e + f = " + std::to_string(euler) + " (v=" + std::to_string(m.vertex_count()) +
                                 ", e=" + std::to_string(2 * f) + ", f=" + std::to_string(f) + ")");
    return m;
}

void TilingMap::derive() {
    const int slots = 4 * f_;
    UnionFind uf(slots);
    for (int s = 0; s < slots; ++s) {
        int s2 = glue_[s];
        if (s2 < s) continue;
        int t = slot_tile(s), e = slot_edge(s);
        int u = slot_tile(s2), g = slot_edge(s2);
        int c0 = 4 * t + e, c1 = 4 * t + (e + 1) % 4;
        int d0 = 4 * u + g, d1 = 4 * u + (g + 1) % 4;
        if (parallel_[s]) {
            uf.unite(c0, d0);
            uf.unite(c1, d1);
        } else {
            uf.unite(c0, d1);
            uf.unite(c1, d0);
        }
    }
    corner_vertex_.assign(slots, -1);
    std::vector<int> root_to_vertex(slots, -1);
    int nv = 0;
    for (int c = 0; c < slots; ++c) {
        int r = uf.find(c);
        if (root_to_vertex[r] < 0) root_to_vertex[r] = nv++;
        corner_vertex_[c] = root_to_vertex[r];
    }

    vertices_.assign(nv, {});
    std::vector<std::uint8_t> visited(slots, 0);
    std::vector<int> class_size(nv, 0);
    for (int c = 0; c < slots; ++c) ++class_size[corner_vertex_[c]];
    for (int c = 0; c < slots; ++c) {
        int v = corner_vertex_[c];
        if (!vertices_[v].corners.empty()) continue;
        VertexCycle& cyc = vertices_[v];
        int t = c / 4, k = c % 4;
        std::array<int, 4> counts{};
        for (int step = 0;; ++step) {
            if (step > slots || visited[4 * t + k])
                throw TilingMapError(Kind::Malformed, "vertex rotation does not close");
            visited[4 * t + k] = 1;
            cyc.corners.push_back({t, k});
            ++counts[k];
            int exit = orient_[t] == 0 ? k : (k + 3) % 4;
            int s = slot_of(t, exit);
            cyc.exits.push_back(s);
            int s2 = glue_[s];
            int u = slot_tile(s2), g = slot_edge(s2);
            bool at_start = (k == exit);
            int k2 = (parallel_[s] == at_start) ? g : (g + 1) % 4;
            t = u;
            k = k2;
            if (4 * t + k == c) break;
        }
        if (static_cast<int>(cyc.corners.size()) != class_size[v])
            throw TilingMapError(Kind::Malformed, "vertex " + std::to_string(v) + " is pinched");
        cyc.signature = {counts[0], counts[1], counts[2], counts[3]};
    }

    edges_.clear();
    slot_edge_index_.assign(slots, -1);
    for (int s = 0; s < slots; ++s) {
        int s2 = glue_[s];
        if (s2 < s) continue;
        int t = slot_tile(s), e = slot_edge(s);
        MapEdge me;
        me.slot1 = s;
        me.slot2 = s2;
        me.v1 = corner_vertex_[4 * t + e];
        me.v2 = corner_vertex_[4 * t + (e + 1) % 4];
        me.label = edge_label(e);
        slot_edge_index_[s] = slot_edge_index_[s2] = static_cast<int>(edges_.size());
        edges_.push_back(me);
    }
}

TilingMap TilingMap::from_faces(const std::vector<std::array<int, 4>>& faces) {
    const int f = static_cast<int>(faces.size());
    if (f == 0) throw TilingMapError(Kind::Malformed, "no faces");
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    std::set<int> ids;
    for (int t = 0; t < f; ++t) {
        for (int e = 0; e < 4; ++e) {
            int u = faces[t][e], v = faces[t][(e + 1) % 4];
            ids.insert(u);
            if (u == v) throw TilingMapError(Kind::Malformed, "degenerate edge in face " + std::to_string(t));
            by_pair[{std::min(u, v), std::max(u, v)}].push_back(slot_of(t, e));
        }
    }
    std::vector<GlueEntry> glue;
    for (const auto& [key, list] : by_pair) {
        if (list.size() != 2)
            throw TilingMapError(Kind::NonInvolution, "edge {" + std::to_string(key.first) + "," +
                                                          std::to_string(key.second) + "} used " +
                                                          std::to_string(list.size()) + " times");
        int s1 = list[0], s2 = list[1];
        int t1 = slot_tile(s1), e1 = slot_edge(s1), t2 = slot_tile(s2), e2 = slot_edge(s2);
        bool parallel = faces[t1][e1] == faces[t2][e2];
        glue.push_back({t1, e1, t2, e2, parallel});
    }
    TilingMap m = build(f, glue);
    if (m.vertex_count() != static_cast<int>(ids.size()))
        throw TilingMapError(Kind::Malformed, "face list vertices do not match the glued vertex cycles");
    return m;
}

std::vector<GlueEntry> TilingMap::glue_entries() const {
    std::vector<GlueEntry> out;
    for (int s = 0; s < 4 * f_; ++s) {
        int s2 = glue_[s];
        if (s2 < s) continue;
        out.push_back({slot_tile(s), slot_edge(s), slot_tile(s2), slot_edge(s2), parallel_[s] != 0});
    }
    return out;
}

std::vector<std::array<int, 4>> TilingMap::faces() const {
    std::vector<std::array<int, 4>> out(f_);
    for (int t = 0; t < f_; ++t)
        for (int k = 0; k < 4; ++k) out[t][k] = corner_vertex_[4 * t + k];
    return out;
}

std::string TilingMap::to_json() const {
    nlohmann::ordered_json j;
    j["f"] = f_;
    auto glue = nlohmann::ordered_json::array();
    for (const auto& g : glue_entries())
        glue.push_back({g.tile1, edge_slot_name(g.edge1), g.tile2, edge_slot_name(g.edge2)});
    j["glue"] = glue;
    std::vector<int> orient(orient_.begin(), orient_.end());
    j["orient"] = orient;
    return j.dump();
}

TilingMap TilingMap::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw TilingMapError(Kind::Malformed, std::string("invalid JSON: ") + ex.what());
    }
    try {
        int f = j.at("f").get<int>();
        const auto& orient = j.at("orient");
        if (!orient.is_array() || static_cast<int>(orient.size()) != f)
            throw TilingMapError(Kind::Malformed, "orient must list one bit per tile");
        std::vector<int> o;
        for (const auto& x : orient) {
            int bit = x.get<int>();
            if (bit != 0 && bit != 1) throw TilingMapError(Kind::Malformed, "orient bits must be 0 or 1");
            o.push_back(bit);
        }
        std::vector<GlueEntry> glue;
        for (const auto& row : j.at("glue")) {
            if (!row.is_array() || row.size() != 4) throw TilingMapError(Kind::Malformed, "glue rows have 4 fields");
            GlueEntry g;
            g.tile1 = row[0].get<int>();
            g.edge1 = parse_edge_slot(row[1].get<std::string>());
            g.tile2 = row[2].get<int>();
            g.edge2 = parse_edge_slot(row[3].get<std::string>());
            if (g.tile1 < 0 || g.tile1 >= f || g.tile2 < 0 || g.tile2 >= f)
                throw TilingMapError(Kind::NonInvolution, "glue entry refers to a tile outside the map");
            g.parallel = o[g.tile1] != o[g.tile2];
            glue.push_back(g);
        }
        return build(f, glue);
    } catch (const nlohmann::json::exception& ex) {
        throw TilingMapError(Kind::Malformed, std::string("bad map JSON: ") + ex.what());
    }
}

TilingMap TilingMap::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != f_) throw std::invalid_argument("permutation size differs from f");
    std::vector<GlueEntry> glue;
    for (auto g : glue_entries()) {
        g.tile1 = perm[g.tile1];
        g.tile2 = perm[g.tile2];
        glue.push_back(g);
    }
    return build(f_, glue);
}

std::vector<int> TilingMap::canonical_code() const {
    std::vector<int> best;
    std::vector<int> code;
    std::vector<int> index(f_);
    std::vector<int> order;
    for (int start = 0; start < f_; ++start) {
        std::fill(index.begin(), index.end(), -1);
        order.clear();
        code.clear();
        index[start] = 0;
        order.push_back(start);
        bool worse = false;
        bool better = best.empty();
        for (std::size_t head = 0; head < order.size() && !worse; ++head) {
            int t = order[head];
            for (int e = 0; e < 4; ++e) {
                int s2 = glue_[slot_of(t, e)];
                int u = slot_tile(s2);
                if (index[u] < 0) {
                    index[u] = static_cast<int>(order.size());
                    order.push_back(u);
                }
                int value = index[u] * 8 + slot_edge(s2) * 2 + parallel_[slot_of(t, e)];
                if (!better) {
                    int ref = best[code.size()];
                    if (value > ref) {
                        worse = true;
                        break;
                    }
                    if (value < ref) better = true;
                }
                code.push_back(value);
            }
        }
        if (!worse && better) best = code;
    }
    best.insert(best.begin(), f_);
    return best;
}

bool isomorphic(const TilingMap& x, const TilingMap& y) {
    return x.f() == y.f() && x.canonical_code() == y.canonical_code();
}

Avc extract_avc(const TilingMap& map) {
    Avc out;
    for (const auto& v : map.vertices()) ++out[v.signature];
    return out;
}

std::string avc_summary(const Avc& avc) {
    std::string out;
    for (const auto& [sig, n] : avc) {
        if (!out.empty()) out += " ";
        out += sig.str() + "×" + std::to_string(n);
    }
    return out;
}

CheckReport verify(const TilingMap& map, const std::vector<VertexSignature>& expected, int f) {
    CheckReport rep;
    rep.add("tile count", map.f() == f, "map has f=" + std::to_string(map.f()) + ", expected " + std::to_string(f));

    bool involution = true;
    bool labels = true;
    for (int s = 0; s < 4 * map.f(); ++s) {
        int t = map.glue(s);
        if (t == s || map.glue(t) != s) involution = false;
        if (edge_label(slot_edge(s)) != edge_label(slot_edge(t))) labels = false;
    }
    rep.add("involution", involution);
    rep.add("edge labels", labels);

    std::array<int, 3> by_label{};
    for (const auto& e : map.edges()) ++by_label[static_cast<int>(e.label)];
    bool edge_counts = map.f() % 2 == 0 && by_label[0] == map.f() && by_label[1] == map.f() / 2 &&
                       by_label[2] == map.f() / 2;
    rep.add("edge counts", edge_counts,
            "e_a=" + std::to_string(by_label[0]) + " e_b=" + std::to_string(by_label[1]) +
                " e_c=" + std::to_string(by_label[2]));

    int euler = map.vertex_count() - static_cast<int>(map.edges().size()) + map.f();
    rep.add("euler", euler == 2, "v - e + f = " + std::to_string(euler));

    std::array<long, 4> totals{};
    std::string bad;
    for (std::size_t v = 0; v < map.vertices().size(); ++v) {
        const auto& sig = map.vertices()[v].signature;
        for (int i = 0; i < 4; ++i) totals[i] += sig.exponent(i);
        if (!parity_admissible(sig)) {
            if (!bad.empty()) bad += ", ";
            bad += "vertex " + std::to_string(v) + " " + sig.str();
        }
    }
    rep.add("angle counts",
            totals[0] == map.f() && totals[1] == map.f() && totals[2] == map.f() && totals[3] == map.f());
    rep.add("parity", bad.empty(), bad.empty() ? "" : "inadmissible vertex " + bad);

    CheckReport counting = counting_identities(degree_vector(map));
    std::string counting_detail;
    for (const auto& it : counting.failures()) counting_detail += it.name + "; ";
    rep.add("counting identities", counting.ok(), counting_detail);

    BalanceCounts bc = balance_pair_counts(map);
    rep.add("balance", bc.balanced(),
            "c: γγ=" + std::to_string(bc.gg_c) + " γδ=" + std::to_string(bc.gd_c) + " δδ=" + std::to_string(bc.dd_c) +
                "; b: ββ=" + std::to_string(bc.bb_b) + " βγ=" + std::to_string(bc.bg_b) +
                " γγ=" + std::to_string(bc.gg_b));

    std::set<VertexSignature, CatalogOrder> have;
    for (const auto& [sig, n] : extract_avc(map)) have.insert(sig);
    std::set<VertexSignature, CatalogOrder> want(expected.begin(), expected.end());
    std::string diff;
    for (const auto& s : want)
        if (!have.count(s)) diff += " missing " + s.str();
    for (const auto& s : have)
        if (!want.count(s)) diff += " unexpected " + s.str();
    rep.add("avc", diff.empty(), diff.empty() ? avc_summary(extract_avc(map)) : "AVC mismatch:" + diff);
    return rep;
}

}  // namespace quadtile
