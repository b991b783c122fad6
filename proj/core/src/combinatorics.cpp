#include "quadtile/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

#include "quadtile/tilingmap.hpp"

namespace quadtile {

bool parity_admissible(const VertexSignature& s) {
    if (s.a < 0 || s.b < 0 || s.c < 0 || s.d < 0 || s.degree() < 3) return false;
    bool all_even = s.b % 2 == 0 && s.c % 2 == 0 && s.d % 2 == 0;
    if (s.a > 0) {
        if (!all_even) return false;
        if (s.c > 0 && s.b == 0 && s.d == 0) return false;
        if (s.b > 0 && s.c > 0 && s.d > 0) return false;
        return true;
    }
    bool all_odd_positive = s.b % 2 == 1 && s.c % 2 == 1 && s.d % 2 == 1;
    return all_even || all_odd_positive;
}

std::vector<VertexSignature> degree_vertex_catalog(int k) {
    switch (k) {
        case 3:
            return {{3, 0, 0, 0}, {1, 2, 0, 0}, {1, 0, 0, 2}, {0, 1, 1, 1}};
        case 4:
            return {{4, 0, 0, 0}, {2, 2, 0, 0}, {2, 0, 0, 2}, {0, 4, 0, 0}, {0, 2, 2, 0},
                    {0, 2, 0, 2}, {0, 0, 4, 0}, {0, 0, 2, 2}, {0, 0, 0, 4}};
        case 5:
            return {{5, 0, 0, 0}, {3, 2, 0, 0}, {3, 0, 0, 2}, {1, 4, 0, 0}, {1, 2, 2, 0}, {1, 2, 0, 2},
                    {1, 0, 2, 2}, {1, 0, 0, 4}, {0, 3, 1, 1}, {0, 1, 3, 1}, {0, 1, 1, 3}};
        default:
            throw std::domain_error("degree_vertex_catalog is defined for degrees 3, 4 and 5");
    }
}

std::vector<VertexSignature> admissible_signatures(int k) {
    std::vector<VertexSignature> out;
    if (k < 3) return out;
    for (int a = k; a >= 0; --a)
        for (int b = k - a; b >= 0; --b)
            for (int c = k - a - b; c >= 0; --c) {
                VertexSignature s{a, b, c, k - a - b - c};
                if (parity_admissible(s)) out.push_back(s);
            }
    return out;
}

DegreeVector degree_vector(const TilingMap& map) {
    DegreeVector dv;
    dv.f = map.f();
    for (const auto& v : map.vertices()) ++dv.v[v.degree()];
    return dv;
}

CheckReport counting_identities(const DegreeVector& dv) {
    CheckReport rep;
    long v = 0, degree_sum = 0, excess4 = 0, excess3 = 0, low = 0;
    for (const auto& [h, n] : dv.v) {
        if (n < 0) rep.add("nonnegative counts", false, "v_" + std::to_string(h) + " < 0");
        v += n;
        degree_sum += static_cast<long>(h) * n;
        if (h >= 4) {
            excess4 += (h - 4) * n;
            excess3 += (h - 3) * n;
        }
        if (h < 3) low += n;
    }
    long v3 = dv.v.count(3) ? dv.v.at(3) : 0;
    long f = dv.f;
    rep.add("min degree 3", low == 0, std::to_string(low) + " vertices of degree < 3");
    rep.add("v3 = 8 + sum (h-4) v_h", v3 == 8 + excess4,
            "v3=" + std::to_string(v3) + ", rhs=" + std::to_string(8 + excess4));
    rep.add("f = 6 + sum (h-3) v_h", f == 6 + excess3,
            "f=" + std::to_string(f) + ", rhs=" + std::to_string(6 + excess3));
    rep.add("f even", f % 2 == 0);
    rep.add("e = 2f", degree_sum % 2 == 0 && degree_sum / 2 == 2 * f,
            "sum h v_h = " + std::to_string(degree_sum));
    long e = degree_sum / 2;
    rep.add("v - e + f = 2", v - e + f == 2, "v=" + std::to_string(v) + ", e=" + std::to_string(e));
    return rep;
}

BalanceCounts balance_pair_counts(const TilingMap& map) {
    BalanceCounts bc;
    for (const auto& e : map.edges()) {
        if (e.label == EdgeLabel::a) continue;
        int k = slot_edge(e.slot1), g = slot_edge(e.slot2);
        bool par = map.parallel(e.slot1);
        // Corners at the first and second endpoint of the edge, from both sides.
        int first[2] = {k, par ? g : (g + 1) % 4};
        int second[2] = {(k + 1) % 4, par ? (g + 1) % 4 : g};
        for (auto* ends : {first, second}) {
            if (e.label == EdgeLabel::c) {
                int gammas = (ends[0] == 2) + (ends[1] == 2);
                if (gammas == 2) ++bc.gg_c;
                else if (gammas == 1) ++bc.gd_c;
                else ++bc.dd_c;
            } else {
                int betas = (ends[0] == 1) + (ends[1] == 1);
                if (betas == 2) ++bc.bb_b;
                else if (betas == 1) ++bc.bg_b;
                else ++bc.gg_b;
            }
        }
    }
    return bc;
}

std::vector<Multiplicities> avc_feasibility(const std::vector<VertexSignature>& sigs, int f, std::size_t limit) {
    std::vector<Multiplicities> out;
    const int n = static_cast<int>(sigs.size());
    if (n == 0 || f <= 0) return out;

    // Suffix bounds for pruning.
    std::vector<std::array<bool, 4>> has(n + 1, {false, false, false, false});
    std::vector<int> min_deg(n + 1, 1 << 20), max_deg(n + 1, 0);
    for (int i = n - 1; i >= 0; --i) {
        has[i] = has[i + 1];
        for (int j = 0; j < 4; ++j)
            if (sigs[i].exponent(j) > 0) has[i][j] = true;
        min_deg[i] = std::min(min_deg[i + 1], sigs[i].degree());
        max_deg[i] = std::max(max_deg[i + 1], sigs[i].degree());
    }

    Multiplicities cur(n, 0);
    std::array<long, 4> need{f, f, f, f};
    long rem = f + 2;

    auto rec = [&](auto&& self, int idx) -> void {
        if (out.size() >= limit) return;
        long need_sum = need[0] + need[1] + need[2] + need[3];
        if (idx == n) {
            if (need_sum == 0 && rem == 0) out.push_back(cur);
            return;
        }
        for (int j = 0; j < 4; ++j)
            if (need[j] > 0 && !has[idx][j]) return;
        if (need_sum < static_cast<long>(min_deg[idx]) * rem || need_sum > static_cast<long>(max_deg[idx]) * rem)
            return;
        const auto& s = sigs[idx];
        long cap = std::min<long>(f, rem);
        for (int j = 0; j < 4; ++j)
            if (s.exponent(j) > 0) cap = std::min(cap, need[j] / s.exponent(j));
        for (long k = 0; k <= cap; ++k) {
            cur[idx] = k;
            for (int j = 0; j < 4; ++j) need[j] -= k * s.exponent(j);
            rem -= k;
            self(self, idx + 1);
            for (int j = 0; j < 4; ++j) need[j] += k * s.exponent(j);
            rem += k;
        }
        cur[idx] = 0;
    };
    rec(rec, 0);
    return out;
}

std::vector<KnownFamily> known_families(int f) {
    std::vector<KnownFamily> out;
    if (f < 6 || f % 2) return out;
    out.push_back({"earth map", {{0, 1, 1, 1}, {f / 2, 0, 0, 0}}});
    if (f % 8 == 0 && f >= 16) out.push_back({"pq earth map", {{1, 2, 0, 0}, {2, 0, 0, 2}, {0, 0, 4, 0}, {0, 0, 0, f / 4}}});
    if (f == 24) {
        out.push_back({"cube subdivision", {{3, 0, 0, 0}, {0, 2, 0, 2}, {0, 0, 4, 0}}});
        out.push_back({"prism subdivision", {{3, 0, 0, 0}, {1, 2, 0, 0}, {2, 0, 0, 2}, {0, 2, 0, 2}, {0, 0, 4, 0}}});
    }
    if (f % 16 == 8 && f >= 24) {
        out.push_back({"alphadelta", {{1, 2, 0, 0}, {2, 0, 0, 2}, {0, 0, 4, 0}, {1, 0, 0, (f + 8) / 8}}});
        out.push_back({"beta2delta",
                       {{1, 2, 0, 0}, {2, 0, 0, 2}, {0, 0, 4, 0}, {0, 2, 0, (f - 8) / 8}, {1, 0, 0, (f + 8) / 8}}});
    }
    for (auto& fam : out) std::sort(fam.avc.begin(), fam.avc.end(), CatalogOrder{});
    return out;
}

std::string signature_list_str(const std::vector<VertexSignature>& sigs) {
    std::string out = "{";
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        if (i) out += ", ";
        out += sigs[i].str();
    }
    return out + "}";
}

}  // namespace quadtile
