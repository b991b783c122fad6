#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include <boost/rational.hpp>

#include "quadtile/combinatorics.hpp"

namespace quadtile {

namespace {

// Angles at a concrete f stay small, so 64-bit fractions are exact here. Comparisons go through
// numerator() or Q operands: mixed rational/scalar == recurses under C++20 in this Boost.
using Q = boost::rational<long long>;
using Vec4 = std::array<Q, 4>;

Q to_q(const Rational& r) {
    return Q(static_cast<long long>(numerator(r)), static_cast<long long>(denominator(r)));
}

// a . t + b > 0 (strict) or >= 0.
struct Ineq {
    std::vector<Q> a;
    Q b;
    bool strict = false;
};

bool fm_feasible(std::vector<Ineq> sys, int dim) {
    for (int k = dim - 1; k >= 0; --k) {
        std::vector<Ineq> pos, neg, next;
        for (auto& q : sys) {
            if (q.a[k].numerator() > 0) pos.push_back(std::move(q));
            else if (q.a[k].numerator() < 0) neg.push_back(std::move(q));
            else next.push_back(std::move(q));
        }
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                Q wp = -n.a[k];
                Q wn = p.a[k];
                Ineq c;
                c.a.resize(k);
                for (int j = 0; j < k; ++j) c.a[j] = wp * p.a[j] + wn * n.a[j];
                c.b = wp * p.b + wn * n.b;
                c.strict = p.strict || n.strict;
                next.push_back(std::move(c));
            }
        }
        for (auto& q : next) q.a.resize(k);
        // Drop constant rows early; they either hold or kill the system.
        std::vector<Ineq> kept;
        for (auto& q : next) {
            bool constant = std::all_of(q.a.begin(), q.a.end(), [](const Q& x) { return x.numerator() == 0; });
            if (constant) {
                if (q.strict ? !(q.b.numerator() > 0) : !(q.b.numerator() >= 0)) return false;
                continue;
            }
            kept.push_back(std::move(q));
        }
        sys = std::move(kept);
    }
    for (const auto& q : sys)
        if (q.strict ? !(q.b.numerator() > 0) : !(q.b.numerator() >= 0)) return false;
    return true;
}

// x(t) = x0 + sum_k t_k dirs[k], angles in units of pi.
struct Flat {
    Vec4 x0;
    std::vector<Vec4> dirs;
};

Ineq affine(const Flat& fl, int i, const Q& scale, const Q& shift, bool strict) {
    // scale * x_i(t) + shift
    Ineq q;
    for (const auto& d : fl.dirs) q.a.push_back(scale * d[i]);
    q.b = scale * fl.x0[i] + shift;
    q.strict = strict;
    return q;
}

Ineq difference(const Flat& fl, int i, int j, bool strict) {
    // x_i - x_j
    Ineq q;
    for (const auto& d : fl.dirs) q.a.push_back(d[i] - d[j]);
    q.b = fl.x0[i] - fl.x0[j];
    q.strict = strict;
    return q;
}

bool point_valid(const Vec4& x) {
    int big = 0;
    for (const auto& v : x) {
        if (!(v.numerator() > 0 && v < Q(2))) return false;
        if (!(v < Q(1))) ++big;
    }
    return big <= 1 && (x[1] != x[3] || x[2] == Q(1));
}

// Angles in (0, 2pi), at most one angle >= pi, and beta != delta unless gamma = pi.
bool flat_valid(const Flat& fl) {
    const int dim = static_cast<int>(fl.dirs.size());
    if (dim == 0) return point_valid(fl.x0);
    std::vector<Ineq> base;
    for (int i = 0; i < 4; ++i) {
        base.push_back(affine(fl, i, 1, 0, true));
        base.push_back(affine(fl, i, -1, 2, true));
    }
    for (int big = -1; big < 4; ++big) {
        std::vector<Ineq> sys = base;
        for (int i = 0; i < 4; ++i) {
            if (i == big) sys.push_back(affine(fl, i, 1, -1, false));
            else sys.push_back(affine(fl, i, -1, 1, true));
        }
        for (int opt = 0; opt < 3; ++opt) {
            std::vector<Ineq> s2 = sys;
            if (opt == 0) s2.push_back(difference(fl, 1, 3, true));
            else if (opt == 1) s2.push_back(difference(fl, 3, 1, true));
            else {
                s2.push_back(affine(fl, 2, 1, -1, false));
                s2.push_back(affine(fl, 2, -1, 1, false));
            }
            if (fm_feasible(std::move(s2), dim)) return true;
        }
    }
    return false;
}

Q dot(const VertexSignature& s, const Vec4& x) {
    return Q(s.a) * x[0] + Q(s.b) * x[1] + Q(s.c) * x[2] + Q(s.d) * x[3];
}

// Supports of nonnegative multiplicity vectors over a fixed vertex list.
class SupportEnumerator {
public:
    using Mask = std::uint64_t;

    SupportEnumerator(const std::vector<VertexSignature>& sigs, int f, std::uint64_t& nodes, std::uint64_t max_nodes)
        : sigs_(sigs), f_(f), nodes_(nodes), max_nodes_(max_nodes) {
        const int n = static_cast<int>(sigs.size());
        has_.assign(n + 1, {false, false, false, false});
        min_deg_.assign(n + 1, 1 << 20);
        max_deg_.assign(n + 1, 0);
        for (int i = n - 1; i >= 0; --i) {
            has_[i] = has_[i + 1];
            for (int j = 0; j < 4; ++j)
                if (sigs[i].exponent(j) > 0) has_[i][j] = true;
            min_deg_[i] = std::min(min_deg_[i + 1], sigs[i].degree());
            max_deg_[i] = std::max(max_deg_[i + 1], sigs[i].degree());
        }
    }

    bool truncated() const { return truncated_; }

    std::vector<Mask> run() {
        return rec(0, {f_, f_, f_, f_}, f_ + 2);
    }

private:
    const std::vector<Mask>& rec(int idx, std::array<int, 4> need, int rem) {
        static const std::vector<Mask> empty;
        static const std::vector<Mask> unit{0};
        const int n = static_cast<int>(sigs_.size());
        if (++nodes_ > max_nodes_) {
            truncated_ = true;
            return empty;
        }
        long need_sum = need[0] + need[1] + need[2] + need[3];
        if (idx == n) return (need_sum == 0 && rem == 0) ? unit : empty;
        for (int j = 0; j < 4; ++j)
            if (need[j] > 0 && !has_[idx][j]) return empty;
        if (need_sum < static_cast<long>(min_deg_[idx]) * rem || need_sum > static_cast<long>(max_deg_[idx]) * rem)
            return empty;

        std::uint64_t key = static_cast<std::uint64_t>(idx);
        for (int j = 0; j < 4; ++j) key = (key << 10) | static_cast<std::uint64_t>(need[j]);
        key = (key << 10) | static_cast<std::uint64_t>(rem);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        std::vector<Mask> out;
        const auto& s = sigs_[idx];
        int cap = rem;
        for (int j = 0; j < 4; ++j)
            if (s.exponent(j) > 0) cap = std::min(cap, need[j] / s.exponent(j));
        for (int k = 0; k <= cap; ++k) {
            std::array<int, 4> nn = need;
            for (int j = 0; j < 4; ++j) nn[j] -= k * s.exponent(j);
            const auto& sub = rec(idx + 1, nn, rem - k);
            Mask bit = k > 0 ? (Mask(1) << idx) : 0;
            for (Mask m : sub) out.push_back(m | bit);
            if (truncated_) break;
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return memo_.emplace(key, std::move(out)).first->second;
    }

    const std::vector<VertexSignature>& sigs_;
    int f_;
    std::uint64_t& nodes_;
    std::uint64_t max_nodes_;
    bool truncated_ = false;
    std::vector<std::array<bool, 4>> has_;
    std::vector<int> min_deg_, max_deg_;
    std::unordered_map<std::uint64_t, std::vector<Mask>> memo_;
};

// One multiplicity vector with every entry >= 1.
Multiplicities witness_for(const std::vector<VertexSignature>& sigs, int f) {
    std::vector<long> need(4, f);
    long rem = f + 2;
    for (const auto& s : sigs) {
        for (int j = 0; j < 4; ++j) need[j] -= s.exponent(j);
        rem -= 1;
    }
    const int n = static_cast<int>(sigs.size());
    Multiplicities cur(n, 1);
    bool found = false;
    auto rec = [&](auto&& self, int idx) -> void {
        if (found) return;
        if (idx == n) {
            if (need[0] == 0 && need[1] == 0 && need[2] == 0 && need[3] == 0 && rem == 0) found = true;
            return;
        }
        for (int j = 0; j < 4; ++j)
            if (need[j] < 0) return;
        if (rem < 0) return;
        const auto& s = sigs[idx];
        long cap = rem;
        for (int j = 0; j < 4; ++j)
            if (s.exponent(j) > 0) cap = std::min(cap, need[j] / s.exponent(j));
        for (long k = cap; k >= 0 && !found; --k) {
            for (int j = 0; j < 4; ++j) need[j] -= k * s.exponent(j);
            rem -= k;
            cur[idx] = 1 + k;
            self(self, idx + 1);
            if (found) return;
            for (int j = 0; j < 4; ++j) need[j] += k * s.exponent(j);
            rem += k;
        }
    };
    bool ok = rem >= 0 && std::all_of(need.begin(), need.end(), [](long x) { return x >= 0; });
    if (ok) rec(rec, 0);
    if (!found) return {};
    return cur;
}

bool contains_all(const std::vector<VertexSignature>& set, const std::vector<VertexSignature>& sub) {
    for (const auto& s : sub)
        if (std::find(set.begin(), set.end(), s) == set.end()) return false;
    return true;
}

Vec4 add_scaled(const Vec4& x, const Vec4& d, const Q& k) {
    Vec4 out;
    for (int i = 0; i < 4; ++i) out[i] = x[i] + k * d[i];
    return out;
}

// Canonical form of a line: direction with first nonzero entry 1, base point with 0 in that entry.
std::pair<Vec4, Vec4> line_key(const Vec4& x0, const Vec4& d) {
    int j = 0;
    while (d[j].numerator() == 0) ++j;
    Vec4 dn;
    for (int i = 0; i < 4; ++i) dn[i] = d[i] / d[j];
    Vec4 base = add_scaled(x0, dn, -x0[j]);
    return {base, dn};
}

}  // namespace

std::string AVCCandidate::str() const {
    std::ostringstream os;
    os << signature_list_str(signatures) << "  n=(";
    for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? "," : "") << witness[i];
    os << ")  " << angles.str();
    for (const auto& r : realized_by) os << "  [" << r << "]";
    for (const auto& fl : flags) os << "  !" << fl;
    return os.str();
}

const AVCCandidate* AVCSearchResult::find(const std::vector<VertexSignature>& avc) const {
    std::vector<VertexSignature> key = avc;
    std::sort(key.begin(), key.end(), CatalogOrder{});
    for (const auto& c : candidates)
        if (c.signatures == key) return &c;
    return nullptr;
}

AVCSearchResult search_avcs(int f, int max_degree, const SearchLimits& limits) {
    if (f < 6 || f % 2) throw std::domain_error("search_avcs needs an even f >= 6");
    if (f > 1000) throw std::domain_error("search_avcs supports f <= 1000");
    AVCSearchResult res;

    std::vector<VertexSignature> catalog;
    for (int k = 3; k <= max_degree; ++k) {
        auto more = admissible_signatures(k);
        catalog.insert(catalog.end(), more.begin(), more.end());
    }
    const Q two = 2;

    std::map<std::vector<int>, bool> seen_supports;
    std::set<std::vector<int>> processed_m;
    std::string notes;

    auto members = [&](const Flat& fl) {
        std::vector<int> m;
        if (fl.dirs.empty()) {
            // Integer test on a common denominator: s . x == 2.
            long long den = 1;
            for (const auto& v : fl.x0) den = std::lcm(den, v.denominator());
            std::array<long long, 4> num;
            for (int i = 0; i < 4; ++i) num[i] = fl.x0[i].numerator() * (den / fl.x0[i].denominator());
            const long long rhs = 2 * den;
            for (int i = 0; i < static_cast<int>(catalog.size()); ++i) {
                const auto& s = catalog[i];
                if (s.a * num[0] + s.b * num[1] + s.c * num[2] + s.d * num[3] == rhs) m.push_back(i);
            }
            return m;
        }
        for (int i = 0; i < static_cast<int>(catalog.size()); ++i) {
            const auto& s = catalog[i];
            if (dot(s, fl.x0) != two) continue;
            bool ok = true;
            for (const auto& d : fl.dirs)
                if (dot(s, d).numerator() != 0) ok = false;
            if (ok) m.push_back(i);
        }
        return m;
    };

    auto process = [&](const Flat& fl) {
        if (res.truncated) return;
        ++res.flats;
        if (!flat_valid(fl)) return;
        std::vector<int> m = members(fl);
        if (!processed_m.insert(m).second) return;
        if (m.size() > 64) {
            res.truncated = true;
            notes += "flat with " + std::to_string(m.size()) + " vertex types exceeds the 64-type enumerator; ";
            return;
        }
        std::vector<VertexSignature> sigs;
        for (int i : m) sigs.push_back(catalog[i]);
        SupportEnumerator en(sigs, f, res.nodes, limits.max_nodes);
        auto masks = en.run();
        if (en.truncated()) {
            res.truncated = true;
            notes += "node budget of " + std::to_string(limits.max_nodes) + " exhausted; ";
        }
        for (auto mask : masks) {
            std::vector<int> support;
            for (int b = 0; b < static_cast<int>(m.size()); ++b)
                if (mask >> b & 1) support.push_back(m[b]);
            if (support.empty()) continue;
            seen_supports.emplace(support, true);
            if (seen_supports.size() > limits.max_candidates) {
                res.truncated = true;
                notes += "candidate cap reached; ";
                return;
            }
        }
    };

    std::set<std::pair<Vec4, Vec4>> seen_lines;
    std::set<Vec4> seen_points;

    for (const auto& v3 : degree_vertex_catalog(3)) {
        AngleSolution plane = solve_angle_system({v3}, true, f);
        if (plane.kind != AngleSolution::Kind::parametric || plane.free.size() != 2) continue;
        Flat P;
        for (int i = 0; i < 4; ++i) P.x0[i] = to_q(plane.expressions[i].constant.at(f));
        for (Angle fa : plane.free) {
            Vec4 d;
            for (int i = 0; i < 4; ++i) d[i] = to_q(plane.expressions[i].coeff[static_cast<int>(fa)]);
            P.dirs.push_back(d);
        }
        process(P);

        // Lines of the plane cut out by single vertex equations, grouped by equation.
        std::map<std::array<Q, 3>, int> line_eq;
        for (const auto& s : catalog) {
            Q p = dot(s, P.dirs[0]), q = dot(s, P.dirs[1]), r = two - dot(s, P.x0);
            if (p.numerator() == 0 && q.numerator() == 0) continue;
            Q lead = p.numerator() != 0 ? p : q;
            line_eq.emplace(std::array<Q, 3>{p / lead, q / lead, r / lead}, 0);
        }
        for (const auto& [eq, unused] : line_eq) {
            (void)unused;
            if (res.truncated) break;
            // p t1 + q t2 = r
            const Q &p = eq[0], &q = eq[1], &r = eq[2];
            Flat L;
            if (q.numerator() != 0) {
                // t2 = (r - p t1)/q, parameter t1
                L.x0 = add_scaled(P.x0, P.dirs[1], r / q);
                L.dirs.push_back(add_scaled(P.dirs[0], P.dirs[1], -p / q));
            } else {
                L.x0 = add_scaled(P.x0, P.dirs[0], r / p);
                L.dirs.push_back(P.dirs[1]);
            }
            if (!seen_lines.insert(line_key(L.x0, L.dirs[0])).second) continue;
            process(L);

            std::set<Q> params;
            for (const auto& s : catalog) {
                Q a = dot(s, L.dirs[0]);
                if (a.numerator() == 0) continue;
                params.insert((two - dot(s, L.x0)) / a);
            }
            for (const auto& t : params) {
                if (res.truncated) break;
                Flat pt;
                pt.x0 = add_scaled(L.x0, L.dirs[0], t);
                if (!seen_points.insert(pt.x0).second) continue;
                process(pt);
            }
        }
    }

    std::vector<KnownFamily> fams = known_families(f);
    const std::vector<VertexSignature> spurious_pair{{1, 2, 0, 0}, {0, 0, 2, 2}};
    for (const auto& [support, unused] : seen_supports) {
        (void)unused;
        AVCCandidate c;
        c.f = f;
        for (int i : support) c.signatures.push_back(catalog[i]);
        std::sort(c.signatures.begin(), c.signatures.end(), CatalogOrder{});
        c.witness = witness_for(c.signatures, f);
        c.angles = solve_angle_system(c.signatures, true, f);
        for (const auto& fam : fams)
            if (fam.avc == c.signatures) c.realized_by.push_back(fam.name);
        if (contains_all(c.signatures, spurious_pair)) c.flags.push_back("no tiling: αβ² with γ²δ²");
        res.candidates.push_back(std::move(c));
    }
    std::sort(res.candidates.begin(), res.candidates.end(), [](const AVCCandidate& x, const AVCCandidate& y) {
        if (x.signatures.size() != y.signatures.size()) return x.signatures.size() < y.signatures.size();
        return std::lexicographical_compare(x.signatures.begin(), x.signatures.end(), y.signatures.begin(),
                                            y.signatures.end(), CatalogOrder{});
    });
    if (res.truncated) res.truncation_report = "search truncated: " + notes;
    return res;
}

}  // namespace quadtile
