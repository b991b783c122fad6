#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadtile/angles.hpp"
#include "quadtile/report.hpp"

namespace quadtile {

class TilingMap;

/// b, c, d all even (with alpha^a gamma^c and alpha beta gamma delta shapes excluded when a > 0),
/// or a = 0 with b, c, d all odd and positive.
bool parity_admissible(const VertexSignature& sig);

/// Literal degree-3, 4 and 5 vertex lists in catalog order. Throws std::domain_error outside {3,4,5}.
std::vector<VertexSignature> degree_vertex_catalog(int k);

/// All parity-admissible signatures of degree k (k >= 3), catalog order.
std::vector<VertexSignature> admissible_signatures(int k);

struct DegreeVector {
    int f = 0;
    /// degree -> number of vertices of that degree
    std::map<int, long> v;
};

DegreeVector degree_vector(const TilingMap& map);

/// v3 = 8 + sum (h-4) v_h, f = 6 + sum (h-3) v_h, f even, e = 2f, v = sum v_h, v - e + f = 2.
CheckReport counting_identities(const DegreeVector& dv);

/// Angle pairs flanking edge endpoints: c-edges {gg, gd, dd}, b-edges {bb, bg, gg}.
struct BalanceCounts {
    long gg_c = 0;
    long gd_c = 0;
    long dd_c = 0;
    long bb_b = 0;
    long bg_b = 0;
    long gg_b = 0;

    bool balanced() const { return gg_c == dd_c && bb_b == gg_b; }
};

BalanceCounts balance_pair_counts(const TilingMap& map);

using Multiplicities = std::vector<long>;

/// Nonnegative multiplicity vectors with every angle count equal to f and sum = f + 2
/// (equivalently v3 = 8 + sum (h-4) v_h). Each n_v <= f. Stops after `limit` solutions.
std::vector<Multiplicities> avc_feasibility(const std::vector<VertexSignature>& signatures, int f,
                                            std::size_t limit = 1000000);

/// A vertex family of a constructed tiling.
struct KnownFamily {
    std::string name;
    std::vector<VertexSignature> avc;  ///< catalog order
};

/// AVCs of the constructed tiling families that exist at this f.
std::vector<KnownFamily> known_families(int f);

struct AVCCandidate {
    int f = 0;
    std::vector<VertexSignature> signatures;  ///< catalog order
    Multiplicities witness;                   ///< one feasible multiplicity vector, all entries >= 1
    AngleSolution angles;                     ///< solution of the candidate's own system at f
    std::vector<std::string> realized_by;     ///< known families with exactly this AVC
    std::vector<std::string> flags;

    std::string str() const;
};

struct SearchLimits {
    std::uint64_t max_nodes = 50'000'000;
    std::size_t max_candidates = 2'000'000;
};

struct AVCSearchResult {
    std::vector<AVCCandidate> candidates;  ///< sorted
    bool truncated = false;
    std::string truncation_report;
    std::uint64_t nodes = 0;
    std::size_t flats = 0;

    const AVCCandidate* find(const std::vector<VertexSignature>& avc) const;
};

/// Angle-feasible and count-feasible vertex sets at f, built from the degree-3 planes of the
/// angle space and their line and point sub-flats.
AVCSearchResult search_avcs(int f, int max_degree, const SearchLimits& limits = {});

std::string signature_list_str(const std::vector<VertexSignature>& sigs);

}  // namespace quadtile
