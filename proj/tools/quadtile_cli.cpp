#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "quadtile/angles.hpp"
#include "quadtile/combinatorics.hpp"
#include "quadtile/constructors.hpp"
#include "quadtile/geometry.hpp"
#include "quadtile/symmetry.hpp"
#include "quadtile/tilingmap.hpp"

using namespace quadtile;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

TilingMap load_map(const std::string& path) {
    try {
        return TilingMap::from_json(read_file(path));
    } catch (const TilingMapError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

/// "pi/3", "2pi/5", "0.25pi", "1.0471975511965976".
double parse_angle(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ') s += ch;
    auto pos = s.find("pi");
    try {
        if (pos == std::string::npos) return std::stod(s);
        std::string head = s.substr(0, pos), tail = s.substr(pos + 2);
        if (!head.empty() && head.back() == '*') head.pop_back();
        double k = head.empty() ? 1.0 : head == "-" ? -1.0 : std::stod(head);
        if (!tail.empty()) {
            if (tail[0] != '/') throw UsageError("bad angle '" + text + "'");
            k /= std::stod(tail.substr(1));
        }
        return k * std::numbers::pi;
    } catch (const std::logic_error&) {
        throw UsageError("bad angle '" + text + "'");
    }
}

double tolerance() {
    const char* env = std::getenv("QUADTILE_TOL");
    if (!env || !*env) return 1e-6;
    try {
        double t = std::stod(env);
        if (t > 0) return t;
    } catch (const std::logic_error&) {
    }
    throw UsageError(std::string("QUADTILE_TOL must be a positive number, got '") + env + "'");
}

struct ConstructArgs {
    std::string family;
    int f = 0;
    std::string base = "cube";
    std::string out;
};

int cmd_construct(const ConstructArgs& a) {
    TilingMap m;
    if (a.family == "earth-map") m = earth_map(a.f);
    else if (a.family == "pq-emt") m = pq_earth_map(a.f);
    else if (a.family == "subdivision") m = quad_subdivide(parse_base(a.base));
    else if (a.family == "alphadelta") m = family_alphadelta(a.f);
    else if (a.family == "beta2delta") m = family_beta2delta(a.f);
    else throw UsageError("unknown family '" + a.family + "'");
    std::string json = m.to_json();
    std::string summary = "f=" + std::to_string(m.f()) + " " + avc_summary(extract_avc(m));
    if (a.out.empty()) {
        std::cout << json << "\n";
        std::cerr << summary << "\n";
    } else {
        write_file(a.out, json + "\n");
        std::cout << summary << "\n";
    }
    return kOk;
}

int cmd_verify(const std::string& path, const std::string& avc_text) {
    TilingMap m = load_map(path);
    std::vector<VertexSignature> expected;
    try {
        if (avc_text.empty())
            for (const auto& [s, n] : extract_avc(m)) expected.push_back(s);
        else
            expected = parse_signature_list(avc_text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad AVC: ") + e.what());
    }
    CheckReport rep = verify(m, expected, m.f());
    for (const auto& it : rep.items)
        std::cout << (it.passed ? "pass " : "FAIL ") << it.name << (it.detail.empty() ? "" : ": " + it.detail) << "\n";
    std::cout << (rep.ok() ? "ok" : "failed") << "\n";
    return rep.ok() ? kOk : kFailed;
}

struct RealizeArgs {
    std::string map;
    bool family = false;
    std::string delta;
    std::string angles;
    std::string obj;
    std::string svg;
    int samples = 0;
};

int cmd_realize(const RealizeArgs& a) {
    TilingMap m = load_map(a.map);
    int sources = a.family + !a.delta.empty() + !a.angles.empty();
    if (sources != 1) throw UsageError("give exactly one of --family, --delta, --angles");
    SphericalQuad q;
    try {
        if (a.family) {
            q = closed_form_family(m.f());
        } else if (!a.delta.empty()) {
            q = closed_form_cube_subdivision(parse_angle(a.delta));
        } else {
            std::vector<double> v;
            std::stringstream ss(a.angles);
            for (std::string part; std::getline(ss, part, ',');) v.push_back(parse_angle(part));
            if (v.size() != 4) throw UsageError("--angles needs four comma separated values");
            auto sols = solve_edges(v[0], v[1], v[2], v[3]);
            if (sols.empty()) {
                std::cout << "no edge lengths satisfy the tile equations for these angles\n";
                return kFailed;
            }
            q = sols.front();
        }
    } catch (const DegeneracyError& e) {
        std::cout << "degenerate tile (" << e.pair() << "): " << e.what() << "\n";
        return kFailed;
    }
    const double pi = std::numbers::pi;
    std::cout << "a " << num(q.a) << "\nb " << num(q.b) << "\nc " << num(q.c) << "\n";
    std::cout << "alpha/pi " << num(q.alpha / pi) << "\nbeta/pi " << num(q.beta / pi) << "\ngamma/pi "
              << num(q.gamma / pi) << "\ndelta/pi " << num(q.delta / pi) << "\n";
    std::cout << "holonomy_residual " << num(holonomy_residual(q)) << "\n";
    try {
        Realization r = realize(m, q, tolerance());
        std::cout << "closure_gap " << num(r.max_gap) << "\n";
        std::cout << "area_sum " << num(r.area_sum) << "\n";
        std::cout << "area_error " << num(r.area_sum - 4 * pi) << "\n";
        if (!a.obj.empty()) write_file(a.obj, to_obj(m, r, a.samples));
        if (!a.svg.empty()) write_file(a.svg, to_svg(m, r));
        if (std::abs(r.area_sum - 4 * pi) > tolerance()) {
            std::cout << "area sum differs from 4π\n";
            return kFailed;
        }
    } catch (const RealizationError& e) {
        std::cout << "realization failed: " << e.what() << " (worst vertex " << e.worst_vertex() << ", gap "
                  << num(e.gap()) << ")\n";
        return kFailed;
    }
    return kOk;
}

int cmd_avc_search(int f, int max_degree, std::uint64_t max_nodes) {
    SearchLimits lim;
    lim.max_nodes = max_nodes;
    if (max_degree <= 0) max_degree = f / 2;
    if (max_degree < 3) throw UsageError("--max-degree must be at least 3");
    AVCSearchResult r = search_avcs(f, max_degree, lim);
    std::cout << "f=" << f << " max_degree=" << max_degree << " candidates=" << r.candidates.size() << "\n";
    for (const auto& c : r.candidates) std::cout << c.str() << "\n";
    if (r.truncated) {
        std::cout << r.truncation_report << "\n";
        return kFailed;
    }
    return kOk;
}

int cmd_symmetry(const std::string& path) {
    TilingMap m = load_map(path);
    SymmetryClass sc = classify(m);
    std::cout << sc.name << ", order " << sc.order << "\n";
    if (!sc.family_label.empty()) std::cout << "family label " << sc.family_label << "\n";
    std::cout << "rotations " << sc.rotation_order << "\nprincipal axis order " << sc.principal_axis_order
              << "\nmirrors " << sc.mirrors << "\ninversion " << (sc.inversion ? "yes" : "no")
              << "\nhorizontal mirror " << (sc.horizontal_mirror ? "yes" : "no") << "\n";
    for (const auto& g : sc.generators) {
        std::cout << "generator " << (g.preserving ? "+" : "-") << " [";
        for (std::size_t t = 0; t < g.tiles.size(); ++t) std::cout << (t ? " " : "") << g.tiles[t];
        std::cout << "]\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tilings of the sphere by congruent a²bc quadrilaterals"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build a tiling and write its gluing JSON");
    construct->add_option("family", ca.family, "earth-map | pq-emt | subdivision | alphadelta | beta2delta")
        ->required();
    construct->add_option("--f", ca.f, "Number of tiles");
    construct->add_option("--base", ca.base, "cube | octahedron | triangular_prism");
    construct->add_option("-o,--output", ca.out, "Output path (stdout when omitted)");

    std::string verify_path, verify_avc;
    auto* verify_cmd = app.add_subcommand("verify", "Check a map file against an AVC");
    verify_cmd->add_option("map", verify_path)->required();
    verify_cmd->add_option("--avc", verify_avc, "Expected AVC, e.g. \"αβ²,α²δ²,γ⁴,δ⁶\"");

    RealizeArgs ra;
    auto* realize_cmd = app.add_subcommand("realize", "Embed a map on the unit sphere");
    realize_cmd->add_option("map", ra.map)->required();
    realize_cmd->add_flag("--family", ra.family, "Use the closed-form (f/4,4)-earth map tile");
    realize_cmd->add_option("--delta", ra.delta, "Cube subdivision tile at this δ, e.g. pi/3");
    realize_cmd->add_option("--angles", ra.angles, "alpha,beta,gamma,delta, e.g. 2pi/3,2pi/3,pi/2,pi/3");
    realize_cmd->add_option("--obj", ra.obj, "Write an OBJ mesh");
    realize_cmd->add_option("--svg", ra.svg, "Write a stereographic SVG");
    realize_cmd->add_option("--samples", ra.samples, "Geodesic samples per edge in the OBJ");

    int search_f = 0, search_deg = 0;
    std::uint64_t search_nodes = SearchLimits{}.max_nodes;
    auto* search_cmd = app.add_subcommand("avc-search", "List angle- and count-feasible vertex sets");
    search_cmd->add_option("--f", search_f)->required();
    search_cmd->add_option("--max-degree", search_deg, "Largest vertex degree (default f/2)");
    search_cmd->add_option("--max-nodes", search_nodes, "Enumeration node budget");

    std::string sym_path;
    auto* sym_cmd = app.add_subcommand("symmetry", "Classify the automorphism group of a map");
    sym_cmd->add_option("map", sym_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*construct) return cmd_construct(ca);
        if (*verify_cmd) return cmd_verify(verify_path, verify_avc);
        if (*realize_cmd) return cmd_realize(ra);
        if (*search_cmd) return cmd_avc_search(search_f, search_deg, search_nodes);
        if (*sym_cmd) return cmd_symmetry(sym_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
