#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "quadtile/geometry.hpp"
#include "quadtile/tilingmap.hpp"

namespace quadtile {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fixed(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return std::string(buf) == "-0.000000" ? "0.000000" : buf;
}

// Point at parameter s in [0, 1] along the minor arc from x to y.
Vec3 slerp(const Vec3& x, const Vec3& y, double s) {
    double d = std::acos(std::clamp(x[0] * y[0] + x[1] * y[1] + x[2] * y[2], -1.0, 1.0));
    if (d < 1e-12) return x;
    double wx = std::sin((1 - s) * d) / std::sin(d), wy = std::sin(s * d) / std::sin(d);
    return {wx * x[0] + wy * y[0], wx * x[1] + wy * y[1], wx * x[2] + wy * y[2]};
}

}  // namespace

std::string to_obj(const TilingMap& map, const Realization& r, int samples) {
    std::ostringstream out;
    out << "# f " << map.f() << "\n";
    for (const auto& v : r.vertices) out << "v " << num(v[0]) << ' ' << num(v[1]) << ' ' << num(v[2]) << "\n";
    for (int t = 0; t < map.f(); ++t) {
        out << "f";
        // Mirrored tiles are listed in reverse so every face is counterclockwise from outside.
        for (int i = 0; i < 4; ++i) {
            int k = map.orientation(t) ? (4 - i) % 4 : i;
            out << ' ' << map.vertex_of(t, k) + 1;
        }
        out << "\n";
    }
    if (samples > 1) {
        int next = static_cast<int>(r.vertices.size()) + 1;
        for (const auto& e : map.edges()) {
            out << "# edge " << edge_label_name(e.label) << "\n";
            for (int i = 0; i < samples; ++i) {
                Vec3 p = slerp(r.vertices[e.v1], r.vertices[e.v2], static_cast<double>(i) / (samples - 1));
                out << "v " << num(p[0]) << ' ' << num(p[1]) << ' ' << num(p[2]) << "\n";
            }
            out << "l";
            for (int i = 0; i < samples; ++i) out << ' ' << next + i;
            out << "\n";
            next += samples;
        }
    }
    return out.str();
}

std::string to_svg(const TilingMap& map, const Realization& r) {
    constexpr double R = 4.0;  // clip radius in the projection plane
    constexpr int kSamples = 16;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fixed(-R) << ' ' << fixed(-R) << ' '
        << fixed(2 * R) << ' ' << fixed(2 * R) << "\">\n";
    out << "<style>\n"
           "  path { fill: none; stroke-linecap: round; }\n"
           "  .a { stroke: #000; stroke-width: 0.01; }\n"
           "  .b { stroke: #000; stroke-width: 0.04; }\n"
           "  .b-inner { stroke: #fff; stroke-width: 0.015; }\n"
           "  .c { stroke: #000; stroke-width: 0.05; }\n"
           "</style>\n";
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& e : map.edges()) {
            if (pass == 1 && e.label != EdgeLabel::b) continue;
            std::string d;
            bool pen = false;
            for (int i = 0; i < kSamples; ++i) {
                Vec3 p = slerp(r.vertices[e.v1], r.vertices[e.v2], static_cast<double>(i) / (kSamples - 1));
                double den = 1 + p[2];
                double x = den > 1e-9 ? p[0] / den : R * 10, y = den > 1e-9 ? -p[1] / den : R * 10;
                if (std::hypot(x, y) > R) {
                    pen = false;
                    continue;
                }
                d += (pen ? " L" : " M") + fixed(x) + ' ' + fixed(y);
                pen = true;
            }
            if (d.empty()) continue;
            const char* cls = pass == 1 ? "b-inner" : edge_label_name(e.label);
            out << "<path class=\"" << cls << "\" d=\"" << d.substr(1) << "\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace quadtile
