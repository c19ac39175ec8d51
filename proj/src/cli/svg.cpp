#include "steiner/cli/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "steiner/errors.hpp"

namespace steiner::cli {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const EmbeddedForest& f, const SvgOptions& opts) {
    if (f.dim() != 2) throw UnsupportedError("SVG rendering is planar only");
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
    double hi_x = -lo_x, hi_y = -lo_x;
    auto grow = [&](double x, double y) {
        lo_x = std::min(lo_x, x);
        hi_x = std::max(hi_x, x);
        lo_y = std::min(lo_y, y);
        hi_y = std::max(hi_y, y);
    };
    for (const Point& p : f.points()) grow(p[0], p[1]);
    if (opts.circle) {
        const auto& [c, r] = *opts.circle;
        grow(c[0] - r, c[1] - r);
        grow(c[0] + r, c[1] + r);
    }
    if (!(hi_x >= lo_x)) lo_x = lo_y = -1.0, hi_x = hi_y = 1.0;
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    const double margin = 0.05 * opts.size;
    const double scale = (opts.size - 2.0 * margin) / span;
    auto sx = [&](double x) { return margin + (x - lo_x) * scale; };
    auto sy = [&](double y) { return opts.size - margin - (y - lo_y) * scale; };  // y axis up

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(opts.size) + "\" height=\"" + num(opts.size) +
         "\" viewBox=\"0 0 " + num(opts.size) + " " + num(opts.size) + "\">\n";
    if (!opts.title.empty()) s += "  <title>" + escape(opts.title) + "</title>\n";
    s += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (opts.circle) {
        const auto& [c, r] = *opts.circle;
        s += "  <circle cx=\"" + num(sx(c[0])) + "\" cy=\"" + num(sy(c[1])) + "\" r=\"" + num(r * scale) +
             "\" fill=\"none\" stroke=\"gray\" stroke-width=\"1\"/>\n";
    }
    s += "  <g stroke=\"black\" stroke-width=\"1.5\">\n";
    for (const Edge& e : f.edges()) {
        const Point& a = f.point(e.u);
        const Point& b = f.point(e.v);
        s += "    <line x1=\"" + num(sx(a[0])) + "\" y1=\"" + num(sy(a[1])) + "\" x2=\"" + num(sx(b[0])) + "\" y2=\"" +
             num(sy(b[1])) + "\"/>\n";
    }
    s += "  </g>\n";
    for (std::size_t i = 0; i < f.vertex_count(); ++i) {
        const Point& p = f.point(i);
        const char* colour = f.kind(i) == VertexKind::Terminal ? "red" : f.kind(i) == VertexKind::Steiner ? "blue" : "green";
        const char* cls = f.kind(i) == VertexKind::Terminal ? "terminal" : f.kind(i) == VertexKind::Steiner ? "branch" : "boundary";
        s += "  <circle class=\"" + std::string(cls) + "\" cx=\"" + num(sx(p[0])) + "\" cy=\"" + num(sy(p[1])) +
             "\" r=\"4\" fill=\"" + colour + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace steiner::cli
