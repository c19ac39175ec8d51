#include "steiner/cli/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "steiner/errors.hpp"

namespace steiner::cli {

namespace {

struct Token {
    std::string text;
    int line;
};

std::vector<Token> tokenize(std::istream& in) {
    std::vector<Token> tokens;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string w;
        while (words >> w) tokens.push_back({w, number});
    }
    return tokens;
}

double to_double(const Token& t) {
    double v = 0.0;
    const char* end = t.text.data() + t.text.size();
    auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ParseError("line " + std::to_string(t.line) + ": expected a finite number, got '" + t.text + "'");
    return v;
}

long to_count(const Token& t, const char* what) {
    long v = 0;
    const char* end = t.text.data() + t.text.size();
    auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
    if (ec != std::errc() || ptr != end || v < 0)
        throw ParseError("line " + std::to_string(t.line) + ": expected " + what + ", got '" + t.text + "'");
    return v;
}

}  // namespace

Instance parse_pts(std::istream& in) {
    const std::vector<Token> tokens = tokenize(in);
    if (tokens.size() < 2) throw ParseError("missing header line 'd n'");
    const long d = to_count(tokens[0], "the dimension");
    const long n = to_count(tokens[1], "the point count");
    if (d < 2) throw ParseError("line " + std::to_string(tokens[0].line) + ": dimension must be at least 2");
    if (n < 2) throw ParseError("line " + std::to_string(tokens[1].line) + ": at least two points are required");
    const std::size_t expected = 2 + static_cast<std::size_t>(d) * static_cast<std::size_t>(n);
    if (tokens.size() < expected) throw ParseError("expected " + std::to_string(n) + " points of dimension " + std::to_string(d) + ", input ends early");
    if (tokens.size() > expected) throw ParseError("line " + std::to_string(tokens[expected].line) + ": unexpected trailing data");
    std::vector<Point> pts;
    for (long i = 0; i < n; ++i) {
        std::vector<double> c;
        for (long k = 0; k < d; ++k) c.push_back(to_double(tokens[2 + static_cast<std::size_t>(i * d + k)]));
        pts.emplace_back(std::move(c));
    }
    try {
        return Instance(static_cast<std::size_t>(d), std::move(pts));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
}

Instance read_pts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_pts(in);
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string format_pts(const Instance& inst, const std::string& comment) {
    return format_points(inst.dim(), inst.terminals(), comment);
}

std::string format_points(std::size_t d, const std::vector<Point>& points, const std::string& comment) {
    std::string out;
    if (!comment.empty()) out += "# " + comment + "\n";
    out += std::to_string(d) + " " + std::to_string(points.size()) + "\n";
    for (const Point& p : points) {
        for (std::size_t k = 0; k < p.dim(); ++k) {
            if (k) out += ' ';
            out += format_double(p[k]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace steiner::cli
