#include "steiner/cli/report.hpp"

#include <cstdint>
#include <cstdio>

namespace steiner::cli {

Json to_json(const Point& p) {
    Json a = Json::array();
    for (double c : p.coords()) a.push_back(c);
    return a;
}

Json to_json(const EmbeddedForest& f) {
    Json verts = Json::array();
    for (std::size_t i = 0; i < f.vertex_count(); ++i) {
        const char* kind = f.kind(i) == VertexKind::Terminal ? "terminal" : f.kind(i) == VertexKind::Steiner ? "steiner" : "boundary";
        verts.push_back(Json{{"kind", kind}, {"point", to_json(f.point(i))}});
    }
    Json edges = Json::array();
    for (const Edge& e : f.edges()) edges.push_back(Json::array({e.u, e.v}));
    return Json{{"vertices", verts}, {"edges", edges}};
}

Json to_json(const Verdict& v) {
    return Json{{"name", v.name},
                {"measured", v.measured},
                {"bound", v.bound},
                {"verdict", v.informational ? "INFO" : v.pass ? "PASS" : "FAIL"}};
}

Json verdict(const std::string& name, double measured, double bound, bool pass) {
    return to_json(Verdict{name, measured, bound, pass});
}

std::string digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace steiner::cli
