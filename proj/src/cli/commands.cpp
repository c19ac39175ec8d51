#include "steiner/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "steiner/analysis.hpp"
#include "steiner/cli/instance_io.hpp"
#include "steiner/cli/report.hpp"
#include "steiner/cli/svg.hpp"
#include "steiner/errors.hpp"
#include "steiner/generators.hpp"
#include "steiner/pathology.hpp"
#include "steiner/solver.hpp"
#include "steiner/spanning.hpp"
#include "steiner/sphere_connect.hpp"

namespace steiner::cli {

namespace {

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw PreconditionError("cannot write '" + path + "'");
    f << text;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty())
        out << text;
    else
        write_file(path, text);
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json bool_verdict(const std::string& name, bool ok) { return verdict(name, ok ? 1.0 : 0.0, 1.0, ok); }

bool all_pass(const Json& verdicts) {
    for (const Json& v : verdicts)
        if (v["verdict"] == "FAIL") return false;
    return true;
}

Json input_json(const Instance& inst) {
    return Json{{"digest", digest(format_pts(inst))}, {"dim", inst.dim()}, {"terminals", inst.size()}};
}

Point parse_center(const std::string& text, std::size_t d) {
    if (text.empty()) return Point::zero(d);
    std::vector<double> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            c.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError("bad center coordinate '" + item + "'");
        }
    }
    if (c.size() != d) throw PreconditionError("center has " + std::to_string(c.size()) + " coordinates, instance has dimension " + std::to_string(d));
    return Point(std::move(c));
}

Json validation_verdicts(const SolutionValidation& val) {
    Json v = Json::array();
    v.push_back(bool_verdict("spans terminals", val.spans_terminals));
    v.push_back(bool_verdict("connected", val.connected));
    v.push_back(bool_verdict("acyclic", val.acyclic));
    v.push_back(bool_verdict("inside convex hull", val.in_hull));
    v.push_back(bool_verdict("length consistent", val.length_consistent));
    double min_angle = 2.0 * kPi;
    for (const VertexCheck& c : val.minimality.vertices)
        if (c.degree >= 2) min_angle = std::min(min_angle, c.min_angle);
    v.push_back(verdict("minimum angle", min_angle, 2.0 * kPi / 3.0 - kDefaultTolAngle, val.minimality.pass));
    if (val.maxwell_applicable) v.push_back(verdict("Maxwell residual", val.maxwell_residual, 1e-9, val.maxwell_pass));
    return v;
}

struct Common {
    unsigned threads = default_threads();
    bool timing = false;
};

// solve ---------------------------------------------------------------------------------------

struct SolveArgs {
    std::string input;
    std::string out;
    std::string svg;
    int n_max = kDefaultMaxTerminals;
    bool audit = false;
    bool prune = false;
};

int cmd_solve(const SolveArgs& a, const Common& common, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = read_pts(a.input);
    if (!a.svg.empty() && inst.dim() != 2) throw UnsupportedError("--svg needs a planar instance");
    SolveOptions so;
    so.n_max = a.n_max;
    so.threads = common.threads;
    so.keep_audit = a.audit;
    so.prune = a.prune;
    const SteinerSolution sol = solve(inst, so);
    const SolutionValidation val = validate_solution(sol, inst);
    const double mst = prim_mst(inst.terminals()).length;

    Json branch = Json::array();
    for (const Point& p : sol.branch_points) branch.push_back(to_json(p));
    Json solution{{"length", sol.length},
                  {"topology_code", sol.topology_code},
                  {"member_code", sol.member_code},
                  {"steiner_points", sol.tree.count(VertexKind::Steiner)},
                  {"branch_points", branch},
                  {"runner_up_length", number_or_null(sol.runner_up_length)},
                  {"runner_up_code", sol.runner_up_code},
                  {"gap", number_or_null(sol.gap())},
                  {"gap_exact", sol.gap_exact},
                  {"topologies_evaluated", sol.evaluated},
                  {"topologies_pruned", sol.pruned},
                  {"melzak_hits", sol.melzak_hits},
                  {"tree", to_json(sol.tree)}};
    Json verdicts = validation_verdicts(val);
    const double ratio = mst / sol.length;
    verdicts.push_back(verdict("Steiner ratio", ratio, std::sqrt(3.0), ratio >= 1.0 - kTolLen && ratio <= std::sqrt(3.0) + kTolLen));

    Json report{{"command", "solve"}, {"input", input_json(inst)}, {"solution", solution}, {"mst_length", mst}};
    if (a.audit) {
        Json audit = Json::array();
        for (const TopologyAudit& t : sol.audit)
            audit.push_back(Json{{"code", t.code}, {"length", t.length}, {"member_code", t.member_code}, {"melzak", t.melzak}, {"converged", t.converged}});
        report["audit"] = audit;
    }
    report["verdicts"] = verdicts;
    const bool pass = all_pass(verdicts);
    report["pass"] = pass;
    if (common.timing)
        report["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!a.svg.empty()) write_file(a.svg, render_svg(sol.tree, SvgOptions{600.0, std::nullopt, "length " + format_double(sol.length)}));
    emit(a.out, dump(report), out);
    return pass ? kExitPass : kExitFail;
}

// analyze -------------------------------------------------------------------------------------

struct AnalyzeArgs {
    std::string input;
    std::string out;
    std::string center;
    std::optional<double> scale;
    double rho = 0.5;
    int samples = 64;
    int n_max = kDefaultMaxTerminals;
};

int cmd_analyze(const AnalyzeArgs& a, const Common& common, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = read_pts(a.input);
    const Point x = parse_center(a.center, inst.dim());
    double s = std::numeric_limits<double>::infinity();
    for (const Point& p : inst.terminals()) s = std::min(s, distance(p, x));
    if (a.scale) s = *a.scale;
    if (!(s > 0.0)) throw PreconditionError("ball radius must be positive");
    if (!(a.rho > 0.0 && a.rho < 1.0)) throw PreconditionError("rho must lie in (0, 1)");

    SolveOptions so;
    so.n_max = a.n_max;
    so.threads = common.threads;
    const SteinerSolution sol = solve(inst, so);
    const RegularityProfile prof = ball_profile(sol.tree, inst, x, s, a.samples);
    const int d = static_cast<int>(inst.dim());

    Json verdicts = Json::array();
    verdicts.push_back(to_json(check_main_bound(prof, d, a.rho)));
    verdicts.push_back(to_json(check_segment_bound(sol.tree, x, s, a.rho, d)));
    verdicts.push_back(to_json(coarea_audit(sol.tree, x)));
    verdicts.push_back(to_json(coarea_window_audit(sol.tree, x, 0.0, s)));
    Json branched = nullptr;
    if (d == 2) {
        const BranchedComponentsReport br = planar_branched_components_audit(sol.tree, inst, x, s);
        verdicts.push_back(to_json(br.count));
        verdicts.push_back(to_json(br.length));
        verdicts.push_back(to_json(br.floor));
        branched = Json{{"components", br.branched_components}, {"length", br.branched_length}, {"component_lengths", br.component_lengths},
                        {"boundary_points", br.boundary_points}};
    }

    Json profile{{"center", to_json(x)}, {"scale", s}, {"rho", a.rho}, {"radii", prof.radii}, {"lengths", prof.lengths}, {"crossings", prof.crossings}};
    Json report{{"command", "analyze"},
                {"input", input_json(inst)},
                {"solution", Json{{"length", sol.length}, {"topology_code", sol.topology_code}, {"member_code", sol.member_code}}},
                {"profile", profile},
                {"segments_in_ball", count_segments_in_ball(sol.tree, x, a.rho * s)}};
    if (d == 2) report["branched_components"] = branched;
    report["verdicts"] = verdicts;
    const bool pass = all_pass(verdicts);
    report["pass"] = pass;
    if (common.timing)
        report["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(a.out, dump(report), out);
    return pass ? kExitPass : kExitFail;
}

// pathology -----------------------------------------------------------------------------------

struct PathologyArgs {
    int stages = 5;
    double eps1 = 1e-3;
    double decay = 16.0;
    bool enforce_gap = false;
    std::uint64_t seed = 0;
    int n_max = kDefaultMaxTerminals;
    std::string svg_dir;
    std::string out;
};

Json stage_json(const PathologyStage& st, const StageCertification& c) {
    Json verdicts = Json::array();
    verdicts.push_back(bool_verdict("counts", c.counts));
    verdicts.push_back(bool_verdict("full", c.full));
    verdicts.push_back(verdict("direction deviation", st.max_direction_deviation, 1e-7, c.rigid));
    verdicts.push_back(bool_verdict("local minimality", c.local_minimality));
    if (st.j > 0) {
        const double bound = 4.0 * std::sqrt(2.0 * st.epsilon);
        verdicts.push_back(verdict("length increment", st.length_increment, bound, st.length_increment > 0.0 && st.length_increment < bound));
        verdicts.push_back(verdict("corner gap", st.max_corner_gap, std::sqrt(2.0 * st.epsilon), st.max_corner_gap < std::sqrt(2.0 * st.epsilon)));
        verdicts.push_back(verdict("parallel deviation", st.parallel_deviation, 1e-7, st.parallel_deviation <= 1e-7));
    }
    if (c.exact) {
        verdicts.push_back(verdict("solver length difference", c.length_difference, 1e-9, c.optimal));
        verdicts.push_back(verdict("gap to other families", c.delta, 0.0, c.delta > 0.0));
    }
    Json j{{"stage", st.j},
           {"epsilon", st.epsilon},
           {"terminals", st.terminals.size()},
           {"branch_points", st.branch_points.size()},
           {"length", st.length},
           {"topology_code", canonical_code(st.topology)},
           {"certification", c.exact ? "exact" : "heuristic"},
           {"delta", st.delta},
           {"gap_condition", st.gap_condition}};
    if (c.exact) j["solver_length"] = c.solver_length;
    if (st.j > 0) {
        j["shift_orientation"] = st.shift_orientation;
        j["maxwell_witness"] = st.maxwell_witness;
    }
    j["failures"] = c.failures;
    j["verdicts"] = verdicts;
    return j;
}

int cmd_pathology(const PathologyArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    if (a.stages < 0) throw PreconditionError("stage count must be nonnegative");
    if (a.stages > kMaxPathologyStages) throw UnsupportedError("at most " + std::to_string(kMaxPathologyStages) + " stages are supported");
    if (!(a.eps1 > 0.0 && a.eps1 <= 0.1)) throw PreconditionError("eps1 must lie in (0, 0.1]");
    if (!(a.decay > 1.0)) throw PreconditionError("decay must exceed 1");
    if (!a.svg_dir.empty()) std::filesystem::create_directories(a.svg_dir);

    const PathologySchedule schedule{a.eps1, a.decay, a.enforce_gap};
    CertifyOptions copts;
    copts.n_max = a.n_max;
    copts.threads = common.threads;

    Json report{{"command", "pathology"},
                {"parameters", Json{{"stages", a.stages}, {"eps1", a.eps1}, {"decay", a.decay}, {"enforce_gap", a.enforce_gap}, {"n_max", a.n_max}}},
                {"seed", a.seed}};
    Json stage_reports = Json::array();
    std::vector<PathologyStage> stages;
    bool pass = true;
    std::optional<StageAbort> aborted;
    try {
        stages.push_back(build_stage0());
        for (int j = 0; j <= a.stages; ++j) {
            if (j > 0) stages.push_back(advance(stages.back(), next_epsilon(stages.back(), schedule)));
            PathologyStage& st = stages.back();
            const StageCertification c = certify_stage(st, copts);
            // Stages beyond exact reach inherit the last measured gap-to-shift ratio.
            if (c.exact && st.j > 0 && st.epsilon > 0.0) copts.delta_ratio = c.delta / st.epsilon;
            Json sj = stage_json(st, c);
            pass = pass && all_pass(sj["verdicts"]);
            stage_reports.push_back(std::move(sj));
            if (!a.svg_dir.empty()) {
                SvgOptions so{600.0, std::make_pair(Point{0.0, 0.0}, 1.0), "stage " + std::to_string(st.j)};
                write_file((std::filesystem::path(a.svg_dir) / ("stage-" + std::to_string(st.j) + ".svg")).string(), render_svg(st.tree, so));
            }
        }
    } catch (const StageAbort& e) {
        aborted = e;
        pass = false;
    }
    report["stages"] = stage_reports;
    if (aborted) {
        report["aborted"] = Json{{"stage", aborted->stage()}, {"message", aborted->what()}};
        err << "steiner: " << aborted->what() << "\n";
    } else if (stages.size() >= 3) {
        const AccumulationReport acc = accumulation_report(stages);
        Json clusters = Json::array();
        for (const AccumulationCluster& cl : acc.accumulating)
            clusters.push_back(Json{{"limit", to_json(cl.limit)}, {"members", cl.members}, {"stages", cl.stages},
                                    {"sextic_residual", cl.sextic_residual}, {"radii", cl.radii}, {"shrinking", cl.shrinking}});
        Json verdicts = Json::array();
        verdicts.push_back(verdict("accumulating clusters", static_cast<double>(acc.accumulating.size()), 4.0, acc.accumulating.size() == 4));
        double worst = 0.0;
        for (const AccumulationCluster& cl : acc.accumulating) worst = std::max(worst, cl.sextic_residual);
        verdicts.push_back(verdict("sextic residual", worst, 1e-6, worst <= 1e-6));
        report["accumulation"] = Json{{"linkage", acc.linkage}, {"clusters", acc.clusters}, {"rotation", acc.rotation},
                                      {"accumulating", clusters}, {"verdicts", verdicts}};
        pass = pass && acc.pass && all_pass(verdicts);
    }
    report["pass"] = pass;
    if (common.timing)
        report["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(a.out, dump(report), out);
    return pass ? kExitPass : kExitFail;
}

// generate ------------------------------------------------------------------------------------

struct GenerateArgs {
    int dim = 2;
    int n = 5;
    double radius = 1.0;
    std::uint64_t seed = 0;
    std::string out;
    std::string report;
};

int cmd_generate(const std::string& kind, const GenerateArgs& a, std::ostream& out) {
    std::optional<Instance> inst;
    std::string comment;
    auto need_dim = [&](int lo) {
        if (a.dim < lo) throw PreconditionError("dimension must be at least " + std::to_string(lo));
    };
    if (kind == "hypercube") {
        need_dim(1);
        if (a.dim > 16) throw UnsupportedError("hypercube dimension above 16");
        inst = hypercube_instance(a.dim);
        comment = "hypercube dim=" + std::to_string(a.dim);
        if (!a.report.empty()) {
            const HypercubeReport hr = hypercube_report(a.dim);
            Json verdicts = Json::array();
            // The Steiner lower bound can never exceed the spanning tree it is derived from.
            verdicts.push_back(to_json(Verdict{"lower bound below MST", hr.lower_bound, hr.mst_length,
                                               hr.lower_bound <= hr.mst_length + kTolLen, hr.informational}));
            Json r{{"command", "generate"},
                   {"kind", "hypercube"},
                   {"input", input_json(*inst)},
                   {"mst_length", hr.mst_length},
                   {"lower_bound", hr.lower_bound},
                   {"density", hr.density},
                   {"informational", hr.informational},
                   {"verdicts", verdicts}};
            write_file(a.report, dump(r));
        }
    } else if (kind == "cocircular") {
        inst = cocircular_instance(a.n, a.radius, a.seed);
        comment = "cocircular n=" + std::to_string(a.n) + " radius=" + format_double(a.radius) + " seed=" + std::to_string(a.seed);
    } else if (kind == "random-ball" || kind == "sphere") {
        need_dim(kind == "sphere" ? 3 : 2);
        if (a.n < 2) throw PreconditionError("need at least two points");
        const auto d = static_cast<std::size_t>(a.dim);
        inst = kind == "sphere" ? Instance(d, random_sphere_points(d, a.n, a.seed)) : random_ball_instance(d, a.n, a.seed);
        comment = kind + " dim=" + std::to_string(a.dim) + " n=" + std::to_string(a.n) + " seed=" + std::to_string(a.seed);
    } else {
        throw UnsupportedError("unknown generator '" + kind + "'");
    }
    emit(a.out, format_pts(*inst, comment), out);
    return kExitPass;
}

// sphere-connect ------------------------------------------------------------------------------

struct SphereArgs {
    int dim = 3;
    int t = 100;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_sphere_connect(const SphereArgs& a, const Common& common, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    if (a.dim < 3) throw UnsupportedError("sphere-connect needs --dim >= 3");
    if (a.dim > 32) throw UnsupportedError("sphere-connect dimension above 32");
    if (a.t < 1) throw PreconditionError("--t must be positive");
    const auto d = static_cast<std::size_t>(a.dim);
    const std::vector<Point> pts = random_sphere_points(d, a.t, a.seed);
    const SphereConnection sc = connect_on_sphere(pts, d, a.seed);

    Json verdicts = Json::array();
    verdicts.push_back(bool_verdict("connected", sc.connected));
    verdicts.push_back(verdict("length", sc.length, sc.length_bound, sc.length_pass));
    if (a.t > 1) {
        verdicts.push_back(verdict("cap count", static_cast<double>(sc.packing.centers.size()), sc.k_bound, sc.k_pass));
        verdicts.push_back(verdict("Prim step (chord)", sc.prim.max_edge, sc.prim.chord_bound, sc.prim.chord_pass));
        verdicts.push_back(to_json(Verdict{"Prim step (sine)", sc.prim.max_edge, sc.prim.literal_bound, sc.prim.literal_pass, true}));
        verdicts.push_back(verdict("attachment", sc.max_attachment, sc.attachment_bound, sc.attachment_pass));
    }
    Json report{{"command", "sphere-connect"},
                {"parameters", Json{{"dim", a.dim}, {"t", a.t}}},
                {"seed", a.seed},
                {"input_digest", digest(format_points(d, pts))},
                {"c_min", sc.c_min},
                {"epsilon", sc.epsilon},
                {"epsilon_clamped", sc.epsilon_clamped},
                {"caps", sc.packing.centers.size()},
                {"candidates", sc.packing.candidates},
                {"length", sc.length},
                {"length_bound", sc.length_bound},
                {"edges", sc.forest.edges().size()},
                {"verdicts", verdicts}};
    const bool pass = all_pass(verdicts);
    report["pass"] = pass;
    if (common.timing)
        report["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(a.out, dump(report), out);
    return pass ? kExitPass : kExitFail;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Euclidean Steiner trees and regularity audits", "steiner"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_flag("--timing", common.timing, "include wall time in reports");
    std::function<int()> action;

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "exact Steiner minimal tree of a .pts instance");
    solve_cmd->add_option("input", solve_args.input, ".pts file")->required();
    solve_cmd->add_option("--out", solve_args.out, "JSON report path (default stdout)");
    solve_cmd->add_option("--svg", solve_args.svg, "SVG rendering path (planar instances)");
    solve_cmd->add_option("--n-max", solve_args.n_max, "largest terminal count accepted")->check(CLI::Range(2, 14));
    solve_cmd->add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    solve_cmd->add_flag("--audit", solve_args.audit, "list every full topology with its minimum");
    solve_cmd->add_flag("--prune", solve_args.prune, "skip topologies by lower bound (gap becomes an estimate)");
    solve_cmd->callback([&] { action = [&] { return cmd_solve(solve_args, common, out); }; });

    AnalyzeArgs an;
    double scale = 0.0;
    auto* analyze_cmd = app.add_subcommand("analyze", "regularity audits of the optimal tree in a terminal-free ball");
    analyze_cmd->add_option("input", an.input, ".pts file")->required();
    analyze_cmd->add_option("--center", an.center, "ball center, comma separated (default origin)");
    auto* scale_opt = analyze_cmd->add_option("--scale", scale, "ball radius s (default distance to nearest terminal)");
    analyze_cmd->add_option("--rho", an.rho, "inner ratio in (0, 1)");
    analyze_cmd->add_option("--samples", an.samples, "radius grid size")->check(CLI::Range(1, 100000));
    analyze_cmd->add_option("--n-max", an.n_max, "largest terminal count accepted")->check(CLI::Range(2, 14));
    analyze_cmd->add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    analyze_cmd->add_option("--out", an.out, "JSON report path (default stdout)");
    analyze_cmd->callback([&] {
        if (*scale_opt) an.scale = scale;
        action = [&] { return cmd_analyze(an, common, out); };
    });

    PathologyArgs pa;
    auto* path_cmd = app.add_subcommand("pathology", "staged tree with accumulating branch points");
    path_cmd->add_option("--stages", pa.stages, "last stage J");
    path_cmd->add_option("--eps1", pa.eps1, "first shift");
    path_cmd->add_option("--decay", pa.decay, "shift ratio between stages");
    path_cmd->add_flag("--enforce-gap", pa.enforce_gap, "also cap each shift by delta^2 / 64");
    path_cmd->add_option("--seed", pa.seed, "recorded in the report; the construction is deterministic");
    path_cmd->add_option("--n-max", pa.n_max, "largest stage certified by the exact solver")->check(CLI::Range(2, 14));
    path_cmd->add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    path_cmd->add_option("--svg-dir", pa.svg_dir, "write stage-J.svg files here");
    path_cmd->add_option("--out", pa.out, "JSON report path (default stdout)");
    path_cmd->callback([&] { action = [&] { return cmd_pathology(pa, common, out, err); }; });

    GenerateArgs ga;
    std::string kind;
    auto* gen_cmd = app.add_subcommand("generate", "write a .pts instance");
    gen_cmd->add_option("kind", kind, "hypercube | cocircular | random-ball | sphere")
        ->required()
        ->check(CLI::IsMember({"hypercube", "cocircular", "random-ball", "sphere"}));
    gen_cmd->add_option("--dim", ga.dim, "dimension");
    gen_cmd->add_option("--n", ga.n, "number of points");
    gen_cmd->add_option("--radius", ga.radius, "circle radius (cocircular)");
    gen_cmd->add_option("--seed", ga.seed, "random seed");
    gen_cmd->add_option("--out", ga.out, ".pts path (default stdout)");
    gen_cmd->add_option("--report", ga.report, "JSON summary path (hypercube)");
    gen_cmd->callback([&] { action = [&] { return cmd_generate(kind, ga, out); }; });

    SphereArgs sa;
    auto* sphere_cmd = app.add_subcommand("sphere-connect", "connect random points of the unit sphere");
    sphere_cmd->add_option("--dim", sa.dim, "ambient dimension d (sphere S^(d-1))");
    sphere_cmd->add_option("--t", sa.t, "number of points");
    sphere_cmd->add_option("--seed", sa.seed, "random seed");
    sphere_cmd->add_option("--out", sa.out, "JSON report path (default stdout)");
    sphere_cmd->callback([&] { action = [&] { return cmd_sphere_connect(sa, common, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitParse;
    }

    try {
        return action();
    } catch (const ParseError& e) {
        err << "steiner: parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UnsupportedError& e) {
        err << "steiner: unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const PreconditionError& e) {
        err << "steiner: precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const StageAbort& e) {
        err << "steiner: " << e.what() << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        err << "steiner: internal error: " << e.what() << "\n";
        return kExitFail;
    }
}

}  // namespace steiner::cli
