// Command-line front end: every subcommand loads a system description from a
// JSON config, runs one pipeline stage, and prints exact fractions alongside
// decimal approximations. Exit codes: 0 on success, 1 when a verification
// check fails, 2 on bad input.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kneadlab/config_io.hpp"
#include "kneadlab/entropy.hpp"
#include "kneadlab/itinerary.hpp"
#include "kneadlab/kneading.hpp"
#include "kneadlab/measure.hpp"
#include "kneadlab/overlap.hpp"
#include "kneadlab/separability.hpp"
#include "kneadlab/system.hpp"
#include "kneadlab/verify.hpp"
#include "kneadlab/words.hpp"

using namespace kneadlab;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config;
    int m = 14;
    int M = 16;
    std::string tol = "1/1000000000";
    int threads = 1;
    long long budget = 10'000'000;
    int decimal = 6;
    std::string json_path;
    std::string out_dir;
};

Rational parse_tol(const std::string& text) {
    Rational t = Rational::parse(text);
    if (t.sign() <= 0) throw std::invalid_argument("--tol must be positive");
    return t;
}

std::string dec(const Rational& r, int digits) { return r.decimal_str(digits); }

std::string show(const Rational& r, int digits) { return r.str() + " (~" + dec(r, digits) + ")"; }

System load(const std::string& path) {
    System sys = load_system(path);
    for (const std::string& w : sys.warnings()) std::cerr << "warning: " << w << "\n";
    return sys;
}

std::string title(const System& sys, const std::string& path) {
    return sys.name().empty() ? path : sys.name() + " (" + path + ")";
}

void dump_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::ofstream open_csv(const std::string& dir, const std::string& file) {
    std::filesystem::create_directories(dir);
    std::string path = dir + "/" + file;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool series_cap = true) {
    cmd->add_option("config", o.config, "system description (JSON)")->required();
    cmd->add_option("-m,--depth", o.m, "word length / lap depth");
    if (series_cap) cmd->add_option("-M,--cap", o.M, "series degree cap");
    cmd->add_option("--tol", o.tol, "root isolation tolerance (exact fraction or decimal)");
    cmd->add_option("--threads", o.threads, "enumeration worker threads");
    cmd->add_option("--budget", o.budget, "node budget for enumerations");
    cmd->add_option("--decimal", o.decimal, "digits in decimal approximations");
    cmd->add_option("--json", o.json_path, "write a JSON report to this path");
    cmd->add_option("--out-dir", o.out_dir, "write CSV dumps into this directory");
}

int cmd_entropy(const CommonOpts& o) {
    System sys = load(o.config);
    EntropyReport rep = entropy_report(sys, o.m, o.M, parse_tol(o.tol), o.budget, o.threads);

    std::cout << "system: " << title(sys, o.config) << "\n";
    std::cout << "lap counts (1.." << rep.m << "):";
    for (long long l : rep.laps) std::cout << " " << l;
    std::cout << "\n";
    std::cout << "growth: s_hat = " << rep.growth.s_hat << ", power mean " << rep.growth.s_hat_power
              << ", last ratio " << rep.growth.s_hat_ratio << ", fluctuation band "
              << rep.growth.fluctuation_band << "\n";
    std::cout << "boundary growth: s0_hat = " << rep.s0_hat << "\n";
    std::cout << "entropy (lap route): " << rep.entropy_lap << "\n";
    if (rep.root) {
        std::cout << "determinant root: " << show(rep.root->root, o.decimal)
                  << (rep.root->exact ? " [exact zero]" : "") << " bracketed by ["
                  << rep.root->bracket_lo.str() << ", " << rep.root->bracket_hi.str() << "]\n";
        std::cout << "entropy (root route): " << *rep.entropy_root << "\n";
        std::cout << "routes consistent: " << (rep.routes_consistent ? "yes" : "NO") << "\n";
    } else {
        std::cout << "determinant root: none"
                  << (rep.root_applicable ? "" : " (boundary growth gate not met)") << "\n";
    }
    if (rep.inconsistency) std::cout << "INCONSISTENCY: " << rep.note << "\n";
    else if (!rep.note.empty()) std::cout << "note: " << rep.note << "\n";

    if (!o.out_dir.empty()) {
        auto csv = open_csv(o.out_dir, "laps.csv");
        csv << "length,count\n";
        for (size_t k = 0; k < rep.laps.size(); ++k) csv << (k + 1) << "," << rep.laps[k] << "\n";
    }
    if (!o.json_path.empty()) {
        json j{{"system", sys.name()},
               {"m", rep.m},
               {"M", rep.M},
               {"laps", rep.laps},
               {"s_hat", rep.growth.s_hat},
               {"s_hat_power", rep.growth.s_hat_power},
               {"s_hat_ratio", rep.growth.s_hat_ratio},
               {"fluctuation_band", rep.growth.fluctuation_band},
               {"s0_hat", rep.s0_hat},
               {"entropy_lap", rep.entropy_lap},
               {"root_applicable", rep.root_applicable},
               {"routes_consistent", rep.routes_consistent},
               {"inconsistency", rep.inconsistency},
               {"note", rep.note}};
        if (rep.root) {
            j["root"] = rep.root->root.str();
            j["root_exact"] = rep.root->exact;
            j["entropy_root"] = *rep.entropy_root;
        }
        dump_json(o.json_path, j);
    }
    return 0;
}

int cmd_matrix(const CommonOpts& o) {
    System sys = load(o.config);
    KneadingMatrix km = kneading_matrix(sys, o.M, o.budget);
    std::cout << "system: " << title(sys, o.config) << "\n";
    std::cout << "kneading matrix (cap " << km.M << "), rows = turning points, columns = cells:\n";
    for (int i = 0; i < sys.turning_count(); ++i) {
        std::cout << "  c" << (i + 1) << ":";
        for (const Series& entry : km.n[static_cast<size_t>(i)]) std::cout << "  [" << entry.str() << "]";
        std::cout << "\n";
    }
    std::cout << "cell polynomials:\n";
    for (int j = 0; j < sys.cell_count(); ++j)
        std::cout << "  e_" << j << " = " << km.e[static_cast<size_t>(j)].str() << "\n";
    if (!o.json_path.empty()) {
        json rows = json::array();
        for (const auto& row : km.n) {
            json r = json::array();
            for (const Series& entry : row) r.push_back(entry.str());
            rows.push_back(r);
        }
        json cells = json::array();
        for (const Series& e : km.e) cells.push_back(e.str());
        dump_json(o.json_path, json{{"system", sys.name()}, {"M", km.M}, {"matrix", rows}, {"cells", cells}});
    }
    return 0;
}

int cmd_determinant(const CommonOpts& o, int column) {
    System sys = load(o.config);
    Series det = column >= 0 ? kneading_determinant(kneading_matrix(sys, o.M, o.budget), column)
                             : kneading_determinant(sys, o.M, std::nullopt, o.budget);
    std::cout << "system: " << title(sys, o.config) << "\n";
    std::cout << "determinant" << (column >= 0 ? " (column " + std::to_string(column) + ")" : "")
              << ": " << det.str() << "\n";
    if (!o.json_path.empty())
        dump_json(o.json_path, json{{"system", sys.name()}, {"M", o.M}, {"determinant", det.str()}});
    return 0;
}

int cmd_itinerary(const CommonOpts& o, const std::string& at, const std::string& side_text) {
    System sys = load(o.config);
    Side side = Side::exact;
    if (side_text == "plus") side = Side::plus;
    else if (side_text == "minus") side = Side::minus;
    else if (side_text != "exact")
        throw std::invalid_argument("--side must be exact, plus, or minus");
    SignedPoint p{Rational::parse(at), side};
    ItineraryTree tree = itinerary(sys, p, o.m, o.budget);
    std::cout << "system: " << title(sys, o.config) << "\n";
    std::cout << "itinerary of " << p.value.str()
              << (side == Side::plus ? " (right-sided)" : side == Side::minus ? " (left-sided)" : "")
              << " to depth " << o.m << ":\n";
    for (size_t k = 0; k < tree.levels.size(); ++k) {
        std::cout << "  length " << k << ":";
        for (const auto& e : tree.levels[k])
            std::cout << " " << word_str(e.word) << "->" << e.addr.str() << (e.interior ? "" : "*");
        std::cout << "\n";
    }
    std::cout << "(* marks words admissible only on the domain boundary)\n";
    return 0;
}

int cmd_compare(const CommonOpts& o, const std::string& other) {
    System a = load(o.config);
    System b = load(other);
    CompareResult res = compare_kneading(a, b, o.m, o.budget);
    std::cout << "A: " << title(a, o.config) << "\nB: " << title(b, other) << "\n";
    if (res.equal) {
        std::cout << "kneading data equal to depth " << res.depth << "\n";
    } else {
        std::cout << "kneading data differ at turning point c" << res.turning << ", word "
                  << word_str(res.witness) << ": "
                  << (res.addr_a ? res.addr_a->str() : std::string("inadmissible")) << " vs "
                  << (res.addr_b ? res.addr_b->str() : std::string("inadmissible")) << "\n";
        if (!res.note.empty()) std::cout << "note: " << res.note << "\n";
    }
    if (!o.json_path.empty()) {
        json j{{"equal", res.equal}, {"depth", res.depth}};
        if (!res.equal) {
            j["turning"] = res.turning;
            j["witness"] = word_str(res.witness);
        }
        dump_json(o.json_path, j);
    }
    return 0;
}

int cmd_map(const CommonOpts& o, const std::string& other) {
    System a = load(o.config);
    System b = load(other);
    CombinatorialMapResult res = combinatorial_map(a, b, o.m, o.budget);
    std::cout << "A: " << title(a, o.config) << "\nB: " << title(b, other) << "\n";
    std::cout << "critical-orbit graph: " << res.graph.size() << " pairs to depth " << o.m << "\n";
    if (res.ok) {
        std::cout << "conjugating map: consistent (order-preserving, equivariant, well-defined)\n";
    } else {
        std::cout << "conjugating map: FAILS with " << res.violations.size() << " violation(s)\n";
        size_t shown = 0;
        for (const MapViolation& v : res.violations) {
            if (++shown > 10) {
                std::cout << "  ...\n";
                break;
            }
            std::cout << "  " << v.detail << "\n";
        }
    }
    if (!o.out_dir.empty()) {
        auto csv = open_csv(o.out_dir, "map_graph.csv");
        csv << "a,b,word,turning\n";
        for (const auto& p : res.graph)
            csv << p.a.str() << "," << p.b.str() << "," << word_str(p.word) << "," << p.turning << "\n";
    }
    return 0;
}

int cmd_separability(const CommonOpts& o) {
    System sys = load(o.config);
    SeparabilityReport rep = check_separability(sys, o.m, o.budget);
    std::cout << "system: " << title(sys, o.config) << "\n";
    std::cout << "future separability to depth " << rep.depth << ": "
              << (rep.future_ok ? "holds" : "FAILS") << " (" << rep.future_pairs << " orbit points)\n";
    if (rep.future_witness)
        std::cout << "  unseparated pair: " << rep.future_witness->x.str() << " and "
                  << rep.future_witness->y.str() << "\n";
    std::cout << "past separability to depth " << rep.depth << ": "
              << (rep.past_ok ? "holds" : "FAILS") << " (" << rep.past_pairs << " pullback points)\n";
    if (rep.past_witness)
        std::cout << "  colliding pullbacks: " << rep.past_witness->x.str() << " (generator "
                  << rep.past_witness->gen_x << ") and " << rep.past_witness->y.str()
                  << " (generator " << rep.past_witness->gen_y << ")\n";
    for (const std::string& n : rep.notes) std::cout << "note: " << n << "\n";
    return 0;
}

int cmd_measure(const CommonOpts& o, const std::string& lo, const std::string& hi) {
    System sys = load(o.config);
    Interval J{Rational::parse(lo), Rational::parse(hi)};
    MeasureContext ctx(sys, o.m, o.budget, o.threads);
    MeasureEstimate est = ctx.estimate(J);
    std::cout << "system: " << title(sys, o.config) << "\n";
    std::cout << "measure of " << J.str() << " at depth " << est.depth << ": " << est.value
              << (est.exact_one ? " (exactly 1: the interval holds every word domain)" : "") << "\n";
    std::cout << "level spread: [" << est.lower << ", " << est.upper << "], resummed " << est.abel
              << "\n";
    for (const std::string& w : est.warnings) std::cout << "warning: " << w << "\n";
    SelfSimilarityCheck chk = ctx.self_similarity(J);
    std::cout << "self-similarity: |" << chk.lhs << " - " << chk.rhs << "| = " << chk.residual
              << " against bracket " << chk.bracket << " -> " << (chk.within ? "within" : "OUTSIDE")
              << "\n";
    if (!o.json_path.empty())
        dump_json(o.json_path, json{{"system", sys.name()},
                                    {"interval", J.str()},
                                    {"depth", est.depth},
                                    {"value", est.value},
                                    {"lower", est.lower},
                                    {"upper", est.upper},
                                    {"abel", est.abel},
                                    {"exact_one", est.exact_one},
                                    {"self_similarity_residual", chk.residual},
                                    {"self_similarity_bracket", chk.bracket}});
    return 0;
}

int cmd_linearize(const CommonOpts& o, int grid) {
    System sys = load(o.config);
    LinearizeReport rep = linearize(sys, o.m, o.M, grid, parse_tol(o.tol), o.budget, o.threads);
    std::cout << "system: " << title(sys, o.config) << "\n";
    std::cout << "constant slope s = " << rep.s << " ("
              << (rep.from_root ? "determinant root" : "lap growth") << ")\n";
    for (const auto& br : rep.branches) {
        std::cout << "  branch " << br.branch << ": phi-domain [" << br.y_lo << ", " << br.y_hi
                  << "], model y -> " << br.v_lo << " + " << (br.sign > 0 ? "" : "-") << "s (y - "
                  << br.y_lo << ")";
        if (br.degenerate) std::cout << " [degenerate]";
        else std::cout << ", residual " << br.residual;
        std::cout << "\n";
    }
    std::cout << "max residual over " << rep.grid_points << "-point grids: " << rep.max_residual
              << "\n";
    for (const std::string& w : rep.warnings) std::cout << "warning: " << w << "\n";
    if (!o.json_path.empty()) {
        json branches = json::array();
        for (const auto& br : rep.branches)
            branches.push_back(json{{"branch", br.branch},
                                    {"sign", br.sign},
                                    {"y_lo", br.y_lo},
                                    {"y_hi", br.y_hi},
                                    {"v_lo", br.v_lo},
                                    {"residual", br.residual},
                                    {"degenerate", br.degenerate}});
        dump_json(o.json_path, json{{"system", sys.name()},
                                    {"s", rep.s},
                                    {"from_root", rep.from_root},
                                    {"max_residual", rep.max_residual},
                                    {"branches", branches}});
    }
    return 0;
}

int cmd_overlap(const CommonOpts& o, int N) {
    System sys = load(o.config);
    OverlapModel m = overlap_model(sys, N, parse_tol(o.tol));
    std::cout << "system: " << title(sys, o.config) << "\n";
    auto digits = [](const std::vector<int>& v) {
        std::string s;
        for (int d : v) s += static_cast<char>('0' + d);
        return s;
    };
    std::cout << "itinerary favoring left:  " << digits(m.alpha) << "\n";
    std::cout << "itinerary favoring right: " << digits(m.beta) << "\n";
    if (m.status == OverlapStatus::identical_itineraries) {
        std::cout << "the two tie-breakings agree to depth " << N << "; no overlap data\n";
        return 0;
    }
    if (m.status == OverlapStatus::no_root) {
        std::cout << m.note << "\n";
        return 0;
    }
    std::cout << "difference-series root r = " << show(m.r, o.decimal)
              << (m.root->exact ? " [exact zero]" : "") << "\n";
    if (m.stability)
        std::cout << "depth stability |r_N - r_(N-1)| = " << *m.stability << "\n";
    std::cout << "slope s = 1/r = " << show(m.s, o.decimal) << "\n";
    std::cout << "breakpoint: raw " << show(m.p_raw, o.decimal) << ", tail r^" << (N + 1) << " = "
              << dec(m.tail, o.decimal + 4) << ", snapped p = " << show(m.p, o.decimal) << "\n";
    if (m.anchored) {
        const Interval h = sys.hull();
        std::cout << "constant-slope pair on " << h.str() << ":\n";
        std::cout << "  U0(x) = " << m.s.str() << " (x - " << h.lo.str() << ") + " << h.lo.str()
                  << " on [" << h.lo.str() << ", " << m.p.str() << "]\n";
        std::cout << "  U1(x) = " << m.s.str() << " (x - " << h.hi.str() << ") + " << h.hi.str()
                  << " on [" << m.p.str() << ", " << h.hi.str() << "]\n";
    } else {
        std::cout << "hull endpoints are not fixed by the outer branches; the constant-slope pair "
                     "is reported abstractly (slope, breakpoint) only\n";
    }
    if (!o.json_path.empty())
        dump_json(o.json_path, json{{"system", sys.name()},
                                    {"N", N},
                                    {"r", m.r.str()},
                                    {"r_exact", m.root->exact},
                                    {"s", m.s.str()},
                                    {"p_raw", m.p_raw.str()},
                                    {"tail", m.tail.str()},
                                    {"p", m.p.str()},
                                    {"anchored", m.anchored}});
    return 0;
}

int cmd_verify(const CommonOpts& o, int points, int intervals, unsigned long long seed) {
    System sys = load(o.config);
    VerifyOptions opt;
    opt.m = o.m;
    opt.M = o.M;
    opt.points = points;
    opt.intervals = intervals;
    opt.seed = seed;
    opt.node_budget = o.budget;
    opt.cylinder_depth = std::min(o.m, 10);
    opt.tri_depth = std::min(o.m, 8);
    std::vector<CheckResult> results = run_identity_suite(sys, opt);
    std::cout << "system: " << title(sys, o.config) << "\n";
    int failed = 0;
    for (const CheckResult& c : results) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << " — " << c.detail << "\n";
        if (!c.pass) ++failed;
    }
    if (!o.json_path.empty()) {
        json checks = json::array();
        for (const CheckResult& c : results)
            checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        dump_json(o.json_path, json{{"system", sys.name()}, {"checks", checks}, {"failed", failed}});
    }
    if (failed > 0) {
        std::cout << failed << " of " << results.size() << " checks FAILED\n";
        return 1;
    }
    std::cout << "all " << results.size() << " checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kneading analysis of systems of strictly monotone interval maps"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string other, at, side = "exact", lo, hi;
    int column = -1, grid = 200, N = 32, points = 20, intervals = 5;
    unsigned long long seed = 20260822ull;

    CLI::App* entropy = app.add_subcommand("entropy", "lap growth and determinant-root entropy");
    add_common(entropy, o);

    CLI::App* matrix = app.add_subcommand("matrix", "kneading matrix and cell polynomials");
    add_common(matrix, o);

    CLI::App* determinant = app.add_subcommand("determinant", "kneading determinant");
    add_common(determinant, o);
    determinant->add_option("--column", column, "delete this column instead of cross-checking all");

    CLI::App* itin = app.add_subcommand("itinerary", "symbol tree of a point");
    add_common(itin, o, false);
    itin->add_option("-x,--at", at, "base point (exact fraction or decimal)")->required();
    itin->add_option("--side", side, "exact | plus | minus");

    CLI::App* compare = app.add_subcommand("compare", "compare kneading data of two systems");
    add_common(compare, o, false);
    compare->add_option("other", other, "second system (JSON)")->required();

    CLI::App* mapcmd = app.add_subcommand("map", "conjugating-map consistency on critical orbits");
    add_common(mapcmd, o, false);
    mapcmd->add_option("other", other, "second system (JSON)")->required();

    CLI::App* sep = app.add_subcommand("separability", "critical-orbit separation of points");
    add_common(sep, o, false);

    CLI::App* measure = app.add_subcommand("measure", "self-similar measure of an interval");
    add_common(measure, o, false);
    measure->add_option("--lo", lo, "left endpoint")->required();
    measure->add_option("--hi", hi, "right endpoint")->required();

    CLI::App* lin = app.add_subcommand("linearize", "constant-slope model in measure coordinates");
    add_common(lin, o);
    lin->add_option("--grid", grid, "grid points per branch");

    CLI::App* overlap = app.add_subcommand("overlap", "two-branch overlap growth data");
    add_common(overlap, o, false);
    overlap->add_option("-N,--digits", N, "itinerary depth");

    CLI::App* verify = app.add_subcommand("verify", "run every exact identity check");
    add_common(verify, o);
    verify->add_option("--points", points, "random points for the partition-of-unity check");
    verify->add_option("--intervals", intervals, "random intervals for the jump identity");
    verify->add_option("--seed", seed, "random sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(entropy)) return cmd_entropy(o);
        if (app.got_subcommand(matrix)) return cmd_matrix(o);
        if (app.got_subcommand(determinant)) return cmd_determinant(o, column);
        if (app.got_subcommand(itin)) return cmd_itinerary(o, at, side);
        if (app.got_subcommand(compare)) return cmd_compare(o, other);
        if (app.got_subcommand(mapcmd)) return cmd_map(o, other);
        if (app.got_subcommand(sep)) return cmd_separability(o);
        if (app.got_subcommand(measure)) return cmd_measure(o, lo, hi);
        if (app.got_subcommand(lin)) return cmd_linearize(o, grid);
        if (app.got_subcommand(overlap)) return cmd_overlap(o, N);
        if (app.got_subcommand(verify)) return cmd_verify(o, points, intervals, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
