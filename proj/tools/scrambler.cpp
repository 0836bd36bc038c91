// Command-line front end: entropy queries, Shannon-McMillan checks, tree
// construction, point emission, DC2 verification, trajectory profiling, and
// the randomized lemma validators. Every subcommand is deterministic given
// its full argument list.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scrambler/builder.hpp"
#include "scrambler/chaos.hpp"
#include "scrambler/errors.hpp"
#include "scrambler/shift.hpp"
#include "scrambler/validators.hpp"

namespace {

using namespace scrambler;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitLookup = 5;
constexpr int kExitVerification = 6;

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find(',', start);
        std::string tok =
            pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start);
        if (!tok.empty()) {
            char* end = nullptr;
            double v = std::strtod(tok.c_str(), &end);
            if (end != tok.c_str() + tok.size())
                throw ParseError("bad numeric token '" + tok + "'");
            out.push_back(v);
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<std::int64_t>(v));
    return out;
}

std::set<Symbol> parse_symbol_set(const std::string& text) {
    std::set<Symbol> out;
    if (text.empty()) return out;
    for (std::int64_t v : parse_int_list(text)) {
        if (v < 0 || v > 255) throw ParseError("symbol index out of range in '" + text + "'");
        out.insert(static_cast<Symbol>(v));
    }
    return out;
}

int cmd_entropy(const std::string& measure_spec) {
    ShiftMeasure m = parse_measure(measure_spec);
    std::printf("%s\n", fmt6(entropy_rate(m)).c_str());
    return kExitOk;
}

int cmd_smcheck(const std::string& measure_spec, std::int64_t n, double epsilon) {
    ShiftMeasure m = parse_measure(measure_spec);
    SmResult r = sm_mass(m, n, epsilon);
    std::printf("%s %s\n", fmt6(r.mass).c_str(), r.holds ? "true" : "false");
    return kExitOk;
}

int cmd_construct(const BuildConfig& config, const std::string& out_path) {
    FeasibilityReport feasibility = check_feasibility(config);
    if (feasibility.ok || !feasibility.levels.empty() || feasibility.beta > 0.0)
        std::printf("feasibility: beta(delta)=%s h'=%s h=%s\n", fmt6(feasibility.beta).c_str(),
                    fmt6(feasibility.h_prime).c_str(), fmt6(feasibility.h).c_str());
    for (const LevelBudget& b : feasibility.levels) {
        std::printf("level %d: n=%" PRId64 " %s log2(candidates)=%.1f log2(cap)=%.1f %s\n",
                    b.level, b.window_len, b.enumerated ? "enumerated" : "sampled",
                    b.log2_candidates, b.log2_cap, b.ok ? "ok" : "VIOLATED");
    }
    if (!feasibility.ok) throw InfeasibleParameters(feasibility.violation);

    ScrambledTree tree = build_tree(config);
    save_tree(tree, out_path);
    TreeAudit audit = audit_tree(tree);
    std::string window_lengths;
    for (std::size_t k = 1; k <= tree.schedule.window_count(); ++k) {
        if (k > 1) window_lengths += ",";
        window_lengths += std::to_string(tree.schedule.length(k));
    }
    std::printf("tree: leaves=%zu windows=[%s] min_sibling_distance=%s out=%s\n",
                tree.leaf_keys().size(), window_lengths.c_str(),
                fmt6(audit.min_sibling_distance).c_str(), out_path.c_str());
    if (!audit.ok) {
        for (const auto& v : audit.violations) std::fprintf(stderr, "audit: %s\n", v.c_str());
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_points(const std::string& tree_path, const std::string& kappa, std::int64_t length,
               const std::string& out_path) {
    ScrambledTree tree = load_tree(tree_path);
    SymbolicPoint point = assemble_point(tree, kappa, length);
    std::string text = encode_symbols(point.symbols(), tree.alphabet_size);
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fputc('\n', stdout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error("cannot open '" + out_path + "' for writing");
        out << text << "\n";
    }
    return kExitOk;
}

nlohmann::json verification_to_json(const TreeVerification& v) {
    nlohmann::json j;
    j["t"] = v.t;
    j["t0"] = v.t0;
    j["eta"] = v.eta;
    j["close_depth"] = v.close_depth;
    j["audit"] = {{"ok", v.audit.ok},
                  {"min_sibling_distance", v.audit.min_sibling_distance},
                  {"violations", v.audit.violations}};
    nlohmann::json pairs = nlohmann::json::array();
    for (const PairVerdict& p : v.pairs) {
        nlohmann::json jp;
        jp["first"] = p.first;
        jp["second"] = p.second;
        jp["first_diff"] = p.first_diff;
        jp["pass"] = p.pass;
        nlohmann::json closeness = nlohmann::json::array();
        for (const ClosenessCheck& c : p.closeness)
            closeness.push_back({{"level", c.level},
                                 {"checkpoint", c.checkpoint},
                                 {"count", c.count},
                                 {"bound", c.bound},
                                 {"f", c.f},
                                 {"pass", c.pass}});
        jp["closeness"] = std::move(closeness);
        nlohmann::json separation = nlohmann::json::array();
        for (const SeparationCheck& s : p.separation)
            separation.push_back({{"level", s.level},
                                  {"a", s.window.a},
                                  {"b", s.window.b},
                                  {"diff_count", s.diff_count},
                                  {"bound", s.bound},
                                  {"clean_count", s.clean_count},
                                  {"p0_visits", s.p0_visits},
                                  {"f_at_t0", s.f_at_t0},
                                  {"pass", s.pass}});
        jp["separation"] = std::move(separation);
        pairs.push_back(std::move(jp));
    }
    j["pairs"] = std::move(pairs);
    j["uniform"] = {{"t0", v.t0},
                    {"delta_achieved", v.delta_achieved},
                    {"delta_guarantee", v.delta_guarantee}};
    j["vacuous"] = v.vacuous;
    j["all_pass"] = v.all_pass;
    return j;
}

int cmd_verify(const std::string& tree_path, double t, double eta, const std::string& p0_spec,
               const std::string& format) {
    ScrambledTree tree = load_tree(tree_path);
    TreeVerification v = verify_tree(tree, t, eta, parse_symbol_set(p0_spec));
    if (format == "json") {
        std::printf("%s\n", verification_to_json(v).dump(2).c_str());
    } else {
        std::printf("tree: %s levels=%d leaves=%zu t=%g t0=%g eta=%g\n",
                    tree.measure_spec.c_str(), tree.levels, tree.leaf_keys().size(), v.t, v.t0,
                    v.eta);
        std::printf("audit: %s min_sibling_distance=%s\n", v.audit.ok ? "ok" : "FAIL",
                    fmt6(v.audit.min_sibling_distance).c_str());
        for (const auto& violation : v.audit.violations)
            std::printf("audit violation: %s\n", violation.c_str());
        for (const PairVerdict& p : v.pairs) {
            std::size_t close_ok = 0, sep_ok = 0;
            for (const auto& c : p.closeness) close_ok += c.pass;
            for (const auto& s : p.separation) sep_ok += s.pass;
            std::printf("%s %s|%s i0=%d closeness %zu/%zu separation %zu/%zu\n",
                        p.pass ? "PASS" : "FAIL", p.first.c_str(), p.second.c_str(),
                        p.first_diff, close_ok, p.closeness.size(), sep_ok, p.separation.size());
            if (!p.pass) {
                for (const auto& c : p.closeness)
                    if (!c.pass)
                        std::printf("  closeness level %d: count=%" PRId64 " < bound=%" PRId64
                                    "\n",
                                    c.level, c.count, c.bound);
                for (const auto& s : p.separation)
                    if (!s.pass)
                        std::printf("  separation level %d: diff_count=%" PRId64
                                    " bound=%" PRId64 " clean=%" PRId64 "\n",
                                    s.level, s.diff_count, s.bound, s.clean_count);
            }
        }
        if (v.vacuous)
            std::printf("summary: vacuous (fewer than two leaves); nothing to scramble\n");
        else
            std::printf("summary: pairs=%zu failures=%zu uniform t0=%g delta_achieved=%s "
                        "(guarantee %s)\n",
                        v.pairs.size(), v.pair_failures, v.t0, fmt6(v.delta_achieved).c_str(),
                        fmt6(v.delta_guarantee).c_str());
    }
    return v.all_pass ? kExitOk : kExitVerification;
}

int cmd_profile(const std::string& path_a, const std::string& path_b, const std::string& t_grid,
                const std::string& checkpoints_text, bool strict, bool as_json,
                std::optional<double> diameter) {
    DistanceSeries d = ingest_trajectories(path_a, path_b, diameter);
    std::vector<double> ts = parse_double_list(t_grid);
    if (ts.empty()) throw ParseError("empty t grid");
    std::vector<std::int64_t> checkpoints;
    if (checkpoints_text.empty())
        checkpoints.push_back(static_cast<std::int64_t>(d.values.size()));
    else
        checkpoints = parse_int_list(checkpoints_text);

    std::vector<ProximityProfile> profiles;
    for (double t : ts) profiles.push_back(profile(d, t, checkpoints));
    auto averages = ergodic_average(d, checkpoints);
    auto violations = bridging_violations(d, ts, checkpoints);

    if (as_json) {
        nlohmann::json j;
        j["diameter"] = d.diameter;
        j["checkpoints"] = checkpoints;
        nlohmann::json jf = nlohmann::json::object();
        for (const auto& p : profiles) {
            nlohmann::json row = nlohmann::json::object();
            for (const auto& [n, f] : p.values) row[std::to_string(n)] = f;
            jf[std::to_string(p.t)] = std::move(row);
        }
        j["F"] = std::move(jf);
        nlohmann::json ja = nlohmann::json::object();
        for (const auto& [n, a] : averages) ja[std::to_string(n)] = a;
        j["ergodic_average"] = std::move(ja);
        j["bridging_violations"] = violations.size();
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("%12s", "n");
        for (double t : ts) std::printf("  %15s", ("F(t=" + fmt6(t) + ")").c_str());
        std::printf("  %12s\n", "avg");
        for (std::size_t row = 0; row < averages.size(); ++row) {
            std::printf("%12" PRId64, averages[row].first);
            for (const auto& p : profiles)
                std::printf("  %15s", fmt6(p.values[row].second).c_str());
            std::printf("  %12s\n", fmt6(averages[row].second).c_str());
        }
        std::printf("bridging: %zu violations (avg <= t*F + D*(1-F), avg >= t*(1-F))\n",
                    violations.size());
    }
    if (strict && !violations.empty()) return kExitVerification;
    return kExitOk;
}

int cmd_lemmalab(int trials, std::uint64_t seed, bool break_threshold) {
    TrialCounts f0 = validate_fact_f0(trials, seed);
    std::printf("fact-f0: trials=%d satisfied=%d skipped=%d failures=%d\n", f0.trials,
                f0.satisfied, f0.skipped, f0.failures);

    FactF1Report f1 = validate_fact_f1(trials, seed);
    std::printf("fact-f1: delta=%s trials=%d satisfied=%d skipped=%d failures=%d "
                "failures_at_hi=%d\n",
                fmt6(f1.delta).c_str(), f1.at_delta.trials, f1.at_delta.satisfied,
                f1.at_delta.skipped, f1.at_delta.failures, f1.failures_at_hi);

    Lemma1Config config;
    if (break_threshold) config = lemma1_broken_threshold_config();
    Lemma1Report l1 = validate_lemma1(trials, seed, config);
    std::printf("lemma-1: m=%" PRId64 " trials=%d satisfied=%d skipped=%d failures=%d "
                "nesting_violations=%d%s\n",
                l1.m, l1.counts.trials, l1.counts.satisfied, l1.counts.skipped,
                l1.counts.failures, l1.nesting_violations,
                break_threshold ? " (threshold check bypassed)" : "");

    bool failed = f0.failures > 0 || f1.at_delta.failures > 0 || l1.counts.failures > 0;
    return failed ? kExitVerification : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic-dynamics toolkit: entropy, Shannon-McMillan checks, "
                 "Hamming-separated scrambled trees, DC2 verification"};
    app.require_subcommand(1);

    std::string measure_spec, tree_path, out_path, kappa, p0_spec, format = "text";
    std::string path_a, path_b, t_grid = "0.5", checkpoints_text;
    std::int64_t n = 0, length = 0;
    double epsilon = 0.1, t = 0.00390625, eta = 0.01;
    double diameter = -1.0;
    int trials = 1000;
    bool strict = false, as_json = false, break_threshold = false;
    BuildConfig build;

    auto* entropy_cmd = app.add_subcommand("entropy", "entropy rate of a measure (bits/symbol)");
    entropy_cmd->add_option("--measure", measure_spec, "bernoulli:p0,p1,... or markov:row;row")
        ->required();

    auto* smcheck_cmd =
        app.add_subcommand("smcheck", "mass of good length-n cylinders and the SM verdict");
    smcheck_cmd->add_option("--measure", measure_spec)->required();
    smcheck_cmd->add_option("--n", n, "window length")->required();
    smcheck_cmd->add_option("--epsilon", epsilon, "mass-window tolerance")->required();

    auto* construct_cmd = app.add_subcommand("construct", "build a scrambled tree and save it");
    construct_cmd->add_option("--measure", build.measure_spec)->required();
    construct_cmd->add_option("--delta", build.delta, "separation parameter");
    construct_cmd->add_option("--hprime", build.h_prime, "candidate-richness exponent");
    construct_cmd->add_option("--epsilon", build.epsilon, "good-window tolerance");
    construct_cmd->add_option("--levels", build.levels, "tree depth K");
    construct_cmd->add_option("--n1", build.n1, "first window length");
    construct_cmd->add_option("--rho0", build.rho0, "ratio offset (window k has ratio rho0+k)");
    construct_cmd->add_option("--seed", build.seed, "master seed");
    construct_cmd->add_option("--pool", build.sample_pool, "candidate pool per family (0=auto)");
    construct_cmd->add_option("--out", out_path, "output tree JSON path")->required();

    auto* points_cmd = app.add_subcommand("points", "emit a point of the scrambled set");
    points_cmd->add_option("--tree", tree_path)->required();
    points_cmd->add_option("--kappa", kappa, "binary branch label of length K");
    points_cmd->add_option("--length", length, "number of coordinates to emit")->required();
    points_cmd->add_option("--out", out_path, "output path (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "check the DC2 conditions on a tree");
    verify_cmd->add_option("--tree", tree_path)->required();
    verify_cmd->add_option("--t", t, "closeness threshold (default 2^-8)");
    verify_cmd->add_option("--eta", eta, "verdict slack");
    verify_cmd->add_option("--p0", p0_spec, "separating symbol class, e.g. 0 or 0,3");
    verify_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* profile_cmd =
        app.add_subcommand("profile", "proximity profile of two ingested trajectories");
    profile_cmd->add_option("--a", path_a, "first trajectory file")->required();
    profile_cmd->add_option("--b", path_b, "second trajectory file")->required();
    profile_cmd->add_option("--t-grid", t_grid, "comma-separated thresholds");
    profile_cmd->add_option("--checkpoints", checkpoints_text, "comma-separated horizons");
    profile_cmd->add_option("--diameter", diameter, "declared diameter (default: observed max)");
    profile_cmd->add_flag("--strict", strict, "exit nonzero on a bridging violation");
    profile_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* lemmalab_cmd =
        app.add_subcommand("lemmalab", "randomized validators for the entropy lemmas");
    lemmalab_cmd->add_option("--trials", trials);
    std::uint64_t seed = 0;
    lemmalab_cmd->add_option("--seed", seed);
    lemmalab_cmd->add_flag("--break-threshold", break_threshold,
                           "negative control: run with the window threshold bypassed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (entropy_cmd->parsed()) return cmd_entropy(measure_spec);
        if (smcheck_cmd->parsed()) return cmd_smcheck(measure_spec, n, epsilon);
        if (construct_cmd->parsed()) return cmd_construct(build, out_path);
        if (points_cmd->parsed()) return cmd_points(tree_path, kappa, length, out_path);
        if (verify_cmd->parsed()) return cmd_verify(tree_path, t, eta, p0_spec, format);
        if (profile_cmd->parsed())
            return cmd_profile(path_a, path_b, t_grid, checkpoints_text, strict, as_json,
                               diameter >= 0.0 ? std::optional<double>(diameter) : std::nullopt);
        if (lemmalab_cmd->parsed()) return cmd_lemmalab(trials, seed, break_threshold);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const EnumerationCapExceeded& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitCap;
    } catch (const InfeasibleParameters& e) {
        std::fprintf(stderr, "error: infeasible parameters: %s\n", e.what());
        return kExitInfeasible;
    } catch (const FamilyExhausted& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const ScheduleOverflow& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const HorizonExceeded& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitLookup;
    } catch (const LookupError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitLookup;
    } catch (const LengthMismatchError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const EmptySeries& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitOk;
}
