#include "scrambler/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "scrambler/parallel.hpp"

namespace scrambler {

DistanceSeries make_series(std::vector<double> values, std::optional<double> diameter) {
    double max_seen = 0.0;
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0)
            throw DomainError("distance series entries must be finite and nonnegative");
        max_seen = std::max(max_seen, v);
    }
    DistanceSeries d;
    d.values = std::move(values);
    d.diameter = diameter.value_or(max_seen);
    if (d.diameter < max_seen - 1e-12)
        throw DomainError("distance series exceeds the declared diameter");
    return d;
}

namespace {

void check_checkpoints(const DistanceSeries& d, const std::vector<std::int64_t>& checkpoints) {
    if (d.values.empty()) throw EmptySeries("distance series is empty");
    if (checkpoints.empty()) throw DomainError("checkpoint set must be nonempty");
    for (std::int64_t n : checkpoints)
        if (n < 1 || n > static_cast<std::int64_t>(d.values.size()))
            throw DomainError("checkpoint " + std::to_string(n) +
                              " outside the series horizon");
}

}  // namespace

ProximityProfile profile(const DistanceSeries& d, double t,
                         const std::vector<std::int64_t>& checkpoints) {
    check_checkpoints(d, checkpoints);
    ProximityProfile out;
    out.t = t;
    std::vector<std::int64_t> sorted = checkpoints;
    std::sort(sorted.begin(), sorted.end());
    std::int64_t count = 0, i = 0;
    for (std::int64_t n : sorted) {
        for (; i < n; ++i)
            if (d.values[static_cast<std::size_t>(i)] < t) ++count;
        out.values.emplace_back(n, static_cast<double>(count) / static_cast<double>(n));
    }
    return out;
}

std::vector<std::pair<std::int64_t, double>> ergodic_average(
    const DistanceSeries& d, const std::vector<std::int64_t>& checkpoints) {
    check_checkpoints(d, checkpoints);
    std::vector<std::int64_t> sorted = checkpoints;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<std::int64_t, double>> out;
    double sum = 0.0;
    std::int64_t i = 0;
    for (std::int64_t n : sorted) {
        for (; i < n; ++i) sum += d.values[static_cast<std::size_t>(i)];
        out.emplace_back(n, sum / static_cast<double>(n));
    }
    return out;
}

std::pair<double, double> density_bracket(const DistanceSeries& d, double t, double t0,
                                          const std::vector<std::int64_t>& checkpoints) {
    if (!(t > 0.0) || !(t0 > 0.0)) throw DomainError("density bracket needs t, t0 > 0");
    ProximityProfile close = profile(d, t, checkpoints);
    ProximityProfile far = profile(d, t0, checkpoints);
    double sup = 0.0, inf = 1.0;
    for (const auto& [n, f] : close.values) sup = std::max(sup, f);
    for (const auto& [n, f] : far.values) inf = std::min(inf, f);
    return {sup, inf};
}

DC2Verdict dc2_verdict(const DistanceSeries& d, const std::vector<double>& t_grid, double t0,
                       double gap, double eta, const std::vector<std::int64_t>& checkpoints) {
    if (t_grid.empty()) throw DomainError("t grid must be nonempty");
    if (!(eta > 0.0) || !(eta < gap)) throw DomainError("verdict needs 0 < eta < gap");
    DC2Verdict v;
    v.t_grid = t_grid;
    v.t0 = t0;
    v.gap = gap;
    bool sup_ok = true;
    for (double t : t_grid) {
        ProximityProfile p = profile(d, t, checkpoints);
        double sup = 0.0;
        for (const auto& [n, f] : p.values) sup = std::max(sup, f);
        v.sup_estimates[t] = sup;
        if (!(sup >= 1.0 - eta)) sup_ok = false;
    }
    ProximityProfile p0 = profile(d, t0, checkpoints);
    v.inf_estimate_at_t0 = 1.0;
    for (const auto& [n, f] : p0.values) v.inf_estimate_at_t0 = std::min(v.inf_estimate_at_t0, f);
    v.consistent = sup_ok && v.inf_estimate_at_t0 <= 1.0 - gap;
    return v;
}

DistanceSeries symbolic_distance_series(const SymbolicPoint& x, const SymbolicPoint& y,
                                        std::int64_t n, int depth_cap) {
    if (n < 1) throw DomainError("series horizon must be >= 1");
    std::vector<double> values(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        values[static_cast<std::size_t>(i)] = sequence_distance(x, y, i, depth_cap);
    DistanceSeries d;
    d.values = std::move(values);
    d.diameter = 1.0;
    return d;
}

std::vector<BridgingViolation> bridging_violations(const DistanceSeries& d,
                                                   const std::vector<double>& ts,
                                                   const std::vector<std::int64_t>& checkpoints) {
    std::vector<BridgingViolation> out;
    auto averages = ergodic_average(d, checkpoints);
    for (double t : ts) {
        ProximityProfile p = profile(d, t, checkpoints);
        for (std::size_t i = 0; i < p.values.size(); ++i) {
            auto [n, f] = p.values[i];
            double avg = 0.0;
            for (const auto& [an, av] : averages)
                if (an == n) avg = av;
            double upper = t * f + d.diameter * (1.0 - f);
            double lower = t * (1.0 - f);
            double slack = 1e-12 * std::max(1.0, d.diameter);
            if (avg > upper + slack || avg < lower - slack) out.push_back({n, t});
        }
    }
    return out;
}

DistanceSeries ingest_trajectories(const std::string& path_a, const std::string& path_b,
                                   std::optional<double> diameter) {
    auto read_column = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open trajectory file '" + path + "'");
        std::vector<double> values;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos) continue;
            if (line[start] == '#') continue;
            char* end = nullptr;
            double v = std::strtod(line.c_str() + start, &end);
            std::size_t consumed = static_cast<std::size_t>(end - line.c_str());
            if (end == line.c_str() + start ||
                line.find_first_not_of(" \t\r", consumed) != std::string::npos)
                throw ParseError("bad numeric value in '" + path + "' line " +
                                     std::to_string(line_no),
                                 line_no);
            if (!std::isfinite(v))
                throw ParseError("non-finite value in '" + path + "' line " +
                                     std::to_string(line_no),
                                 line_no);
            values.push_back(v);
        }
        return values;
    };
    std::vector<double> u = read_column(path_a);
    std::vector<double> v = read_column(path_b);
    if (u.empty() || v.empty()) throw EmptySeries("trajectory files must contain data");
    if (u.size() != v.size())
        throw LengthMismatchError("trajectories differ in length: " + std::to_string(u.size()) +
                                  " vs " + std::to_string(v.size()));
    std::vector<double> dist(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) dist[i] = std::abs(u[i] - v[i]);
    return make_series(std::move(dist), diameter);
}

namespace {

// Agreement run length needed for distance < t: the smallest m with
// 2^{-(m+1)} < t. Coordinates followed by m+1 shared symbols count as close.
int close_depth_for(double t) {
    if (!(t > 0.0)) throw DomainError("closeness threshold must be positive");
    int m = 0;
    while (m < 62 && std::exp2(static_cast<double>(-(m + 1))) >= t) ++m;
    return m;
}

std::int64_t ceil_int(double x) { return static_cast<std::int64_t>(std::ceil(x - 1e-9)); }

}  // namespace

TreeVerification verify_tree(const ScrambledTree& tree, double t, double eta,
                             const std::set<Symbol>& p0) {
    TreeVerification report;
    report.t = t;
    report.eta = eta;
    report.close_depth = close_depth_for(t);
    report.audit = audit_tree(tree);
    report.delta_guarantee =
        tree.levels >= 1 ? 3.0 * tree.delta * (1.0 - 1.0 / tree.schedule.min_odd_ratio()) : 0.0;

    std::vector<std::string> leaves = tree.leaf_keys();
    if (leaves.size() < 2) {
        report.vacuous = true;
        report.all_pass = report.audit.ok;
        report.delta_achieved = 0.0;
        return report;
    }

    const std::int64_t horizon = tree.schedule.horizon();
    std::vector<SymbolicPoint> points;
    points.reserve(leaves.size());
    for (const auto& key : leaves) points.push_back(assemble_point(tree, key, horizon));

    bool p0_table[256] = {};
    for (Symbol s : p0) p0_table[s] = true;

    std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
    for (std::size_t i = 0; i < leaves.size(); ++i)
        for (std::size_t j = i + 1; j < leaves.size(); ++j) index_pairs.emplace_back(i, j);

    report.pairs.resize(index_pairs.size());
    const int d = report.close_depth;

    parallel_for(index_pairs.size(), [&](std::size_t pair_index) {
        auto [i, j] = index_pairs[pair_index];
        PairVerdict verdict;
        verdict.first = leaves[i];
        verdict.second = leaves[j];
        const auto& xs = points[i].symbols();
        const auto& ys = points[j].symbols();

        int first_diff = 0;
        while (first_diff < tree.levels &&
               leaves[i][static_cast<std::size_t>(first_diff)] ==
                   leaves[j][static_cast<std::size_t>(first_diff)])
            ++first_diff;
        verdict.first_diff = first_diff;

        // disagreement positions once, then everything is window arithmetic
        std::vector<std::int64_t> diffs;
        for (std::int64_t c = 0; c < horizon; ++c)
            if (xs[static_cast<std::size_t>(c)] != ys[static_cast<std::size_t>(c)])
                diffs.push_back(c);

        // next[i] = first disagreement at or after i (horizon when none)
        std::vector<std::int64_t> next(static_cast<std::size_t>(horizon) + 1);
        next[static_cast<std::size_t>(horizon)] = horizon;
        {
            std::size_t di = diffs.size();
            std::int64_t upcoming = horizon;
            for (std::int64_t c = horizon - 1; c >= 0; --c) {
                if (di > 0 && diffs[di - 1] == c) {
                    upcoming = c;
                    --di;
                }
                next[static_cast<std::size_t>(c)] = upcoming;
            }
        }

        verdict.pass = true;
        for (int k = 1; k <= tree.levels; ++k) {
            const Window& w = tree.schedule.window(static_cast<std::size_t>(2 * k));
            ClosenessCheck check;
            check.level = 2 * k;
            check.checkpoint = w.b;
            for (std::int64_t c = 0; c < w.b; ++c)
                if (next[static_cast<std::size_t>(c)] - c > d) ++check.count;
            check.bound = std::max<std::int64_t>(w.b - w.a - d, 0);
            check.f = static_cast<double>(check.count) / static_cast<double>(w.b);
            check.pass = check.count >= check.bound;
            if (!check.pass) verdict.pass = false;
            verdict.closeness.push_back(check);
        }

        for (int k = first_diff + 1; k <= tree.levels; ++k) {
            const Window& w = tree.schedule.window(static_cast<std::size_t>(2 * k + 1));
            SeparationCheck check;
            check.level = 2 * k + 1;
            check.window = w;
            auto lo = std::lower_bound(diffs.begin(), diffs.end(), w.a);
            auto hi = std::lower_bound(diffs.begin(), diffs.end(), w.b);
            check.diff_count = hi - lo;
            check.bound = ceil_int(3.0 * tree.delta * static_cast<double>(w.length()));
            for (auto it = lo; it != hi; ++it) {
                Symbol sx = xs[static_cast<std::size_t>(*it)];
                Symbol sy = ys[static_cast<std::size_t>(*it)];
                if (!p0_table[sx] && !p0_table[sy]) ++check.clean_count;
            }
            if (!p0.empty()) {
                for (std::int64_t c = w.a; c < w.b; ++c) {
                    if (p0_table[xs[static_cast<std::size_t>(c)]]) ++check.p0_visits;
                    if (p0_table[ys[static_cast<std::size_t>(c)]]) ++check.p0_visits;
                }
            }
            std::int64_t diffs_before_b = hi - diffs.begin();
            check.f_at_t0 = static_cast<double>(w.b - diffs_before_b) / static_cast<double>(w.b);
            // with a separating class, only coordinates outside it certify
            // the t0 gap; the class visits bound the loss
            std::int64_t required =
                p0.empty() ? check.bound : std::max<std::int64_t>(check.bound - check.p0_visits, 0);
            std::int64_t certified = p0.empty() ? check.diff_count : check.clean_count;
            check.pass = certified >= required && check.diff_count >= check.bound;
            if (!check.pass) verdict.pass = false;
            verdict.separation.push_back(check);
        }
        report.pairs[pair_index] = std::move(verdict);
    });

    report.delta_achieved = 1.0;
    for (const auto& pair : report.pairs) {
        if (!pair.pass) ++report.pair_failures;
        for (const auto& sep : pair.separation)
            report.delta_achieved =
                std::min(report.delta_achieved, static_cast<double>(sep.diff_count) /
                                                    static_cast<double>(sep.window.b));
    }
    report.all_pass = report.pair_failures == 0 && report.audit.ok;
    return report;
}

}  // namespace scrambler
