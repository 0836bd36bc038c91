#ifndef SCRAMBLER_CHAOS_HPP
#define SCRAMBLER_CHAOS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scrambler/builder.hpp"
#include "scrambler/shift.hpp"

namespace scrambler {

// Orbit-distance samples d_0..d_{N-1} bounded by the space diameter.
struct DistanceSeries {
    std::vector<double> values;
    double diameter = 1.0;
};

DistanceSeries make_series(std::vector<double> values, std::optional<double> diameter = {});

// F_n(t) = (1/n) #{i < n : d_i < t} (strict), at the requested horizons.
struct ProximityProfile {
    double t = 0.0;
    std::vector<std::pair<std::int64_t, double>> values;  // (n, F_n(t))
};

ProximityProfile profile(const DistanceSeries& d, double t,
                         const std::vector<std::int64_t>& checkpoints);

// (n, (1/n) sum_{i<n} d_i)
std::vector<std::pair<std::int64_t, double>> ergodic_average(
    const DistanceSeries& d, const std::vector<std::int64_t>& checkpoints);

// (max_n F_n(t), min_n F_n(t0)) over the checkpoint set: finite-horizon
// surrogates for the upper/lower densities.
std::pair<double, double> density_bracket(const DistanceSeries& d, double t, double t0,
                                          const std::vector<std::int64_t>& checkpoints);

struct DC2Verdict {
    std::vector<double> t_grid;
    std::map<double, double> sup_estimates;  // t -> max_n F_n(t)
    double inf_estimate_at_t0 = 1.0;
    double t0 = 1.0;
    double gap = 0.0;
    bool consistent = false;  // sup >= 1-eta for every t, and inf <= 1-gap
};

DC2Verdict dc2_verdict(const DistanceSeries& d, const std::vector<double>& t_grid, double t0,
                       double gap, double eta, const std::vector<std::int64_t>& checkpoints);

// d_i = sequence_distance at coordinate i, i < n; diameter 1.
DistanceSeries symbolic_distance_series(const SymbolicPoint& x, const SymbolicPoint& y,
                                        std::int64_t n, int depth_cap = 64);

struct BridgingViolation {
    std::int64_t n = 0;
    double t = 0.0;
};

// Checks avg_n <= t*F_n(t) + D*(1-F_n(t)) and avg_n >= t*(1-F_n(t)) for every
// (n, t); both hold identically on any valid series.
std::vector<BridgingViolation> bridging_violations(const DistanceSeries& d,
                                                   const std::vector<double>& ts,
                                                   const std::vector<std::int64_t>& checkpoints);

// d_i = |u_i - v_i| from two single-column files ('#' lines skipped);
// diameter defaults to the observed maximum.
DistanceSeries ingest_trajectories(const std::string& path_a, const std::string& path_b,
                                   std::optional<double> diameter = {});

struct ClosenessCheck {
    int level = 0;               // even window 2k
    std::int64_t checkpoint = 0;  // b_{2k}
    std::int64_t count = 0;       // #{i < b : d_i < t}, exact
    std::int64_t bound = 0;       // b_{2k} - a_{2k} - d
    double f = 0.0;
    bool pass = false;
};

struct SeparationCheck {
    int level = 0;  // odd window 2k+1
    Window window;
    std::int64_t diff_count = 0;   // coordinates with d_n = 1 in the window
    std::int64_t bound = 0;        // ceil(3*delta*n)
    std::int64_t clean_count = 0;  // both symbols outside the separating class
    std::int64_t p0_visits = 0;    // combined class visits of the two points
    double f_at_t0 = 0.0;          // F_{b}(t0 = 1)
    bool pass = false;
};

struct PairVerdict {
    std::string first, second;
    int first_diff = 0;  // 0-based position where the keys first differ
    std::vector<ClosenessCheck> closeness;
    std::vector<SeparationCheck> separation;
    bool pass = false;
};

struct TreeVerification {
    double t = 0.0;
    double t0 = 1.0;
    double eta = 0.01;
    int close_depth = 0;  // agreement run length backing F(t)
    std::vector<PairVerdict> pairs;
    TreeAudit audit;
    double delta_achieved = 0.0;   // min over pairs/levels of diff_count / b
    double delta_guarantee = 0.0;  // 3*delta*(1 - 1/r_min)
    std::size_t pair_failures = 0;
    bool vacuous = false;
    bool all_pass = false;
};

// Every unordered leaf pair: exact closeness counts at even checkpoints,
// exact separation counts in odd windows from the first key disagreement on,
// plus the structural audit and the uniform (t0, delta_achieved) summary.
TreeVerification verify_tree(const ScrambledTree& tree, double t, double eta,
                             const std::set<Symbol>& p0 = {});

}  // namespace scrambler

#endif
