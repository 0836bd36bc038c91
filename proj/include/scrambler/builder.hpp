#ifndef SCRAMBLER_BUILDER_HPP
#define SCRAMBLER_BUILDER_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scrambler/shift.hpp"

namespace scrambler {

struct Window {
    std::int64_t a = 0;
    std::int64_t b = 0;  // half-open [a, b)

    std::int64_t length() const { return b - a; }
    bool operator==(const Window&) const = default;
};

// Contiguous coordinate windows [a_1,b_1), [a_2,b_2), ... with a_1 = 0,
// a_{k+1} = b_k and strictly increasing ratios b_k/a_k for k >= 2.
class IntervalSchedule {
  public:
    explicit IntervalSchedule(std::vector<Window> windows);

    std::size_t window_count() const { return windows_.size(); }
    // 1-based, matching the alternating closeness/separation numbering.
    const Window& window(std::size_t k) const;
    std::int64_t length(std::size_t k) const { return window(k).length(); }
    std::int64_t horizon() const { return windows_.back().b; }
    int levels() const { return static_cast<int>((windows_.size() - 1) / 2); }
    // min over separation windows 3,5,... of b/a
    double min_odd_ratio() const;
    const std::vector<Window>& windows() const { return windows_; }

    bool operator==(const IntervalSchedule&) const = default;

  private:
    std::vector<Window> windows_;
};

// b_1 = n1, then b_k = (rho0 + k) * a_k, giving ratios rho0 + k. Throws
// ScheduleOverflow when the horizon would exceed the cap.
IntervalSchedule make_schedule(std::int64_t n1, std::int64_t rho0, int levels,
                               std::int64_t horizon_cap = std::int64_t(1) << 31);

// Normalized Hamming distance: disagreement count / length.
double hamming_distance(const Block& a, const Block& b);
// Disagreement count, stopping early once `stop_at` is reached (returns
// stop_at in that case).
std::size_t hamming_count(const Block& a, const Block& b, std::size_t stop_at);

// Elimination threshold: blocks with disagreement count < this are "inside"
// the radius-3*delta ball. At least 1 so exact duplicates always fall inside.
std::int64_t separation_threshold(double delta, std::int64_t n);

// sum_{i=0}^{r} C(n,i) (l-1)^i, checked 64-bit arithmetic.
std::uint64_t ball_size_exact(std::int64_t n, std::int64_t radius, int alphabet_size);

// All (enumerable case) or up to `pool` sampled-and-deduplicated blocks whose
// cylinder measure lies in the open window for (n, entropy rate, epsilon).
// Enumeration yields lexicographic order; sampling keeps first-seen order.
std::vector<Block> good_candidates(const ShiftMeasure& m, std::int64_t n, double epsilon,
                                   std::size_t pool, std::mt19937_64& rng);

struct Family {
    std::string parent;
    std::vector<Block> candidates;
};

struct GreedyResult {
    // (parent, (first child, second child)) in sweep order
    std::vector<std::pair<std::string, std::pair<Block, Block>>> children;
    // cumulative eliminated candidates per family, same order as input
    std::vector<std::size_t> eliminated;
};

// The two-children sweep: for each family in order, take the first
// non-eliminated candidate, erase its radius-3*delta Hamming ball from every
// family, take the next, erase again. All chosen blocks end up pairwise at
// normalized distance >= 3*delta.
GreedyResult greedy_two_children(const std::vector<Family>& families, double delta,
                                 std::size_t n, int alphabet_size);

struct ScrambledTree {
    int alphabet_size = 2;
    std::string measure_spec;
    ShiftMeasure measure = ShiftMeasure::bernoulli(ProbVector::uniform(2));
    double delta = 0.0;
    double h_prime = 0.0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    IntervalSchedule schedule{{Window{0, 1}}};
    int levels = 0;
    std::map<int, Block> even_content;          // window index (2,4,...) -> shared block
    std::map<std::string, Block> nodes;         // "" root, then all binary keys up to length K

    std::vector<std::string> leaf_keys() const;
};

struct BuildConfig {
    std::string measure_spec;
    double delta = 0.05;
    double h_prime = 0.9;
    double epsilon = 0.1;
    std::int64_t n1 = 16;
    std::int64_t rho0 = 2;
    int levels = 3;
    std::uint64_t seed = 0;
    std::size_t sample_pool = 0;  // 0 = auto per level
};

struct LevelBudget {
    int level = 0;
    std::int64_t window_len = 0;
    bool enumerated = false;
    std::size_t pool = 0;              // sampled mode
    double log2_candidates = 0.0;      // exact count (enumerated) or n*h' (sampled)
    double log2_cap = 0.0;             // log2(picks * ball bound)
    bool ok = false;
};

struct FeasibilityReport {
    double beta = 0.0;
    double h = 0.0;
    double h_prime = 0.0;
    std::vector<LevelBudget> levels;
    bool ok = false;
    std::string violation;  // human-readable inequality when !ok
};

FeasibilityReport check_feasibility(const BuildConfig& config);

// The inductive construction: root from the first window's good candidates,
// shared content sampled once per even window, then two children per leaf via
// the greedy sweep at every odd window. Deterministic under the seed.
ScrambledTree build_tree(const BuildConfig& config);

// Coordinates in [0, horizon): window 1 carries the root block, even windows
// the shared content, odd window 2k+1 the node block of the length-k prefix.
SymbolicPoint assemble_point(const ScrambledTree& tree, const std::string& kappa,
                             std::int64_t horizon);

struct TreeAudit {
    double min_sibling_distance = 1.0;  // over all levels >= 1; 1.0 when no pairs
    std::vector<std::string> violations;
    bool ok = false;
};

// Exhaustive pairwise separation audit at every level plus the measure-window
// check on every stored block.
TreeAudit audit_tree(const ScrambledTree& tree);

std::string encode_symbols(const Block& b, int alphabet_size);
Block decode_symbols(const std::string& s, int alphabet_size);

std::string tree_to_json(const ScrambledTree& tree);
ScrambledTree tree_from_json(const std::string& text);
void save_tree(const ScrambledTree& tree, const std::string& path);
ScrambledTree load_tree(const std::string& path);

}  // namespace scrambler

#endif
