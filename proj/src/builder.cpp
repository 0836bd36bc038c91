#include "scrambler/builder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "scrambler/rng.hpp"

namespace scrambler {

IntervalSchedule::IntervalSchedule(std::vector<Window> windows) : windows_(std::move(windows)) {
    if (windows_.empty()) throw DomainError("schedule needs at least one window");
    if (windows_.front().a != 0) throw DomainError("schedule must start at coordinate 0");
    for (std::size_t i = 0; i < windows_.size(); ++i) {
        if (windows_[i].b <= windows_[i].a) throw DomainError("schedule windows must be nonempty");
        if (i > 0 && windows_[i].a != windows_[i - 1].b)
            throw DomainError("schedule windows must be contiguous");
    }
    // ratios b_k/a_k strictly increasing from the second window on; compare
    // with cross products to stay exact
    for (std::size_t i = 2; i < windows_.size(); ++i) {
        const Window& prev = windows_[i - 1];
        const Window& cur = windows_[i];
        if (cur.b * prev.a <= prev.b * cur.a)
            throw DomainError("schedule ratios must strictly increase");
    }
}

const Window& IntervalSchedule::window(std::size_t k) const {
    if (k < 1 || k > windows_.size()) throw DomainError("schedule window index out of range");
    return windows_[k - 1];
}

double IntervalSchedule::min_odd_ratio() const {
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t k = 3; k <= windows_.size(); k += 2) {
        const Window& w = window(k);
        r = std::min(r, static_cast<double>(w.b) / static_cast<double>(w.a));
    }
    return r;
}

IntervalSchedule make_schedule(std::int64_t n1, std::int64_t rho0, int levels,
                               std::int64_t horizon_cap) {
    if (n1 < 8) throw DomainError("schedule needs n1 >= 8");
    if (rho0 < 2) throw DomainError("schedule needs rho0 >= 2");
    if (levels < 0) throw DomainError("schedule needs levels >= 0");
    std::vector<Window> windows;
    windows.push_back({0, n1});
    for (int k = 2; k <= 2 * levels + 1; ++k) {
        std::int64_t a = windows.back().b;
        std::int64_t ratio = rho0 + k;
        if (a > horizon_cap / ratio)
            throw ScheduleOverflow("schedule horizon would exceed cap at window " +
                                   std::to_string(k));
        windows.push_back({a, ratio * a});
    }
    return IntervalSchedule(std::move(windows));
}

std::size_t hamming_count(const Block& a, const Block& b, std::size_t stop_at) {
    if (a.size() != b.size()) throw LengthMismatchError("blocks must have equal length");
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i] && ++count >= stop_at) return stop_at;
    }
    return count;
}

double hamming_distance(const Block& a, const Block& b) {
    if (a.size() != b.size()) throw LengthMismatchError("blocks must have equal length");
    if (a.empty()) return 0.0;
    std::size_t count = hamming_count(a, b, a.size() + 1);
    return static_cast<double>(count) / static_cast<double>(a.size());
}

std::int64_t separation_threshold(double delta, std::int64_t n) {
    // fp-careful ceil: 3*delta*n that lands on an integer must not round up
    std::int64_t t = static_cast<std::int64_t>(std::ceil(3.0 * delta * static_cast<double>(n) - 1e-9));
    return std::max<std::int64_t>(t, 1);
}

std::uint64_t ball_size_exact(std::int64_t n, std::int64_t radius, int alphabet_size) {
    if (alphabet_size < 2) throw DomainError("alphabet size must be >= 2");
    if (radius < 0 || radius > n) throw DomainError("ball radius must satisfy 0 <= r <= n");
    std::uint64_t total = 0;
    std::uint64_t term = 1;  // C(n,0) * (l-1)^0
    if (__builtin_add_overflow(total, term, &total)) throw ArithmeticOverflow("ball size overflow");
    for (std::int64_t i = 1; i <= radius; ++i) {
        // term_i = term_{i-1} * (n-i+1)/i * (l-1); multiply before dividing to
        // stay integral, with overflow checks
        std::uint64_t numerator;
        if (__builtin_mul_overflow(term, static_cast<std::uint64_t>(n - i + 1), &numerator))
            throw ArithmeticOverflow("ball size overflow");
        term = numerator / static_cast<std::uint64_t>(i);
        if (__builtin_mul_overflow(term, static_cast<std::uint64_t>(alphabet_size - 1), &term))
            throw ArithmeticOverflow("ball size overflow");
        if (__builtin_add_overflow(total, term, &total))
            throw ArithmeticOverflow("ball size overflow");
    }
    return total;
}

std::vector<Block> good_candidates(const ShiftMeasure& m, std::int64_t n, double epsilon,
                                   std::size_t pool, std::mt19937_64& rng) {
    if (n < 1) throw DomainError("good_candidates needs n >= 1");
    MassWindow w = good_window(static_cast<double>(n), entropy_rate(m), epsilon);
    std::vector<Block> out;
    if (enumerable(m.alphabet_size(), n)) {
        enumerate_cylinders(m, static_cast<int>(n), [&](const Block& b, double cyl) {
            if (cyl > 0.0 && w.contains_log2(std::log2(cyl))) out.push_back(b);
        });
    } else {
        std::set<Block> seen;
        for (std::size_t i = 0; i < pool; ++i) {
            Block b = sample_block(m, n, rng);
            if (!w.contains_log2(log2_cylinder_measure(m, b))) continue;
            if (seen.insert(b).second) out.push_back(std::move(b));
        }
    }
    if (out.empty())
        throw EmptyCandidateSet("no block of length " + std::to_string(n) +
                                " has cylinder measure in the good window");
    return out;
}

namespace {

// Bit-packed mirror of a binary candidate list; XOR + popcount makes the
// elimination scans cheap at the long windows.
struct PackedBlocks {
    std::size_t words_per_block = 0;
    std::vector<std::uint64_t> words;

    void pack(const std::vector<Block>& blocks, std::size_t n) {
        words_per_block = (n + 63) / 64;
        words.assign(blocks.size() * words_per_block, 0);
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            std::uint64_t* dst = words.data() + i * words_per_block;
            const Block& b = blocks[i];
            for (std::size_t j = 0; j < n; ++j)
                if (b[j]) dst[j >> 6] |= (std::uint64_t(1) << (j & 63));
        }
    }

    // disagreement count between stored block i and `other`, early exit at stop_at
    std::size_t count(std::size_t i, const std::uint64_t* other, std::size_t stop_at) const {
        const std::uint64_t* mine = words.data() + i * words_per_block;
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_per_block; ++w) {
            c += static_cast<std::size_t>(std::popcount(mine[w] ^ other[w]));
            if (c >= stop_at) return stop_at;
        }
        return c;
    }
};

}  // namespace

GreedyResult greedy_two_children(const std::vector<Family>& families, double delta,
                                 std::size_t n, int alphabet_size) {
    if (families.empty()) throw DomainError("greedy sweep needs at least one family");
    if (!(delta >= 0.0)) throw DomainError("greedy sweep needs delta >= 0");
    for (const auto& fam : families)
        for (const auto& c : fam.candidates)
            if (c.size() != n) throw LengthMismatchError("candidate length differs from window");

    const std::size_t threshold =
        static_cast<std::size_t>(separation_threshold(delta, static_cast<std::int64_t>(n)));
    const bool packed = alphabet_size == 2;

    std::vector<PackedBlocks> packs(families.size());
    std::vector<std::vector<char>> alive(families.size());
    for (std::size_t f = 0; f < families.size(); ++f) {
        alive[f].assign(families[f].candidates.size(), 1);
        if (packed) packs[f].pack(families[f].candidates, n);
    }

    GreedyResult result;
    result.eliminated.assign(families.size(), 0);

    std::vector<std::uint64_t> chosen_words((n + 63) / 64, 0);

    auto eliminate_ball = [&](const Block& center) {
        const std::uint64_t* center_words = nullptr;
        if (packed) {
            std::fill(chosen_words.begin(), chosen_words.end(), 0);
            for (std::size_t j = 0; j < n; ++j)
                if (center[j]) chosen_words[j >> 6] |= (std::uint64_t(1) << (j & 63));
            center_words = chosen_words.data();
        }
        for (std::size_t f = 0; f < families.size(); ++f) {
            const auto& cands = families[f].candidates;
            for (std::size_t i = 0; i < cands.size(); ++i) {
                if (!alive[f][i]) continue;
                std::size_t c = packed ? packs[f].count(i, center_words, threshold)
                                       : hamming_count(cands[i], center, threshold);
                if (c < threshold) {
                    alive[f][i] = 0;
                    ++result.eliminated[f];
                }
            }
        }
    };

    auto pick_first_alive = [&](std::size_t f) -> const Block& {
        const auto& cands = families[f].candidates;
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (alive[f][i]) return cands[i];
        throw FamilyExhausted(families[f].parent);
    };

    for (std::size_t f = 0; f < families.size(); ++f) {
        Block first = pick_first_alive(f);
        eliminate_ball(first);
        Block second = pick_first_alive(f);
        eliminate_ball(second);
        result.children.emplace_back(families[f].parent,
                                     std::make_pair(std::move(first), std::move(second)));
    }
    return result;
}

namespace {

std::size_t auto_pool(int level) {
    return std::max<std::size_t>(64, std::size_t(8) << std::min(level, 20));
}

}  // namespace

FeasibilityReport check_feasibility(const BuildConfig& config) {
    FeasibilityReport report;
    ShiftMeasure measure = parse_measure(config.measure_spec);
    const int l = measure.alphabet_size();
    report.h = entropy_rate(measure);
    report.h_prime = config.h_prime;

    if (3.0 * config.delta > 0.5) {
        report.ok = false;
        report.violation = "3*delta = " + std::to_string(3.0 * config.delta) +
                           " > 1/2: separation radius leaves no ball-bound regime";
        return report;
    }
    report.beta = beta_constant(config.delta, l);
    if (!(report.beta < config.h_prime && config.h_prime < report.h)) {
        report.ok = false;
        std::ostringstream os;
        os << "need beta(delta) < h' < h, got beta = " << report.beta << ", h' = "
           << config.h_prime << ", h = " << report.h;
        report.violation = os.str();
        return report;
    }
    if (!(config.epsilon > 0.0)) {
        report.ok = false;
        report.violation = "epsilon must be positive";
        return report;
    }

    IntervalSchedule schedule = make_schedule(config.n1, config.rho0, config.levels);
    report.ok = true;
    for (int k = 1; k <= config.levels; ++k) {
        LevelBudget budget;
        budget.level = k;
        budget.window_len = schedule.length(static_cast<std::size_t>(2 * k + 1));
        const double picks_log2 = static_cast<double>(k);  // 2^k picks at level k
        budget.log2_cap =
            picks_log2 + log2_ball_size_bound(budget.window_len, 3.0 * config.delta, l);
        budget.enumerated = enumerable(l, budget.window_len);
        if (budget.enumerated) {
            // count the good blocks exactly
            MassWindow w = good_window(static_cast<double>(budget.window_len),
                                       report.h, config.epsilon);
            std::size_t count = 0;
            enumerate_cylinders(measure, static_cast<int>(budget.window_len),
                                [&](const Block&, double cyl) {
                                    if (cyl > 0.0 && w.contains_log2(std::log2(cyl))) ++count;
                                });
            budget.log2_candidates = count > 0 ? std::log2(static_cast<double>(count))
                                               : -std::numeric_limits<double>::infinity();
        } else {
            budget.pool = config.sample_pool ? config.sample_pool : auto_pool(k);
            budget.log2_candidates = static_cast<double>(budget.window_len) * config.h_prime;
        }
        budget.ok = budget.log2_candidates > budget.log2_cap;
        if (!budget.ok && report.ok) {
            report.ok = false;
            std::ostringstream os;
            os << "level " << k << ": log2(candidates) = " << budget.log2_candidates
               << " must exceed log2(elimination cap) = " << budget.log2_cap;
            report.violation = os.str();
        }
        report.levels.push_back(budget);
    }
    return report;
}

ScrambledTree build_tree(const BuildConfig& config) {
    FeasibilityReport feasibility = check_feasibility(config);
    if (!feasibility.ok) throw InfeasibleParameters(feasibility.violation);

    ScrambledTree tree;
    tree.measure = parse_measure(config.measure_spec);
    tree.measure_spec = config.measure_spec;
    tree.alphabet_size = tree.measure.alphabet_size();
    tree.delta = config.delta;
    tree.h_prime = config.h_prime;
    tree.epsilon = config.epsilon;
    tree.seed = config.seed;
    tree.schedule = make_schedule(config.n1, config.rho0, config.levels);
    tree.levels = config.levels;

    const int l = tree.alphabet_size;

    // shared content for the even windows, resampled until the block is good
    for (int k = 1; k <= config.levels; ++k) {
        const Window& w = tree.schedule.window(static_cast<std::size_t>(2 * k));
        MassWindow window = good_window(static_cast<double>(w.length()),
                                        entropy_rate(tree.measure), config.epsilon);
        auto rng = seeded_stream(config.seed, stream_tag::even_window,
                                 static_cast<std::uint64_t>(2 * k));
        bool found = false;
        for (int attempt = 0; attempt < 4096 && !found; ++attempt) {
            Block b = sample_block(tree.measure, w.length(), rng);
            if (window.contains_log2(log2_cylinder_measure(tree.measure, b))) {
                tree.even_content[2 * k] = std::move(b);
                found = true;
            }
        }
        if (!found)
            throw EmptyCandidateSet("no good shared block found for window " +
                                    std::to_string(2 * k));
    }

    // root: first good block of window 1 (lexicographic when enumerable)
    {
        const Window& w1 = tree.schedule.window(1);
        auto rng = seeded_stream(config.seed, stream_tag::candidates, 0);
        std::size_t pool = config.sample_pool ? config.sample_pool : auto_pool(0);
        std::vector<Block> roots =
            good_candidates(tree.measure, w1.length(), config.epsilon, pool, rng);
        tree.nodes[""] = roots.front();
    }

    // level k: extend every length-(k-1) key with two children
    std::vector<std::string> parents{""};
    for (int k = 1; k <= config.levels; ++k) {
        const Window& w = tree.schedule.window(static_cast<std::size_t>(2 * k + 1));
        const std::int64_t n = w.length();
        std::size_t pool = config.sample_pool ? config.sample_pool : auto_pool(k);
        std::vector<Family> families;
        families.reserve(parents.size());
        for (std::size_t p = 0; p < parents.size(); ++p) {
            auto rng = seeded_stream(config.seed, stream_tag::candidates,
                                     (static_cast<std::uint64_t>(k) << 32) |
                                         static_cast<std::uint64_t>(p + 1));
            families.push_back(
                Family{parents[p], good_candidates(tree.measure, n, config.epsilon, pool, rng)});
        }
        GreedyResult picks = greedy_two_children(families, config.delta,
                                                 static_cast<std::size_t>(n), l);
        std::vector<std::string> next;
        next.reserve(parents.size() * 2);
        for (auto& [parent, pair] : picks.children) {
            tree.nodes[parent + "0"] = std::move(pair.first);
            tree.nodes[parent + "1"] = std::move(pair.second);
            next.push_back(parent + "0");
            next.push_back(parent + "1");
        }
        parents = std::move(next);
    }
    return tree;
}

std::vector<std::string> ScrambledTree::leaf_keys() const {
    std::vector<std::string> keys;
    for (const auto& [k, v] : nodes)
        if (static_cast<int>(k.size()) == levels) keys.push_back(k);
    return keys;
}

SymbolicPoint assemble_point(const ScrambledTree& tree, const std::string& kappa,
                             std::int64_t horizon) {
    if (static_cast<int>(kappa.size()) != tree.levels)
        throw LookupError("kappa '" + kappa + "' must have length " +
                          std::to_string(tree.levels));
    for (char c : kappa)
        if (c != '0' && c != '1') throw LookupError("kappa must be a binary string");
    if (horizon < 1 || horizon > tree.schedule.horizon())
        throw HorizonExceeded("requested horizon " + std::to_string(horizon) +
                              " exceeds schedule horizon " +
                              std::to_string(tree.schedule.horizon()));

    std::vector<Symbol> symbols(static_cast<std::size_t>(horizon));
    auto place = [&](const Window& w, const Block& b) {
        for (std::int64_t i = w.a; i < std::min(w.b, horizon); ++i)
            symbols[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(i - w.a)];
    };
    place(tree.schedule.window(1), tree.nodes.at(""));
    for (int k = 1; k <= tree.levels; ++k) {
        auto even_it = tree.even_content.find(2 * k);
        if (even_it == tree.even_content.end())
            throw LookupError("tree lacks shared content for window " + std::to_string(2 * k));
        place(tree.schedule.window(static_cast<std::size_t>(2 * k)), even_it->second);
        auto node_it = tree.nodes.find(kappa.substr(0, static_cast<std::size_t>(k)));
        if (node_it == tree.nodes.end())
            throw LookupError("tree lacks node '" + kappa.substr(0, static_cast<std::size_t>(k)) +
                              "'");
        place(tree.schedule.window(static_cast<std::size_t>(2 * k + 1)), node_it->second);
    }
    return SymbolicPoint(std::move(symbols));
}

TreeAudit audit_tree(const ScrambledTree& tree) {
    TreeAudit audit;
    const double h = entropy_rate(tree.measure);

    auto check_good = [&](const std::string& what, const Window& w, const Block& b) {
        if (static_cast<std::int64_t>(b.size()) != w.length()) {
            audit.violations.push_back(what + ": block length " + std::to_string(b.size()) +
                                       " differs from window length " +
                                       std::to_string(w.length()));
            return;
        }
        MassWindow window =
            good_window(static_cast<double>(w.length()), h, tree.epsilon);
        if (!window.contains_log2(log2_cylinder_measure(tree.measure, b)))
            audit.violations.push_back(what + ": cylinder measure outside the good window");
    };

    check_good("root", tree.schedule.window(1), tree.nodes.at(""));
    for (const auto& [window_index, block] : tree.even_content)
        check_good("shared window " + std::to_string(window_index),
                   tree.schedule.window(static_cast<std::size_t>(window_index)), block);

    for (int k = 1; k <= tree.levels; ++k) {
        const Window& w = tree.schedule.window(static_cast<std::size_t>(2 * k + 1));
        std::vector<const Block*> blocks;
        std::vector<std::string> keys;
        for (const auto& [key, block] : tree.nodes)
            if (static_cast<int>(key.size()) == k) {
                blocks.push_back(&block);
                keys.push_back(key);
                check_good("node " + key, w, block);
            }
        std::int64_t needed = separation_threshold(tree.delta, w.length());
        if (tree.delta == 0.0) needed = 1;  // only distinctness at delta = 0
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (std::size_t j = i + 1; j < blocks.size(); ++j) {
                std::size_t count =
                    hamming_count(*blocks[i], *blocks[j], blocks[i]->size() + 1);
                double dist =
                    static_cast<double>(count) / static_cast<double>(blocks[i]->size());
                audit.min_sibling_distance = std::min(audit.min_sibling_distance, dist);
                if (static_cast<std::int64_t>(count) < needed)
                    audit.violations.push_back("nodes " + keys[i] + "|" + keys[j] + " at level " +
                                               std::to_string(k) + ": distance " +
                                               std::to_string(dist) + " below separation bound");
            }
    }
    audit.ok = audit.violations.empty();
    return audit;
}

std::string encode_symbols(const Block& b, int alphabet_size) {
    std::string out;
    if (alphabet_size <= 10) {
        out.reserve(b.size());
        for (Symbol s : b) out.push_back(static_cast<char>('0' + s));
    } else {
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(static_cast<int>(b[i]));
        }
    }
    return out;
}

Block decode_symbols(const std::string& s, int alphabet_size) {
    Block b;
    if (alphabet_size <= 10) {
        b.reserve(s.size());
        for (char c : s) {
            if (c < '0' || c >= '0' + alphabet_size)
                throw ParseError(std::string("bad symbol character '") + c + "'");
            b.push_back(static_cast<Symbol>(c - '0'));
        }
    } else {
        if (s.empty()) return b;
        std::size_t start = 0;
        while (start <= s.size()) {
            std::size_t pos = s.find(',', start);
            std::string tok =
                pos == std::string::npos ? s.substr(start) : s.substr(start, pos - start);
            int v = std::stoi(tok);
            if (v < 0 || v >= alphabet_size) throw ParseError("symbol value out of range: " + tok);
            b.push_back(static_cast<Symbol>(v));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
    }
    return b;
}

std::string tree_to_json(const ScrambledTree& tree) {
    nlohmann::json j;
    j["alphabet_size"] = tree.alphabet_size;
    j["measure"] = tree.measure_spec;
    j["delta"] = tree.delta;
    j["h_prime"] = tree.h_prime;
    j["epsilon"] = tree.epsilon;
    j["seed"] = tree.seed;
    nlohmann::json sched = nlohmann::json::array();
    for (const Window& w : tree.schedule.windows()) sched.push_back({w.a, w.b});
    j["schedule"] = std::move(sched);
    j["levels"] = tree.levels;
    nlohmann::json even = nlohmann::json::object();
    for (const auto& [window_index, block] : tree.even_content)
        even[std::to_string(window_index)] = encode_symbols(block, tree.alphabet_size);
    j["even_content"] = std::move(even);
    nlohmann::json nodes = nlohmann::json::object();
    for (const auto& [key, block] : tree.nodes)
        nodes[key] = encode_symbols(block, tree.alphabet_size);
    j["nodes"] = std::move(nodes);
    return j.dump(2) + "\n";
}

ScrambledTree tree_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad tree JSON: ") + e.what());
    }
    try {
        ScrambledTree tree;
        tree.alphabet_size = j.at("alphabet_size").get<int>();
        tree.measure_spec = j.at("measure").get<std::string>();
        tree.measure = parse_measure(tree.measure_spec);
        if (tree.measure.alphabet_size() != tree.alphabet_size)
            throw ParseError("alphabet_size disagrees with the measure spec");
        tree.delta = j.at("delta").get<double>();
        tree.h_prime = j.at("h_prime").get<double>();
        tree.epsilon = j.at("epsilon").get<double>();
        tree.seed = j.at("seed").get<std::uint64_t>();
        std::vector<Window> windows;
        for (const auto& pair : j.at("schedule"))
            windows.push_back({pair.at(0).get<std::int64_t>(), pair.at(1).get<std::int64_t>()});
        tree.schedule = IntervalSchedule(std::move(windows));
        tree.levels = j.at("levels").get<int>();
        if (tree.schedule.window_count() != static_cast<std::size_t>(2 * tree.levels + 1))
            throw ParseError("schedule window count disagrees with levels");
        for (const auto& [key, value] : j.at("even_content").items()) {
            int window_index = std::stoi(key);
            Block b = decode_symbols(value.get<std::string>(), tree.alphabet_size);
            if (static_cast<std::int64_t>(b.size()) !=
                tree.schedule.length(static_cast<std::size_t>(window_index)))
                throw ParseError("shared block length disagrees with window " + key);
            tree.even_content[window_index] = std::move(b);
        }
        for (const auto& [key, value] : j.at("nodes").items()) {
            if (static_cast<int>(key.size()) > tree.levels)
                throw ParseError("node key '" + key + "' longer than tree depth");
            Block b = decode_symbols(value.get<std::string>(), tree.alphabet_size);
            std::size_t window_index = 2 * key.size() + 1;
            if (static_cast<std::int64_t>(b.size()) != tree.schedule.length(window_index))
                throw ParseError("node block length disagrees with its window: '" + key + "'");
            tree.nodes[key] = std::move(b);
        }
        // completeness: every binary key up to the depth, every even window
        for (int k = 0; k <= tree.levels; ++k) {
            std::size_t expected = std::size_t(1) << k;
            std::size_t found = 0;
            for (const auto& [key, block] : tree.nodes)
                if (static_cast<int>(key.size()) == k) ++found;
            if (found != expected)
                throw ParseError("tree is missing node keys at depth " + std::to_string(k));
        }
        for (int k = 1; k <= tree.levels; ++k)
            if (!tree.even_content.contains(2 * k))
                throw ParseError("tree is missing shared content for window " +
                                 std::to_string(2 * k));
        return tree;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad tree JSON: ") + e.what());
    }
}

void save_tree(const ScrambledTree& tree, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << tree_to_json(tree);
}

ScrambledTree load_tree(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return tree_from_json(buffer.str());
}

}  // namespace scrambler
