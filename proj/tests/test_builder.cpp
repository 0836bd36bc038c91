#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "scrambler/builder.hpp"
#include "scrambler/rng.hpp"

using namespace scrambler;

namespace {

// independent oracle: walk all l^n blocks and count those within raw
// distance r of the all-zeros block
std::uint64_t ball_brute_force(int n, int r, int l) {
    std::vector<int> block(static_cast<std::size_t>(n), 0);
    std::uint64_t count = 0;
    for (;;) {
        int nonzero = 0;
        for (int v : block)
            if (v != 0) ++nonzero;
        if (nonzero <= r) ++count;
        int pos = n - 1;
        while (pos >= 0 && ++block[static_cast<std::size_t>(pos)] == l)
            block[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) return count;
    }
}

BuildConfig small_config() {
    BuildConfig config;
    config.measure_spec = "bernoulli:0.5,0.5";
    config.delta = 0.05;
    config.h_prime = 0.9;
    config.epsilon = 0.1;
    config.n1 = 16;
    config.rho0 = 2;
    config.levels = 2;
    config.seed = 7;
    return config;
}

}  // namespace

TEST_CASE("make_schedule follows the growth recursion") {
    IntervalSchedule s = make_schedule(16, 2, 3);
    std::vector<std::int64_t> expected_b{16, 64, 320, 1920, 13440, 107520, 967680};
    REQUIRE(s.window_count() == 7);
    for (std::size_t k = 1; k <= 7; ++k) {
        CHECK(s.window(k).b == expected_b[k - 1]);
        if (k > 1) CHECK(s.window(k).a == s.window(k - 1).b);  // contiguity
    }

    IntervalSchedule minimal = make_schedule(8, 2, 1);
    REQUIRE(minimal.window_count() == 3);
    CHECK(minimal.window(2).b == 4 * minimal.window(2).a);
    CHECK(minimal.window(3).b == 5 * minimal.window(3).a);

    CHECK_THROWS_AS(make_schedule(16, 2, 12), ScheduleOverflow);
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(IntervalSchedule({{0, 8}, {9, 20}}), DomainError);   // gap
    CHECK_THROWS_AS(IntervalSchedule({{0, 8}, {8, 32}, {32, 64}}), DomainError);  // ratio drops
    CHECK_NOTHROW(IntervalSchedule({{0, 8}, {8, 32}, {32, 160}}));
}

TEST_CASE("hamming_distance") {
    CHECK(hamming_distance({0, 1, 0, 1}, {0, 1, 0, 1}) == doctest::Approx(0.0));
    CHECK(hamming_distance({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
    CHECK(hamming_distance({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(hamming_distance({0, 1}, {0, 1, 0}), LengthMismatchError);
}

TEST_CASE("ball_size_exact") {
    CHECK(ball_size_exact(4, 0, 2) == 1);
    CHECK(ball_size_exact(8, 2, 2) == 37);
    CHECK(ball_size_exact(8, 2, 3) == 129);
    CHECK(ball_size_exact(8, 2, 2) == ball_brute_force(8, 2, 2));
    CHECK(ball_size_exact(8, 2, 3) == ball_brute_force(8, 2, 3));
    CHECK_THROWS_AS(ball_size_exact(8, 9, 2), DomainError);
    CHECK_THROWS_AS(ball_size_exact(500, 250, 30), ArithmeticOverflow);
}

TEST_CASE("good_candidates enumerated") {
    ShiftMeasure uniform = ShiftMeasure::bernoulli(ProbVector::uniform(2));
    auto rng = seeded_stream(1, stream_tag::generic, 0);
    auto all = good_candidates(uniform, 10, 0.2, 0, rng);
    CHECK(all.size() == 1024);  // every block is good under the uniform measure
    // lexicographic order
    CHECK(all.front() == Block(10, 0));
    CHECK(all.back() == Block(10, 1));

    ShiftMeasure b = parse_measure("bernoulli:0.3,0.7");
    auto ten = good_candidates(b, 4, 0.3, 0, rng);
    CHECK(ten.size() == 10);  // exactly the one- and two-zero blocks
    for (const Block& blk : ten) {
        int zeros = 0;
        for (Symbol s : blk)
            if (s == 0) ++zeros;
        CHECK(zeros >= 1);
        CHECK(zeros <= 2);
    }

    // no block fits a sliver window around a mass no block attains
    CHECK_THROWS_AS(good_candidates(b, 1, 0.01, 0, rng), EmptyCandidateSet);
}

TEST_CASE("good_candidates sampled") {
    ShiftMeasure b = parse_measure("bernoulli:0.3,0.7");
    auto r1 = seeded_stream(9, stream_tag::generic, 1);
    auto r2 = seeded_stream(9, stream_tag::generic, 1);
    auto first = good_candidates(b, 64, 0.1, 4096, r1);
    auto second = good_candidates(b, 64, 0.1, 4096, r2);
    CHECK(!first.empty());
    CHECK(first == second);  // reproducible under the seed
    MassWindow w = good_window(64, entropy_rate(b), 0.1);
    for (const Block& blk : first)
        CHECK(w.contains_log2(log2_cylinder_measure(b, blk)));
}

TEST_CASE("greedy sweep: deterministic first picks") {
    ShiftMeasure uniform = ShiftMeasure::bernoulli(ProbVector::uniform(2));
    auto rng = seeded_stream(2, stream_tag::generic, 0);
    std::vector<Family> families{{"", good_candidates(uniform, 16, 0.2, 0, rng)}};
    GreedyResult result = greedy_two_children(families, 0.05, 16, 2);
    REQUIRE(result.children.size() == 1);
    const auto& [parent, pair] = result.children.front();
    // first pick is the lexicographically least block; the second is the
    // first block at raw distance >= ceil(3*0.05*16) = 3, i.e. ...00111
    CHECK(pair.first == Block(16, 0));
    Block expected_second(16, 0);
    expected_second[13] = expected_second[14] = expected_second[15] = 1;
    CHECK(pair.second == expected_second);
    CHECK(hamming_distance(pair.first, pair.second) >= 0.15);
}

TEST_CASE("greedy sweep at delta = 0 still separates duplicates") {
    std::vector<Block> candidates{{0, 0}, {0, 0}, {0, 1}, {0, 1}, {1, 1}};
    std::vector<Family> families{{"", candidates}};
    GreedyResult result = greedy_two_children(families, 0.0, 2, 2);
    const auto& pair = result.children.front().second;
    CHECK(pair.first != pair.second);
    CHECK(pair.first == Block{0, 0});
    CHECK(pair.second == Block{0, 1});
}

TEST_CASE("greedy sweep exhausts a packed family") {
    // all 8-blocks with at most two ones sit inside one radius-5 ball, so the
    // first pick wipes out both families
    std::vector<Block> packed;
    for (int v = 0; v < 256; ++v) {
        int ones = __builtin_popcount(static_cast<unsigned>(v));
        if (ones > 2) continue;
        Block b(8);
        for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = (v >> i) & 1;
        packed.push_back(std::move(b));
    }
    CHECK(packed.size() == 37);
    CHECK(packed.size() <= 4 * ball_size_exact(8, separation_threshold(0.2, 8), 2));
    std::vector<Family> families{{"A", packed}, {"B", packed}};
    CHECK_THROWS_AS(greedy_two_children(families, 0.2, 8, 2), FamilyExhausted);
    try {
        greedy_two_children(families, 0.2, 8, 2);
    } catch (const FamilyExhausted& e) {
        CHECK(e.parent == "A");
    }
}

TEST_CASE("greedy sweep respects the elimination budget") {
    ShiftMeasure uniform = ShiftMeasure::bernoulli(ProbVector::uniform(2));
    auto rng = seeded_stream(3, stream_tag::generic, 0);
    auto pool = good_candidates(uniform, 10, 0.2, 0, rng);
    std::vector<Family> families{{"00", pool}, {"01", pool}, {"10", pool}, {"11", pool}};
    double delta = 0.1;
    GreedyResult result = greedy_two_children(families, delta, 10, 2);
    std::uint64_t per_pick_cap = ball_size_exact(10, separation_threshold(delta, 10), 2);
    std::uint64_t budget = 2 * families.size() * per_pick_cap;  // picks * ball
    for (std::size_t f = 0; f < families.size(); ++f) CHECK(result.eliminated[f] <= budget);
    // every chosen block pairwise separated
    std::vector<Block> chosen;
    for (const auto& [parent, pair] : result.children) {
        chosen.push_back(pair.first);
        chosen.push_back(pair.second);
    }
    std::size_t needed = static_cast<std::size_t>(separation_threshold(delta, 10));
    for (std::size_t i = 0; i < chosen.size(); ++i)
        for (std::size_t j = i + 1; j < chosen.size(); ++j)
            CHECK(hamming_count(chosen[i], chosen[j], 11) >= needed);
}

TEST_CASE("build_tree produces a separated, deterministic tree") {
    ScrambledTree tree = build_tree(small_config());
    CHECK(tree.levels == 2);
    CHECK(tree.leaf_keys().size() == 4);
    CHECK(tree.nodes.size() == 1 + 2 + 4);
    CHECK(tree.even_content.size() == 2);

    TreeAudit audit = audit_tree(tree);
    CHECK(audit.ok);
    CHECK(audit.min_sibling_distance >= 0.15);

    ScrambledTree again = build_tree(small_config());
    CHECK(tree_to_json(tree) == tree_to_json(again));
}

TEST_CASE("build_tree with levels = 0 keeps just the root") {
    BuildConfig config = small_config();
    config.levels = 0;
    ScrambledTree tree = build_tree(config);
    CHECK(tree.nodes.size() == 1);
    CHECK(tree.even_content.empty());
    CHECK(tree.leaf_keys() == std::vector<std::string>{""});
    TreeAudit audit = audit_tree(tree);
    CHECK(audit.ok);
}

TEST_CASE("build_tree rejects infeasible parameters") {
    BuildConfig config = small_config();
    config.delta = 0.2;  // 3*delta beyond 1/2
    CHECK_THROWS_AS(build_tree(config), InfeasibleParameters);

    BuildConfig no_gap = small_config();
    no_gap.h_prime = 0.5;  // below beta(delta)
    CHECK_THROWS_AS(build_tree(no_gap), InfeasibleParameters);
}

TEST_CASE("assemble_point realizes the window structure") {
    ScrambledTree tree = build_tree(small_config());
    std::int64_t horizon = tree.schedule.horizon();

    SymbolicPoint a = assemble_point(tree, "00", horizon);
    SymbolicPoint b = assemble_point(tree, "00", horizon);
    CHECK(a.symbols() == b.symbols());

    SymbolicPoint c = assemble_point(tree, "10", horizon);
    // same root window and shared even windows
    for (std::int64_t i = 0; i < tree.schedule.window(1).b; ++i) CHECK(a.at(i) == c.at(i));
    for (int k = 1; k <= tree.levels; ++k) {
        const Window& w = tree.schedule.window(static_cast<std::size_t>(2 * k));
        for (std::int64_t i = w.a; i < w.b; ++i) {
            CHECK(a.at(i) == c.at(i));
        }
    }
    // separated on every odd window from the first key difference on
    for (int k = 1; k <= tree.levels; ++k) {
        const Window& w = tree.schedule.window(static_cast<std::size_t>(2 * k + 1));
        std::int64_t diffs = 0;
        for (std::int64_t i = w.a; i < w.b; ++i)
            if (a.at(i) != c.at(i)) ++diffs;
        CHECK(diffs >= separation_threshold(tree.delta, w.length()));
    }

    CHECK_THROWS_AS(assemble_point(tree, "0", horizon), LookupError);
    CHECK_THROWS_AS(assemble_point(tree, "02", horizon), LookupError);
    CHECK_THROWS_AS(assemble_point(tree, "00", horizon + 1), HorizonExceeded);
}

TEST_CASE("build_tree on a Markov measure") {
    BuildConfig config;
    config.measure_spec = "markov:0.9,0.1;0.5,0.5";
    config.delta = 0.02;
    config.h_prime = 0.45;  // beta(0.02) ~ 0.387 < 0.45 < h ~ 0.5575
    config.epsilon = 0.08;
    config.n1 = 16;
    config.rho0 = 2;
    config.levels = 1;
    config.seed = 5;
    ScrambledTree tree = build_tree(config);
    CHECK(tree.leaf_keys().size() == 2);
    CHECK(audit_tree(tree).ok);
    std::string path = "markov_tree_test.json";
    save_tree(tree, path);
    ScrambledTree loaded = load_tree(path);
    CHECK(tree_to_json(loaded) == tree_to_json(tree));
    std::remove(path.c_str());
}

TEST_CASE("tree JSON round-trip") {
    ScrambledTree tree = build_tree(small_config());
    std::string path = "roundtrip_tree_test.json";
    save_tree(tree, path);
    ScrambledTree loaded = load_tree(path);
    CHECK(tree_to_json(tree) == tree_to_json(loaded));
    CHECK(audit_tree(loaded).ok);
    std::remove(path.c_str());
}

TEST_CASE("symbol string codecs") {
    Block b{0, 1, 1, 0, 1};
    CHECK(encode_symbols(b, 2) == "01101");
    CHECK(decode_symbols("01101", 2) == b);
    CHECK_THROWS_AS(decode_symbols("012", 2), ParseError);

    Block wide{0, 11, 3};
    CHECK(encode_symbols(wide, 12) == "0,11,3");
    CHECK(decode_symbols("0,11,3", 12) == wide);
}
