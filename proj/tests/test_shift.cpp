#include <doctest.h>

#include <cmath>
#include <map>

#include "scrambler/rng.hpp"
#include "scrambler/shift.hpp"

using namespace scrambler;

namespace {

ShiftMeasure example_markov() {
    return ShiftMeasure::markov({{0.9, 0.1}, {0.5, 0.5}});
}

SymbolicPoint point_from_pattern(const std::string& pattern, std::int64_t horizon) {
    std::vector<Symbol> symbols(static_cast<std::size_t>(horizon));
    for (std::int64_t i = 0; i < horizon; ++i)
        symbols[static_cast<std::size_t>(i)] =
            static_cast<Symbol>(pattern[static_cast<std::size_t>(i) % pattern.size()] - '0');
    return SymbolicPoint(std::move(symbols));
}

}  // namespace

TEST_CASE("measure spec parsing") {
    ShiftMeasure b = parse_measure("bernoulli:0.3,0.7");
    CHECK(b.kind() == ShiftMeasure::Kind::bernoulli);
    CHECK(b.symbol_probs()[0] == doctest::Approx(0.3));

    // single-probability shorthand
    ShiftMeasure shorthand = parse_measure("bernoulli:0.3");
    CHECK(shorthand.symbol_probs()[1] == doctest::Approx(0.7));

    ShiftMeasure m = parse_measure("markov:0.9,0.1;0.5,0.5");
    CHECK(m.kind() == ShiftMeasure::Kind::markov);
    CHECK(m.symbol_probs()[0] == doctest::Approx(5.0 / 6.0).epsilon(1e-9));
    CHECK(m.symbol_probs()[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-9));

    CHECK_THROWS_AS(parse_measure("bernoulli:0.5,0.6"), ParseError);
    CHECK_THROWS_AS(parse_measure("weird:1,2"), ParseError);
    CHECK_THROWS_AS(parse_measure("bernoulli:0.5,abc"), ParseError);
}

TEST_CASE("cylinder_measure") {
    ShiftMeasure uniform = ShiftMeasure::bernoulli(ProbVector::uniform(2));
    CHECK(cylinder_measure(uniform, {0, 1, 1, 0, 1}) == doctest::Approx(std::exp2(-5)));

    ShiftMeasure b = parse_measure("bernoulli:0.3,0.7");
    CHECK(cylinder_measure(b, {0, 1, 1, 0}) == doctest::Approx(0.0441));

    CHECK(cylinder_measure(example_markov(), {0, 1}) == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
}

TEST_CASE("entropy_rate") {
    CHECK(entropy_rate(ShiftMeasure::bernoulli(ProbVector::uniform(2))) == doctest::Approx(1.0));
    CHECK(entropy_rate(parse_measure("bernoulli:0.3,0.7")) ==
          doctest::Approx(0.881291).epsilon(1e-6));
    CHECK(entropy_rate(example_markov()) == doctest::Approx(0.557496).epsilon(1e-6));
}

TEST_CASE("cylinder measures sum to one") {
    for (int n = 1; n <= 10; ++n) {
        double total_b = 0.0, total_m = 0.0;
        enumerate_cylinders(parse_measure("bernoulli:0.3,0.7"), n,
                            [&](const Block&, double mass) { total_b += mass; });
        enumerate_cylinders(example_markov(), n,
                            [&](const Block&, double mass) { total_m += mass; });
        CHECK(std::abs(total_b - 1.0) < 1e-9);
        CHECK(std::abs(total_m - 1.0) < 1e-9);
    }
}

TEST_CASE("sm_mass desk checks") {
    ShiftMeasure uniform = ShiftMeasure::bernoulli(ProbVector::uniform(2));
    SmResult u = sm_mass(uniform, 12, 0.1);
    CHECK(u.mass == doctest::Approx(1.0));
    CHECK(u.holds);

    SmResult small = sm_mass(parse_measure("bernoulli:0.3"), 4, 0.3);
    CHECK(small.mass == doctest::Approx(0.6762).epsilon(1e-6));
    CHECK(!small.holds);

    SmResult large = sm_mass(parse_measure("bernoulli:0.3"), 128, 0.1);
    CHECK(large.mass >= 0.9);
    CHECK(large.holds);
}

TEST_CASE("sm_mass: enumerated and multinomial routes agree") {
    ShiftMeasure b = parse_measure("bernoulli:0.3,0.7");
    for (int n = 1; n <= 16; ++n) {
        SmResult via_enum = sm_mass_enumerated(b, n, 0.25);
        SmResult via_multi = sm_mass_multinomial(b, n, 0.25);
        CHECK(std::abs(via_enum.mass - via_multi.mass) < 1e-9);
        CHECK(via_enum.holds == via_multi.holds);
    }
}

TEST_CASE("sm_mass cap") {
    CHECK_THROWS_AS(sm_mass(example_markov(), 40, 0.1), EnumerationCapExceeded);
    // Bernoulli sidesteps the cap through the multinomial route
    CHECK_NOTHROW(sm_mass(parse_measure("bernoulli:0.3"), 400, 0.1));
}

TEST_CASE("block entropy identities") {
    // Bernoulli: H of the n-block partition is exactly n*H(p)
    ShiftMeasure b = parse_measure("bernoulli:0.3,0.7");
    double h = entropy_rate(b);
    for (int n = 1; n <= 12; ++n)
        CHECK(std::abs(block_entropy(b, n) / n - h) < 1e-9);

    // Markov: H_n = H(pi) + (n-1) h, i.e. H_n/n = h + (H(pi) - h)/n
    for (const ShiftMeasure& chain :
         {example_markov(), ShiftMeasure::markov({{0.5, 0.5}, {0.2, 0.8}})}) {
        double hc = entropy_rate(chain);
        double hpi = shannon_entropy(chain.symbol_probs());
        for (int n = 1; n <= 12; ++n) {
            double expected = hc + (hpi - hc) / n;
            CHECK(std::abs(block_entropy(chain, n) / n - expected) < 1e-9);
        }
    }
}

TEST_CASE("sequence_distance") {
    SymbolicPoint x = point_from_pattern("0", 128);
    SymbolicPoint same = point_from_pattern("0", 128);
    CHECK(sequence_distance(x, same, 0) == 0.0);
    CHECK(sequence_distance(x, same, 30) == 0.0);

    SymbolicPoint differs_now = point_from_pattern("1", 128);
    CHECK(sequence_distance(x, differs_now, 5) == doctest::Approx(1.0));

    // x = 0000..., y = 0010...: first disagreement at coordinate 2
    std::vector<Symbol> ys(128, 0);
    ys[2] = 1;
    SymbolicPoint y{std::move(ys)};
    CHECK(sequence_distance(x, y, 0) == doctest::Approx(0.25));

    CHECK_THROWS_AS(sequence_distance(x, same, 100), HorizonExceeded);
}

TEST_CASE("sequence_distance shift bound") {
    auto rng = seeded_stream(31, stream_tag::generic, 0);
    ShiftMeasure uniform = ShiftMeasure::bernoulli(ProbVector::uniform(2));
    for (int trial = 0; trial < 50; ++trial) {
        SymbolicPoint x{sample_block(uniform, 256, rng)};
        SymbolicPoint y{sample_block(uniform, 256, rng)};
        for (std::int64_t at = 0; at + 65 < 256; ++at) {
            double d0 = sequence_distance(x, y, at);
            double d1 = sequence_distance(x, y, at + 1);
            if (d0 > 0.0)
                CHECK(d1 <= 2.0 * d0 + 1e-15);
            else
                CHECK(d1 <= std::exp2(-63));  // cap semantics: 0 means "below 2^-64"
        }
    }
}

TEST_CASE("visit_frequency") {
    SymbolicPoint x = point_from_pattern("01", 64);
    CHECK(visit_frequency(x, {}, 0, 10) == 0.0);
    CHECK(visit_frequency(x, {0, 1}, 0, 10) == doctest::Approx(1.0));
    CHECK(visit_frequency(x, {0}, 0, 10) == doctest::Approx(0.5));
    CHECK_THROWS_AS(visit_frequency(x, {0}, 0, 100), HorizonExceeded);
}

TEST_CASE("sample_block determinism and degenerate measures") {
    ShiftMeasure uniform = ShiftMeasure::bernoulli(ProbVector::uniform(2));
    auto r1 = seeded_stream(5, stream_tag::generic, 1);
    auto r2 = seeded_stream(5, stream_tag::generic, 1);
    CHECK(sample_block(uniform, 8, r1) == sample_block(uniform, 8, r2));

    ShiftMeasure degenerate = ShiftMeasure::bernoulli(ProbVector({1.0, 0.0}));
    auto r3 = seeded_stream(5, stream_tag::generic, 2);
    Block zeros = sample_block(degenerate, 32, r3);
    for (Symbol s : zeros) CHECK(s == 0);
}

TEST_CASE("sample_block matches the measure in the long run") {
    ShiftMeasure b = parse_measure("bernoulli:0.3,0.7");
    auto rng = seeded_stream(5, stream_tag::generic, 3);
    Block big = sample_block(b, 100000, rng);
    std::int64_t zeros = 0;
    for (Symbol s : big)
        if (s == 0) ++zeros;
    double freq = static_cast<double>(zeros) / 100000.0;
    CHECK(std::abs(freq - 0.3) < 0.01);
}

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(Alphabet(1), DomainError);
    CHECK_THROWS_AS(Alphabet(2, {0, 1}), DomainError);  // must be a proper subset
    Alphabet ok(3, {2});
    CHECK(ok.contains(2));
    CHECK(!ok.contains(3));
}
