#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "scrambler/entropy.hpp"
#include "scrambler/errors.hpp"
#include "scrambler/rng.hpp"

using namespace scrambler;

namespace {

JointDistribution random_joint(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::vector<double> cells(rows * cols);
    double sum = 0.0;
    for (double& c : cells) {
        c = uniform01(rng);
        sum += c;
    }
    for (double& c : cells) c /= sum;
    return JointDistribution(rows, cols, std::move(cells));
}

}  // namespace

TEST_CASE("shannon_entropy") {
    CHECK(shannon_entropy(ProbVector({0.5, 0.5})) == doctest::Approx(1.0));
    CHECK(shannon_entropy(ProbVector({1.0})) == doctest::Approx(0.0));
    CHECK(shannon_entropy(ProbVector({0.25, 0.75})) == doctest::Approx(0.811278).epsilon(1e-6));
    // range: [0, log2 dim]
    CHECK(shannon_entropy(ProbVector::uniform(8)) == doctest::Approx(3.0));
}

TEST_CASE("conditional_entropy") {
    auto independent = JointDistribution::from_rows({{0.25, 0.25}, {0.25, 0.25}});
    CHECK(conditional_entropy(independent) == doctest::Approx(1.0));

    auto diagonal = JointDistribution::from_rows({{0.5, 0.0}, {0.0, 0.5}});
    CHECK(conditional_entropy(diagonal) == doctest::Approx(0.0));

    auto sym = JointDistribution::from_rows({{0.4, 0.1}, {0.1, 0.4}});
    CHECK(conditional_entropy(sym) == doctest::Approx(0.721928).epsilon(1e-6));
}

TEST_CASE("conditional entropy equals the fiber-weighted entropy") {
    auto rng = seeded_stream(21, stream_tag::generic, 0);
    for (int trial = 0; trial < 100; ++trial) {
        auto j = random_joint(rng, 3, 4);
        auto fibers = disintegrate(j);
        double weighted = 0.0;
        for (const Fiber& f : fibers)
            if (f.conditional) weighted += f.weight * shannon_entropy(*f.conditional);
        CHECK(std::abs(conditional_entropy(j) - weighted) < 1e-9);
    }
}

TEST_CASE("conditioning cannot raise entropy; equality at independence") {
    auto rng = seeded_stream(22, stream_tag::generic, 0);
    for (int trial = 0; trial < 200; ++trial) {
        auto j = random_joint(rng, 4, 4);
        auto [rows, cols] = marginals(j);
        double gap = shannon_entropy(rows) - conditional_entropy(j);
        CHECK(gap >= -1e-12);

        // Pinsker direction: a tiny gap forces fibers close to the marginal
        if (gap < 1e-6) {
            double weighted_ell1 = 0.0;
            for (const Fiber& f : disintegrate(j))
                if (f.conditional)
                    weighted_ell1 += f.weight * ell1_distance(*f.conditional, rows);
            CHECK(weighted_ell1 < 5e-3);
        }
    }
    // exact product: equality within 1e-9
    auto product = JointDistribution::from_rows(
        {{0.06, 0.14, 0.10}, {0.12, 0.28, 0.20}, {0.02, 0.0466666666667, 0.0333333333333}});
    auto [rows, cols] = marginals(product);
    CHECK(std::abs(shannon_entropy(rows) - conditional_entropy(product)) < 1e-9);
}

TEST_CASE("is_roughly_equal") {
    // uniform over 2^n entries, h = 1: every atom good
    RoughEqualParams uniform_params{0.5, 6, 1.0};
    auto report = is_roughly_equal(ProbVector::uniform(64), uniform_params);
    CHECK(report.holds);
    CHECK(report.good_mass == doctest::Approx(1.0));
    CHECK(report.good_indices.size() == 64);

    RoughEqualParams params{0.1, 1, 1.0};
    auto fair = is_roughly_equal(ProbVector({0.5, 0.5}), params);
    CHECK(fair.holds);
    CHECK(fair.good_mass == doctest::Approx(1.0));
    REQUIRE(fair.good_indices.size() == 2);

    auto skew = is_roughly_equal(ProbVector({0.9, 0.1}), params);
    CHECK(!skew.holds);
    CHECK(skew.good_mass == doctest::Approx(0.0));
    CHECK(skew.good_indices.empty());
}

TEST_CASE("rough equality is monotone in epsilon") {
    auto rng = seeded_stream(23, stream_tag::generic, 0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> raw(32);
        double sum = 0.0;
        for (double& x : raw) {
            x = std::exp2(uniform_in(rng, -7.0, -3.0));
            sum += x;
        }
        for (double& x : raw) x /= sum;
        ProbVector p(raw);
        RoughEqualParams narrow{0.15, 5, 1.0};
        RoughEqualParams wide{0.3, 5, 1.0};
        auto a = is_roughly_equal(p, narrow);
        auto b = is_roughly_equal(p, wide);
        // the good set only widens with epsilon
        for (std::size_t idx : a.good_indices)
            CHECK(std::find(b.good_indices.begin(), b.good_indices.end(), idx) !=
                  b.good_indices.end());
        if (a.holds) CHECK(b.holds);
    }
}

TEST_CASE("is_delta_independent") {
    auto independent = JointDistribution::from_rows({{0.25, 0.25}, {0.25, 0.25}});
    CHECK(is_delta_independent(independent, 0.01));
    CHECK(is_delta_independent(independent, 1.5));

    auto diagonal = JointDistribution::from_rows({{0.5, 0.0}, {0.0, 0.5}});
    CHECK(!is_delta_independent(diagonal, 0.5));

    auto sym = JointDistribution::from_rows({{0.4, 0.1}, {0.1, 0.4}});
    CHECK(is_delta_independent(sym, 0.3));
    CHECK(!is_delta_independent(sym, 0.25));
}

TEST_CASE("delta-independence is symmetric under transpose") {
    auto rng = seeded_stream(24, stream_tag::generic, 0);
    for (int trial = 0; trial < 200; ++trial) {
        auto j = random_joint(rng, 3, 5);
        auto [rows, cols] = marginals(j);
        double gap = shannon_entropy(rows) - conditional_entropy(j);
        double gap_t =
            shannon_entropy(cols) - conditional_entropy(j.transposed());
        CHECK(std::abs(gap - gap_t) < 1e-9);
        double delta = uniform_in(rng, 0.01, 1.0);
        if (std::abs(gap - delta) > 1e-9)
            CHECK(is_delta_independent(j, delta) == is_delta_independent(j.transposed(), delta));
    }
}

TEST_CASE("beta_constant") {
    CHECK(beta_constant(0.0, 2) == doctest::Approx(0.0));
    CHECK(beta_constant(0.1, 2) == doctest::Approx(1.181291).epsilon(1e-6));
    CHECK(beta_constant(0.05, 4) == doctest::Approx(0.909840).epsilon(1e-6));
    CHECK_THROWS_AS(beta_constant(0.2, 2), DomainError);
}

TEST_CASE("ball_size_bound") {
    CHECK(ball_size_bound(4, 0.0, 2) == doctest::Approx(1.0));
    CHECK(ball_size_bound(8, 0.25, 2) == doctest::Approx(359.5).epsilon(0.5 / 359.5));
    CHECK(ball_size_bound(8, 0.25, 3) == doctest::Approx(808.6).epsilon(1.0 / 808.6));
    CHECK_THROWS_AS(ball_size_bound(8, 0.6, 2), DomainError);
}
