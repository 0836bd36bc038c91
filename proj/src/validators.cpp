#include "scrambler/validators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "scrambler/entropy.hpp"
#include "scrambler/errors.hpp"
#include "scrambler/parallel.hpp"
#include "scrambler/rng.hpp"

namespace scrambler {

namespace {

constexpr std::uint64_t kF0Stream = 1;
constexpr std::uint64_t kF1Stream = 2;
constexpr std::uint64_t kLemma1Stream = 3;

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t statement, std::uint64_t trial) {
    return seeded_stream(seed, stream_tag::validator, (statement << 32) | trial);
}

}  // namespace

TrialCounts validate_fact_f0(int trials, std::uint64_t seed, const FactF0Config& config) {
    if (trials < 1) throw DomainError("validators need trials >= 1");
    const double n = static_cast<double>(config.n);
    const double h = config.h;
    const double eps = config.epsilon;
    const std::size_t good_atoms =
        static_cast<std::size_t>(std::llround(std::exp2(n * h)));

    std::vector<int> outcome(static_cast<std::size_t>(trials), 0);  // 0 skip, 1 pass, 2 fail
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
        auto rng = trial_rng(seed, kF0Stream, trial);
        // good entries drawn inside the safe half of the window, a sliver of
        // deliberately-bad mass, then one normalization
        std::vector<double> raw;
        raw.reserve(good_atoms + 8);
        for (std::size_t i = 0; i < good_atoms; ++i)
            raw.push_back(std::exp2(uniform_in(rng, -n * (h + 0.5 * eps), -n * (h - 0.5 * eps))));
        double good_total = 0.0;
        for (double x : raw) good_total += x;
        const double bad_target = 0.25 * eps;
        const double tiny = std::exp2(-n * (h + 2.0 * eps));
        std::size_t bad_atoms = static_cast<std::size_t>(std::ceil(bad_target / tiny));
        for (std::size_t i = 0; i < bad_atoms; ++i) raw.push_back(tiny);
        double total = good_total + static_cast<double>(bad_atoms) * tiny;
        for (double& x : raw) x /= total;
        ProbVector p(raw);

        RoughEqualParams params{eps, config.n, h};
        if (!is_roughly_equal(p, params).holds) return;  // skipped

        // random union of atoms, complemented if too light
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (uniform01(rng) < 0.7) subset.push_back(i);
        double subset_mass = 0.0;
        for (std::size_t i : subset) subset_mass += p[i];
        if (subset_mass < config.min_subset_mass) {
            std::vector<std::size_t> complement;
            std::size_t si = 0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (si < subset.size() && subset[si] == i)
                    ++si;
                else
                    complement.push_back(i);
            }
            subset = std::move(complement);
            subset_mass = 1.0 - subset_mass;
        }
        if (subset.empty() || subset_mass <= 0.0) return;

        double eps_prime = config.epsilon_prime_slack * eps / subset_mass;
        // window-inflation threshold on n
        if (n < std::log2(1.0 / subset_mass) / (eps_prime - eps)) return;

        ProbVector conditioned = condition_on_subset(p, subset);
        RoughEqualParams conclusion{eps_prime, config.n, h};
        outcome[trial] = is_roughly_equal(conditioned, conclusion).holds ? 1 : 2;
    });

    TrialCounts counts;
    counts.trials = trials;
    for (int o : outcome) {
        if (o == 0) ++counts.skipped;
        if (o >= 1) ++counts.satisfied;
        if (o == 2) ++counts.failures;
    }
    return counts;
}

namespace {

struct F1Sample {
    double independence_gap = 0.0;  // H(P) - H(P|Q)
    bool conclusion_ok = false;
};

F1Sample draw_f1_sample(std::mt19937_64& rng, std::size_t dim, double epsilon) {
    // random base vector (flat Dirichlet), mixed between the product and the
    // diagonal coupling; both components share the same marginals
    std::vector<double> p(dim);
    double sum = 0.0;
    for (double& x : p) {
        x = -std::log(1.0 - uniform01(rng));
        sum += x;
    }
    for (double& x : p) x /= sum;
    double lambda = uniform01(rng);

    std::vector<double> cells(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            double v = (1.0 - lambda) * p[i] * p[j];
            if (i == j) v += lambda * p[i];
            cells[i * dim + j] = v;
        }
    JointDistribution joint(dim, dim, std::move(cells));

    F1Sample sample;
    auto [rows, cols] = marginals(joint);
    sample.independence_gap = std::max(0.0, shannon_entropy(rows) - conditional_entropy(joint));
    double close_weight = 0.0;
    for (const Fiber& fiber : disintegrate(joint)) {
        if (fiber.weight <= 0.0) continue;
        if (ell1_distance(*fiber.conditional, rows) < epsilon) close_weight += fiber.weight;
    }
    sample.conclusion_ok = close_weight >= 1.0 - epsilon;
    return sample;
}

}  // namespace

FactF1Report validate_fact_f1(int trials, std::uint64_t seed, const FactF1Config& config) {
    if (trials < 1) throw DomainError("validators need trials >= 1");
    std::vector<F1Sample> samples(static_cast<std::size_t>(trials));
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
        auto rng = trial_rng(seed, kF1Stream, trial);
        samples[trial] = draw_f1_sample(rng, config.dim, config.epsilon);
    });

    // delta-independence admits exactly the samples with gap < delta, so the
    // failure count is monotone in delta and bisection is exact
    auto failures_at = [&](double delta) {
        int f = 0;
        for (const F1Sample& s : samples)
            if (s.independence_gap < delta && !s.conclusion_ok) ++f;
        return f;
    };

    FactF1Report report;
    report.failures_at_hi = failures_at(config.delta_hi);
    double lo = 0.0, hi = config.delta_hi;
    if (report.failures_at_hi == 0) {
        lo = hi;
    } else {
        while (hi - lo > config.tolerance) {
            double mid = 0.5 * (lo + hi);
            if (failures_at(mid) == 0)
                lo = mid;
            else
                hi = mid;
        }
    }
    report.delta = lo;
    report.at_delta.trials = trials;
    for (const F1Sample& s : samples) {
        if (s.independence_gap < lo) {
            ++report.at_delta.satisfied;
            if (!s.conclusion_ok) ++report.at_delta.failures;
        } else {
            ++report.at_delta.skipped;
        }
    }
    return report;
}

Lemma1Config lemma1_broken_threshold_config() {
    Lemma1Config config;
    config.dim_q = 2;
    config.m_override = 8;
    config.skip_threshold_check = true;
    return config;
}

Lemma1Report validate_lemma1(int trials, std::uint64_t seed, const Lemma1Config& config) {
    if (trials < 1) throw DomainError("validators need trials >= 1");
    const double alpha = config.alpha, beta = config.beta, gamma = config.gamma;
    const double h = config.h, hp = config.h_prime;
    const double n = static_cast<double>(config.n);

    Lemma1Report report;
    report.m = config.m_override
                   ? config.m_override
                   : static_cast<std::int64_t>(std::ceil(n * (h + alpha) / gamma));
    const double m = static_cast<double>(report.m);
    const bool threshold_ok = m >= n * (h + alpha) / gamma - 1e-9;

    std::vector<int> outcome(static_cast<std::size_t>(trials), 0);  // 0 skip, 1 pass, 2 fail
    std::vector<int> nesting(static_cast<std::size_t>(trials), 0);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
        if (!threshold_ok && !config.skip_threshold_check) return;  // hypotheses unmet
        auto rng = trial_rng(seed, kLemma1Stream, trial);
        const std::size_t dp = config.dim_p, dq = config.dim_q;
        // exact product of uniform marginals, bounded multiplicative noise,
        // one renormalization
        std::vector<double> cells(dp * dq);
        double total = 0.0;
        for (double& c : cells) {
            c = std::exp2(uniform_in(rng, -0.5 * gamma, 0.5 * gamma)) /
                static_cast<double>(dp * dq);
            total += c;
        }
        for (double& c : cells) c /= total;
        JointDistribution joint(dp, dq, std::move(cells));

        auto [rows, cols] = marginals(joint);
        RoughEqualParams p_params{alpha, config.n, h};
        RoughEqualParams q_params{gamma, report.m, hp};
        RoughEqualReport p_report = is_roughly_equal(rows, p_params);
        if (!p_report.holds) return;
        if (!is_roughly_equal(cols, q_params).holds) return;
        if (!is_delta_independent(joint, gamma)) return;

        // conclusion one: the join stays roughly equal at (alpha+beta+gamma, m, h')
        RoughEqualParams join_params{alpha + beta + gamma, report.m, hp};
        RoughEqualReport join_report = is_roughly_equal(joint.cells(), join_params);

        // conclusion two: rows of joint mass >= 1-alpha-beta condition the
        // columns to a (beta, m, h') roughly-equal vector
        RoughEqualParams row_params{beta, report.m, hp};
        std::vector<bool> row_ok(dp, false);
        double ok_mass = 0.0;
        for (std::size_t r = 0; r < dp; ++r) {
            if (rows[r] <= 0.0) continue;
            std::vector<double> conditional(dq);
            for (std::size_t c = 0; c < dq; ++c) conditional[c] = joint.at(r, c) / rows[r];
            if (is_roughly_equal(conditional, row_params).holds) {
                row_ok[r] = true;
                ok_mass += rows[r];
            }
        }
        bool conclusion_two = ok_mass >= 1.0 - alpha - beta;
        outcome[trial] = (join_report.holds && conclusion_two) ? 1 : 2;

        // nesting report: good rows >= rows-with-good-conditional >= good cells
        std::vector<bool> row_good(dp, false);
        for (std::size_t idx : p_report.good_indices) row_good[idx] = true;
        bool nested = true;
        for (std::size_t r = 0; r < dp; ++r)
            if (row_ok[r] && !row_good[r]) nested = false;
        for (std::size_t flat : join_report.good_indices)
            if (!row_ok[flat / dq]) nested = false;
        if (!nested) nesting[trial] = 1;
    });

    report.counts.trials = trials;
    for (std::size_t i = 0; i < outcome.size(); ++i) {
        if (outcome[i] == 0) ++report.counts.skipped;
        if (outcome[i] >= 1) ++report.counts.satisfied;
        if (outcome[i] == 2) ++report.counts.failures;
        report.nesting_violations += nesting[i];
    }
    return report;
}

}  // namespace scrambler
