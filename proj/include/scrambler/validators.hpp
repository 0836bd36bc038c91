#ifndef SCRAMBLER_VALIDATORS_HPP
#define SCRAMBLER_VALIDATORS_HPP

#include <cstdint>

#include "scrambler/prob.hpp"

namespace scrambler {

// Randomized empirical validators. Each trial draws from its own RNG stream
// derived from the seed, so counts are independent of execution order.

struct TrialCounts {
    int trials = 0;
    int satisfied = 0;  // hypothesis-satisfying trials
    int skipped = 0;    // sampled hypotheses failed; trial not judged
    int failures = 0;   // hypothesis held but a conclusion failed
};

// Conditioning a roughly-equal vector on a union of atoms keeps it roughly
// equal with epsilon' > epsilon / mass(subset), once n clears
// log2(1/mass) / (epsilon' - epsilon).
struct FactF0Config {
    std::int64_t n = 8;
    double h = 1.0;
    double epsilon = 0.2;
    double epsilon_prime_slack = 1.1;  // epsilon' = slack * epsilon / mass
    double min_subset_mass = 0.5;
};

TrialCounts validate_fact_f0(int trials, std::uint64_t seed, const FactF0Config& config = {});

// For a fixed dimension and epsilon, a binary search locates delta such that
// delta-independence forces fibers within epsilon of the marginal in ell-1,
// except on columns of mass epsilon.
struct FactF1Config {
    std::size_t dim = 8;
    double epsilon = 0.1;
    double delta_hi = 4.0;
    double tolerance = 1e-4;
};

struct FactF1Report {
    double delta = 0.0;       // largest passing delta located
    TrialCounts at_delta;     // counts evaluated at that delta
    int failures_at_hi = 0;   // nontriviality: failures at the top of the range
};

FactF1Report validate_fact_f1(int trials, std::uint64_t seed, const FactF1Config& config = {});

// Joint of a roughly-equal pair under gamma-independence: the join stays
// roughly equal with (alpha+beta+gamma, m, h') and rows of joint mass
// >= 1-alpha-beta condition the column partition to a (beta, m, h')
// roughly-equal vector. The window threshold m >= n(h+alpha)/gamma makes the
// statement checkable.
struct Lemma1Config {
    double alpha = 0.2;
    double beta = 0.1;
    double gamma = 0.05;
    std::int64_t n = 3;
    double h = 1.0;
    double h_prime = 0.1;
    std::size_t dim_p = 8;
    std::size_t dim_q = 128;
    std::int64_t m_override = 0;       // 0: use ceil(n(h+alpha)/gamma)
    bool skip_threshold_check = false;  // test hook for the negative control
};

// Negative control: m forced below the threshold with the check bypassed;
// conclusions then fail deterministically.
Lemma1Config lemma1_broken_threshold_config();

struct Lemma1Report {
    TrialCounts counts;
    std::int64_t m = 0;
    // good-atom nesting (rows -> rows-with-good-conditional -> good cells)
    // reported, not enforced
    int nesting_violations = 0;
};

Lemma1Report validate_lemma1(int trials, std::uint64_t seed, const Lemma1Config& config = {});

}  // namespace scrambler

#endif
