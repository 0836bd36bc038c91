#ifndef SCRAMBLER_ENTROPY_HPP
#define SCRAMBLER_ENTROPY_HPP

#include <cstdint>
#include <vector>

#include "scrambler/prob.hpp"

namespace scrambler {

// All entropies are in bits (base-2 logs throughout).

double shannon_entropy(const std::vector<double>& p);
double shannon_entropy(const ProbVector& p);

// H(p, 1-p)
double binary_entropy(double p);

// H(P|Q) for rows P, columns Q: H(join) - H(column marginal).
double conditional_entropy(const JointDistribution& j);

// Open mass window (2^{-n(h+eps)}, 2^{-n(h-eps)}) handled in log2 space.
// `slack` (log2 units) absorbs floating-point ties at the endpoints.
struct MassWindow {
    double log2_lo = 0.0;
    double log2_hi = 0.0;
    double slack = 1e-9;

    bool contains_log2(double log2_mass) const {
        return log2_mass > log2_lo - slack && log2_mass < log2_hi + slack;
    }
    bool contains(double mass) const;
};

MassWindow good_window(double n, double h, double epsilon, double slack = 1e-9);

struct RoughEqualParams {
    double epsilon = 0.0;  // > 0
    std::int64_t n = 1;    // window length in symbols, >= 1
    double h = 0.0;        // entropy in bits per symbol, > 0
};

struct RoughEqualReport {
    std::vector<std::size_t> good_indices;
    double good_mass = 0.0;
    bool holds = false;  // good_mass > 1 - epsilon
};

// Entries inside the open window are "good"; the vector is roughly equal when
// they carry more than 1 - epsilon of the mass.
RoughEqualReport is_roughly_equal(const ProbVector& p, const RoughEqualParams& params);
RoughEqualReport is_roughly_equal(const std::vector<double>& p, const RoughEqualParams& params);

// H(P|Q) > H(P) - delta. Symmetric in P and Q.
bool is_delta_independent(const JointDistribution& j, double delta);

// H(3d, 1-3d) + 3d*log2(l). Domain: 3*delta <= 1/2.
double beta_constant(double delta, int alphabet_size);

// 2^{n(H(d,1-d) + d*log2(l))} as a real number. Domain: delta <= 1/2.
double ball_size_bound(std::int64_t n, double delta, int alphabet_size);
double log2_ball_size_bound(std::int64_t n, double delta, int alphabet_size);

}  // namespace scrambler

#endif
