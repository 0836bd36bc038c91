#include "scrambler/entropy.hpp"

#include <cmath>
#include <string>

#include "scrambler/errors.hpp"

namespace scrambler {

double shannon_entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

double shannon_entropy(const ProbVector& p) { return shannon_entropy(p.entries()); }

double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

double conditional_entropy(const JointDistribution& j) {
    auto [rows, cols] = marginals(j);
    (void)rows;
    double h = shannon_entropy(j.cells()) - shannon_entropy(cols);
    // chain rule in exact arithmetic is nonnegative; absorb rounding dust
    if (h < 0.0 && h > -1e-12) h = 0.0;
    return h;
}

bool MassWindow::contains(double mass) const {
    if (!(mass > 0.0)) return false;
    return contains_log2(std::log2(mass));
}

MassWindow good_window(double n, double h, double epsilon, double slack) {
    MassWindow w;
    w.log2_lo = -n * (h + epsilon);
    w.log2_hi = -n * (h - epsilon);
    w.slack = slack;
    return w;
}

RoughEqualReport is_roughly_equal(const std::vector<double>& p, const RoughEqualParams& params) {
    if (!(params.epsilon > 0.0) || params.n < 1 || !(params.h > 0.0))
        throw DomainError("rough-equality parameters need epsilon > 0, n >= 1, h > 0");
    MassWindow w = good_window(static_cast<double>(params.n), params.h, params.epsilon,
                               1e-12 * (1.0 + static_cast<double>(params.n) * params.h));
    RoughEqualReport report;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (w.contains(p[i])) {
            report.good_indices.push_back(i);
            report.good_mass += p[i];
        }
    }
    report.holds = report.good_mass > 1.0 - params.epsilon;
    return report;
}

RoughEqualReport is_roughly_equal(const ProbVector& p, const RoughEqualParams& params) {
    return is_roughly_equal(p.entries(), params);
}

bool is_delta_independent(const JointDistribution& j, double delta) {
    if (!(delta > 0.0)) throw DomainError("delta-independence needs delta > 0");
    auto [rows, cols] = marginals(j);
    (void)cols;
    return conditional_entropy(j) > shannon_entropy(rows) - delta;
}

double beta_constant(double delta, int alphabet_size) {
    if (alphabet_size < 2) throw DomainError("alphabet size must be >= 2");
    if (!(delta >= 0.0) || 3.0 * delta > 0.5)
        throw DomainError("beta constant needs 0 <= 3*delta <= 1/2, got delta = " +
                          std::to_string(delta));
    return binary_entropy(3.0 * delta) + 3.0 * delta * std::log2(alphabet_size);
}

double log2_ball_size_bound(std::int64_t n, double delta, int alphabet_size) {
    if (alphabet_size < 2) throw DomainError("alphabet size must be >= 2");
    if (n < 1) throw DomainError("ball bound needs n >= 1");
    if (!(delta >= 0.0) || delta > 0.5)
        throw DomainError("ball bound needs 0 <= delta <= 1/2, got delta = " +
                          std::to_string(delta));
    return static_cast<double>(n) * (binary_entropy(delta) + delta * std::log2(alphabet_size));
}

double ball_size_bound(std::int64_t n, double delta, int alphabet_size) {
    return std::exp2(log2_ball_size_bound(n, delta, alphabet_size));
}

}  // namespace scrambler
