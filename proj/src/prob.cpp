#include "scrambler/prob.hpp"

#include <cmath>
#include <string>

#include "scrambler/errors.hpp"

namespace scrambler {

namespace {

void check_mass(double sum, const char* what) {
    if (std::abs(sum - 1.0) > kMassTolerance)
        throw DomainError(std::string(what) + " sums to " + std::to_string(sum) +
                          ", expected 1 within 1e-9");
}

void check_nonnegative(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!(x >= 0.0))
            throw DomainError(std::string(what) + " has a negative or non-finite entry");
}

}  // namespace

ProbVector::ProbVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw DomainError("probability vector must be nonempty");
    check_nonnegative(entries_, "probability vector");
    double sum = 0.0;
    for (double x : entries_) sum += x;
    check_mass(sum, "probability vector");
}

ProbVector ProbVector::uniform(std::size_t n) {
    if (n == 0) throw DomainError("uniform vector needs n >= 1");
    return ProbVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

JointDistribution::JointDistribution(std::size_t rows, std::size_t cols,
                                     std::vector<double> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
    if (rows_ == 0 || cols_ == 0) throw DomainError("joint distribution must be nonempty");
    if (cells_.size() != rows_ * cols_)
        throw DimensionMismatchError("joint distribution cell count does not match shape");
    check_nonnegative(cells_, "joint distribution");
    double sum = 0.0;
    for (double x : cells_) sum += x;
    check_mass(sum, "joint distribution");
}

JointDistribution JointDistribution::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw DomainError("joint distribution must be nonempty");
    std::size_t cols = rows.front().size();
    std::vector<double> cells;
    cells.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw DimensionMismatchError("ragged joint distribution rows");
        cells.insert(cells.end(), r.begin(), r.end());
    }
    return JointDistribution(rows.size(), cols, std::move(cells));
}

JointDistribution JointDistribution::transposed() const {
    std::vector<double> cells(rows_ * cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) cells[c * rows_ + r] = at(r, c);
    return JointDistribution(cols_, rows_, std::move(cells));
}

std::pair<ProbVector, ProbVector> marginals(const JointDistribution& j) {
    std::vector<double> row_sums(j.rows(), 0.0), col_sums(j.cols(), 0.0);
    for (std::size_t r = 0; r < j.rows(); ++r)
        for (std::size_t c = 0; c < j.cols(); ++c) {
            row_sums[r] += j.at(r, c);
            col_sums[c] += j.at(r, c);
        }
    return {ProbVector(std::move(row_sums)), ProbVector(std::move(col_sums))};
}

ProbVector condition_on_subset(const ProbVector& p, const std::vector<std::size_t>& subset) {
    if (subset.empty()) throw DomainError("conditioning subset must be nonempty");
    double mass = 0.0;
    for (std::size_t i : subset) {
        if (i >= p.size()) throw DimensionMismatchError("subset index out of range");
        mass += p[i];
    }
    if (mass <= 0.0) throw ZeroMassError("conditioning subset has zero mass");
    std::vector<double> out;
    out.reserve(subset.size());
    for (std::size_t i : subset) out.push_back(p[i] / mass);
    return ProbVector(std::move(out));
}

std::vector<Fiber> disintegrate(const JointDistribution& j) {
    std::vector<Fiber> fibers(j.cols());
    for (std::size_t c = 0; c < j.cols(); ++c) {
        double w = 0.0;
        for (std::size_t r = 0; r < j.rows(); ++r) w += j.at(r, c);
        fibers[c].weight = w;
        if (w > 0.0) {
            std::vector<double> cond(j.rows());
            for (std::size_t r = 0; r < j.rows(); ++r) cond[r] = j.at(r, c) / w;
            fibers[c].conditional = ProbVector(std::move(cond));
        }
    }
    return fibers;
}

double ell1_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size())
        throw DimensionMismatchError("ell1 distance needs equal dimensions");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
    return d;
}

double ell1_distance(const ProbVector& p, const ProbVector& q) {
    return ell1_distance(p.entries(), q.entries());
}

}  // namespace scrambler
