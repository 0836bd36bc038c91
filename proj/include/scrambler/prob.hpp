#ifndef SCRAMBLER_PROB_HPP
#define SCRAMBLER_PROB_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace scrambler {

constexpr double kMassTolerance = 1e-9;

// Finite probability vector: nonnegative entries summing to 1 within 1e-9.
// Immutable after construction.
class ProbVector {
  public:
    explicit ProbVector(std::vector<double> entries);
    static ProbVector uniform(std::size_t n);

    std::size_t size() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<double>& entries() const { return entries_; }

    bool operator==(const ProbVector&) const = default;

  private:
    std::vector<double> entries_;
};

// Probability table over two finite partitions; rows index atoms of P,
// columns atoms of Q. Cells are nonnegative and sum to 1 within 1e-9.
class JointDistribution {
  public:
    JointDistribution(std::size_t rows, std::size_t cols, std::vector<double> cells);
    static JointDistribution from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
    const std::vector<double>& cells() const { return cells_; }

    JointDistribution transposed() const;

  private:
    std::size_t rows_, cols_;
    std::vector<double> cells_;
};

// One column of a disintegration: the column's mass and the column-normalized
// conditional. Zero-mass columns keep their slot with an empty conditional so
// fiber indices stay aligned with column indices.
struct Fiber {
    double weight = 0.0;
    std::optional<ProbVector> conditional;
};

// (row sums, column sums)
std::pair<ProbVector, ProbVector> marginals(const JointDistribution& j);

// entry i -> p_i / mass(subset) for i in subset, others dropped.
// Throws ZeroMassError when the subset carries no mass.
ProbVector condition_on_subset(const ProbVector& p, const std::vector<std::size_t>& subset);

// One fiber per column; the weighted sum of conditionals reconstructs the row
// marginal.
std::vector<Fiber> disintegrate(const JointDistribution& j);

double ell1_distance(const ProbVector& p, const ProbVector& q);
double ell1_distance(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace scrambler

#endif
