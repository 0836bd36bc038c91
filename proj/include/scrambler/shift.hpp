#ifndef SCRAMBLER_SHIFT_HPP
#define SCRAMBLER_SHIFT_HPP

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "scrambler/entropy.hpp"
#include "scrambler/errors.hpp"
#include "scrambler/prob.hpp"

namespace scrambler {

using Symbol = std::uint8_t;
using Block = std::vector<Symbol>;

// l^n states is the ceiling for exhaustive cylinder scans.
constexpr std::int64_t kEnumerationCap = std::int64_t(1) << 24;

// Alphabet {0,...,l-1} with an optional designated class of separating
// symbols (empty by default; the symbolic metric separates at distance 1
// whenever zeroth symbols differ, so the class is only carried for the
// visit-frequency accounting).
struct Alphabet {
    int size = 2;
    std::set<Symbol> p0;

    explicit Alphabet(int l = 2, std::set<Symbol> p0_symbols = {});
    bool contains(Symbol s) const { return static_cast<int>(s) < size; }
};

// Bernoulli or stationary Markov measure on the full shift over {0,...,l-1}.
class ShiftMeasure {
  public:
    enum class Kind { bernoulli, markov };

    static ShiftMeasure bernoulli(ProbVector symbol_probs);
    // Stationary vector computed by power iteration to 1e-12.
    static ShiftMeasure markov(std::vector<std::vector<double>> transition_rows);

    Kind kind() const { return kind_; }
    int alphabet_size() const { return static_cast<int>(symbol_probs_.size()); }
    // Bernoulli probabilities, or the stationary vector for Markov.
    const std::vector<double>& symbol_probs() const { return symbol_probs_; }
    const std::vector<std::vector<double>>& transitions() const { return transitions_; }

  private:
    ShiftMeasure() = default;
    Kind kind_ = Kind::bernoulli;
    std::vector<double> symbol_probs_;
    std::vector<std::vector<double>> transitions_;  // empty for Bernoulli
};

// "bernoulli:p0,p1,..." (a single value p is shorthand for p,1-p) or
// "markov:row;row;..." with comma-separated rows. Throws ParseError naming
// the offending token.
ShiftMeasure parse_measure(const std::string& spec);

double cylinder_measure(const ShiftMeasure& m, const Block& b);
// Sum of per-symbol logs; usable for blocks far beyond double underflow.
double log2_cylinder_measure(const ShiftMeasure& m, const Block& b);

// Bernoulli: H(p). Markov: -sum_i pi_i sum_j P_ij log2 P_ij.
double entropy_rate(const ShiftMeasure& m);

bool enumerable(int alphabet_size, std::int64_t n);

// Depth-first walk over all length-n blocks in lexicographic order,
// fn(block, mass). Requires enumerable(l, n).
template <typename Fn>
void enumerate_cylinders(const ShiftMeasure& m, int n, Fn&& fn) {
    if (!enumerable(m.alphabet_size(), n))
        throw EnumerationCapExceeded("cylinder enumeration beyond cap: l^n > 2^24");
    const int l = m.alphabet_size();
    Block block(static_cast<std::size_t>(n));
    // mass[d] = measure of the length-d prefix
    std::vector<double> mass(static_cast<std::size_t>(n) + 1, 1.0);
    std::vector<int> sym(static_cast<std::size_t>(n), 0);
    int d = 0;
    while (d >= 0) {
        if (d == n) {
            fn(const_cast<const Block&>(block), mass[static_cast<std::size_t>(n)]);
            --d;
            continue;
        }
        int s = sym[static_cast<std::size_t>(d)]++;
        if (s >= l) {
            sym[static_cast<std::size_t>(d)] = 0;
            --d;
            continue;
        }
        block[static_cast<std::size_t>(d)] = static_cast<Symbol>(s);
        double step;
        if (m.kind() == ShiftMeasure::Kind::bernoulli || d == 0)
            step = m.symbol_probs()[static_cast<std::size_t>(s)];
        else
            step = m.transitions()[block[static_cast<std::size_t>(d - 1)]][static_cast<std::size_t>(s)];
        mass[static_cast<std::size_t>(d) + 1] = mass[static_cast<std::size_t>(d)] * step;
        ++d;
    }
}

struct SmResult {
    double mass = 0.0;
    bool holds = false;  // mass > 1 - epsilon
};

// Total measure of length-n cylinders whose measure lies strictly inside
// (2^{-n(h+eps)}, 2^{-n(h-eps)}). Bernoulli measures take the multinomial
// route for any n; otherwise the exhaustive route applies up to the cap.
SmResult sm_mass(const ShiftMeasure& m, std::int64_t n, double epsilon);
SmResult sm_mass_enumerated(const ShiftMeasure& m, std::int64_t n, double epsilon);
SmResult sm_mass_multinomial(const ShiftMeasure& m, std::int64_t n, double epsilon);

// Shannon entropy of the length-n cylinder partition (exhaustive; cap applies).
double block_entropy(const ShiftMeasure& m, int n);

// A one-sided sequence materialized through a fixed horizon. Reads are safe
// concurrently once constructed.
class SymbolicPoint {
  public:
    explicit SymbolicPoint(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

    std::int64_t horizon() const { return static_cast<std::int64_t>(symbols_.size()); }
    Symbol at(std::int64_t i) const {
        if (i < 0 || i >= horizon())
            throw HorizonExceeded("coordinate " + std::to_string(i) +
                                  " beyond materialized horizon " + std::to_string(horizon()));
        return symbols_[static_cast<std::size_t>(i)];
    }
    const std::vector<Symbol>& symbols() const { return symbols_; }

  private:
    std::vector<Symbol> symbols_;
};

// 2^{-j} where j >= 0 is the first index with x[at+j] != y[at+j]; 0 when the
// points agree through the depth cap (below any threshold ever tested).
double sequence_distance(const SymbolicPoint& x, const SymbolicPoint& y, std::int64_t at,
                         int depth_cap = 64);

// Fraction of coordinates in [a, b) whose symbol lies in the given class.
double visit_frequency(const SymbolicPoint& x, const std::set<Symbol>& symbols, std::int64_t a,
                       std::int64_t b);

// Block distributed according to the measure; deterministic given the
// generator state.
Block sample_block(const ShiftMeasure& m, std::int64_t n, std::mt19937_64& rng);

}  // namespace scrambler

#endif
