#include "scrambler/shift.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "scrambler/rng.hpp"

namespace scrambler {

Alphabet::Alphabet(int l, std::set<Symbol> p0_symbols) : size(l), p0(std::move(p0_symbols)) {
    if (size < 2) throw DomainError("alphabet size must be >= 2");
    for (Symbol s : p0)
        if (!contains(s)) throw DomainError("separating class symbol out of range");
    if (static_cast<int>(p0.size()) >= size)
        throw DomainError("separating class must be a proper subset of the alphabet");
}

ShiftMeasure ShiftMeasure::bernoulli(ProbVector symbol_probs) {
    if (symbol_probs.size() < 2) throw DomainError("measure needs an alphabet of size >= 2");
    ShiftMeasure m;
    m.kind_ = Kind::bernoulli;
    m.symbol_probs_ = symbol_probs.entries();
    return m;
}

ShiftMeasure ShiftMeasure::markov(std::vector<std::vector<double>> transition_rows) {
    std::size_t l = transition_rows.size();
    if (l < 2) throw DomainError("measure needs an alphabet of size >= 2");
    for (const auto& row : transition_rows) {
        ProbVector check(row);  // validates nonnegativity and row sum
        if (check.size() != l) throw DimensionMismatchError("transition matrix must be square");
    }
    // stationary vector by power iteration to 1e-12
    std::vector<double> pi(l, 1.0 / static_cast<double>(l)), next(l, 0.0);
    bool converged = false;
    for (int iter = 0; iter < 200000; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t j = 0; j < l; ++j) next[j] += pi[i] * transition_rows[i][j];
        double sum = 0.0;
        for (double x : next) sum += x;
        for (double& x : next) x /= sum;
        double diff = 0.0;
        for (std::size_t i = 0; i < l; ++i) diff += std::abs(next[i] - pi[i]);
        pi.swap(next);
        if (diff < 1e-12) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw DomainError("stationary vector iteration did not converge; is the chain ergodic?");
    ShiftMeasure m;
    m.kind_ = Kind::markov;
    m.symbol_probs_ = std::move(pi);
    m.transitions_ = std::move(transition_rows);
    return m;
}

namespace {

double parse_prob_token(const std::string& token) {
    if (token.empty()) throw ParseError("empty probability token in measure spec");
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || !std::isfinite(v))
        throw ParseError("bad probability token '" + token + "' in measure spec");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace

ShiftMeasure parse_measure(const std::string& spec) {
    std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw ParseError("measure spec '" + spec + "' lacks a kind prefix");
    std::string kind = spec.substr(0, colon);
    std::string body = spec.substr(colon + 1);
    if (kind == "bernoulli") {
        std::vector<double> probs;
        for (const auto& tok : split(body, ',')) probs.push_back(parse_prob_token(tok));
        if (probs.size() == 1) {
            // single value p is shorthand for the binary measure (p, 1-p)
            double p = probs[0];
            if (p < 0.0 || p > 1.0)
                throw ParseError("bernoulli shorthand probability out of [0,1]: '" + body + "'");
            probs = {p, 1.0 - p};
        }
        try {
            return ShiftMeasure::bernoulli(ProbVector(probs));
        } catch (const DomainError& e) {
            throw ParseError(std::string("bad bernoulli spec: ") + e.what());
        }
    }
    if (kind == "markov") {
        std::vector<std::vector<double>> rows;
        for (const auto& row_text : split(body, ';')) {
            std::vector<double> row;
            for (const auto& tok : split(row_text, ',')) row.push_back(parse_prob_token(tok));
            rows.push_back(std::move(row));
        }
        try {
            return ShiftMeasure::markov(std::move(rows));
        } catch (const Error& e) {
            throw ParseError(std::string("bad markov spec: ") + e.what());
        }
    }
    throw ParseError("unknown measure kind '" + kind + "'");
}

double cylinder_measure(const ShiftMeasure& m, const Block& b) {
    double mass = 1.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (static_cast<int>(b[i]) >= m.alphabet_size())
            throw DomainError("block symbol out of alphabet range");
        if (m.kind() == ShiftMeasure::Kind::bernoulli || i == 0)
            mass *= m.symbol_probs()[b[i]];
        else
            mass *= m.transitions()[b[i - 1]][b[i]];
    }
    return mass;
}

double log2_cylinder_measure(const ShiftMeasure& m, const Block& b) {
    double lm = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (static_cast<int>(b[i]) >= m.alphabet_size())
            throw DomainError("block symbol out of alphabet range");
        double step = (m.kind() == ShiftMeasure::Kind::bernoulli || i == 0)
                          ? m.symbol_probs()[b[i]]
                          : m.transitions()[b[i - 1]][b[i]];
        if (step <= 0.0) return -std::numeric_limits<double>::infinity();
        lm += std::log2(step);
    }
    return lm;
}

double entropy_rate(const ShiftMeasure& m) {
    if (m.kind() == ShiftMeasure::Kind::bernoulli) return shannon_entropy(m.symbol_probs());
    double h = 0.0;
    for (std::size_t i = 0; i < m.transitions().size(); ++i)
        h += m.symbol_probs()[i] * shannon_entropy(m.transitions()[i]);
    return h;
}

bool enumerable(int alphabet_size, std::int64_t n) {
    if (n < 0) return false;
    return static_cast<double>(n) * std::log2(static_cast<double>(alphabet_size)) <=
           std::log2(static_cast<double>(kEnumerationCap)) + 1e-12;
}

SmResult sm_mass_enumerated(const ShiftMeasure& m, std::int64_t n, double epsilon) {
    if (n < 1) throw DomainError("sm_mass needs n >= 1");
    if (!(epsilon > 0.0)) throw DomainError("sm_mass needs epsilon > 0");
    if (!enumerable(m.alphabet_size(), n))
        throw EnumerationCapExceeded("cylinder enumeration beyond cap: l^n > 2^24");
    MassWindow w = good_window(static_cast<double>(n), entropy_rate(m), epsilon);
    double mass = 0.0;
    enumerate_cylinders(m, static_cast<int>(n), [&](const Block&, double cyl) {
        if (w.contains(cyl)) mass += cyl;
    });
    return {mass, mass > 1.0 - epsilon};
}

namespace {

// Total good mass over symbol-count classes; Bernoulli measures only. Walks
// the compositions of n into l parts with an incremental log-multinomial.
class MultinomialScan {
  public:
    MultinomialScan(const ShiftMeasure& m, std::int64_t n, const MassWindow& w)
        : probs_(m.symbol_probs()), window_(w), n_(n) {
        log_probs_.resize(probs_.size());
        for (std::size_t i = 0; i < probs_.size(); ++i)
            log_probs_[i] = probs_[i] > 0.0 ? std::log2(probs_[i])
                                            : -std::numeric_limits<double>::infinity();
        log_factorial_.resize(static_cast<std::size_t>(n) + 1, 0.0);
        for (std::int64_t k = 1; k <= n; ++k)
            log_factorial_[static_cast<std::size_t>(k)] =
                log_factorial_[static_cast<std::size_t>(k - 1)] +
                std::log2(static_cast<double>(k));
    }

    double run() {
        std::vector<std::int64_t> counts(probs_.size(), 0);
        recurse(0, n_, counts);
        return mass_;
    }

    std::int64_t terms() const { return terms_; }

  private:
    void recurse(std::size_t i, std::int64_t remaining, std::vector<std::int64_t>& counts) {
        if (i + 1 == counts.size()) {
            counts[i] = remaining;
            accumulate(counts);
            return;
        }
        for (std::int64_t k = 0; k <= remaining; ++k) {
            counts[i] = k;
            recurse(i + 1, remaining - k, counts);
        }
    }

    void accumulate(const std::vector<std::int64_t>& counts) {
        if (++terms_ > kEnumerationCap)
            throw EnumerationCapExceeded("multinomial class count beyond cap");
        double log_mass = 0.0;    // log2 measure of one block in the class
        double log_coeff = log_factorial_[static_cast<std::size_t>(n_)];
        for (std::size_t i = 0; i < counts.size(); ++i) {
            std::int64_t k = counts[i];
            if (k == 0) continue;
            if (probs_[i] <= 0.0) return;  // class has measure zero
            log_mass += static_cast<double>(k) * log_probs_[i];
            log_coeff -= log_factorial_[static_cast<std::size_t>(k)];
        }
        if (window_.contains_log2(log_mass)) mass_ += std::exp2(log_coeff + log_mass);
    }

    const std::vector<double>& probs_;
    std::vector<double> log_probs_;
    std::vector<double> log_factorial_;
    MassWindow window_;
    std::int64_t n_;
    std::int64_t terms_ = 0;
    double mass_ = 0.0;
};

}  // namespace

SmResult sm_mass_multinomial(const ShiftMeasure& m, std::int64_t n, double epsilon) {
    if (n < 1) throw DomainError("sm_mass needs n >= 1");
    if (!(epsilon > 0.0)) throw DomainError("sm_mass needs epsilon > 0");
    if (m.kind() != ShiftMeasure::Kind::bernoulli)
        throw DomainError("multinomial route applies to Bernoulli measures only");
    MassWindow w = good_window(static_cast<double>(n), entropy_rate(m), epsilon);
    MultinomialScan scan(m, n, w);
    double mass = scan.run();
    return {mass, mass > 1.0 - epsilon};
}

SmResult sm_mass(const ShiftMeasure& m, std::int64_t n, double epsilon) {
    if (m.kind() == ShiftMeasure::Kind::bernoulli && !enumerable(m.alphabet_size(), n))
        return sm_mass_multinomial(m, n, epsilon);
    return sm_mass_enumerated(m, n, epsilon);
}

double block_entropy(const ShiftMeasure& m, int n) {
    if (n < 1) throw DomainError("block entropy needs n >= 1");
    double h = 0.0;
    enumerate_cylinders(m, n, [&](const Block&, double cyl) {
        if (cyl > 0.0) h -= cyl * std::log2(cyl);
    });
    return h;
}

double sequence_distance(const SymbolicPoint& x, const SymbolicPoint& y, std::int64_t at,
                         int depth_cap) {
    if (at < 0) throw DomainError("sequence distance needs a coordinate >= 0");
    for (int j = 0; j < depth_cap; ++j) {
        if (x.at(at + j) != y.at(at + j)) return std::exp2(static_cast<double>(-j));
    }
    return 0.0;  // below every threshold the artifact tests
}

double visit_frequency(const SymbolicPoint& x, const std::set<Symbol>& symbols, std::int64_t a,
                       std::int64_t b) {
    if (a < 0 || b <= a) throw DomainError("visit frequency needs a valid window [a, b)");
    if (b > x.horizon())
        throw HorizonExceeded("window end " + std::to_string(b) + " beyond horizon " +
                              std::to_string(x.horizon()));
    if (symbols.empty()) return 0.0;
    bool table[256] = {};
    for (Symbol s : symbols) table[s] = true;
    std::int64_t hits = 0;
    const auto& syms = x.symbols();
    for (std::int64_t i = a; i < b; ++i)
        if (table[syms[static_cast<std::size_t>(i)]]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(b - a);
}

Block sample_block(const ShiftMeasure& m, std::int64_t n, std::mt19937_64& rng) {
    if (n < 1) throw DomainError("sample_block needs n >= 1");
    Block b(static_cast<std::size_t>(n));
    const int l = m.alphabet_size();
    for (std::int64_t i = 0; i < n; ++i) {
        const std::vector<double>& probs =
            (m.kind() == ShiftMeasure::Kind::bernoulli || i == 0)
                ? m.symbol_probs()
                : m.transitions()[b[static_cast<std::size_t>(i - 1)]];
        double u = uniform01(rng);
        double acc = 0.0;
        int chosen = l - 1;
        for (int s = 0; s < l; ++s) {
            acc += probs[static_cast<std::size_t>(s)];
            if (u < acc) {
                chosen = s;
                break;
            }
        }
        b[static_cast<std::size_t>(i)] = static_cast<Symbol>(chosen);
    }
    return b;
}

}  // namespace scrambler
