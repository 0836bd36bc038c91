#ifndef SCRAMBLER_ERRORS_HPP
#define SCRAMBLER_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scrambler {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// measure-core
struct ZeroMassError : Error {
    using Error::Error;
};
struct DimensionMismatchError : Error {
    using Error::Error;
};

// generic precondition violations (bad deltas, invalid probabilities, ...)
struct DomainError : Error {
    using Error::Error;
};

// shift-systems
struct EnumerationCapExceeded : Error {
    using Error::Error;
};
struct HorizonExceeded : Error {
    using Error::Error;
};

// scrambled-builder
struct LengthMismatchError : Error {
    using Error::Error;
};
struct ArithmeticOverflow : Error {
    using Error::Error;
};
struct ScheduleOverflow : Error {
    using Error::Error;
};
struct EmptyCandidateSet : Error {
    using Error::Error;
};
struct FamilyExhausted : Error {
    explicit FamilyExhausted(const std::string& parent_label)
        : Error("candidate family exhausted for parent '" + parent_label + "'"),
          parent(parent_label) {}
    std::string parent;
};
struct InfeasibleParameters : Error {
    using Error::Error;
};

// chaos-stats
struct EmptySeries : Error {
    using Error::Error;
};

// file / spec-string parsing; line is 1-based, 0 when not applicable
struct ParseError : Error {
    explicit ParseError(const std::string& what, std::size_t line_no = 0)
        : Error(what), line(line_no) {}
    std::size_t line;
};

// unknown tree node, bad kappa, ... (CLI exit 5)
struct LookupError : Error {
    using Error::Error;
};

}  // namespace scrambler

#endif
