#ifndef QINEQ_ERRORS_HPP
#define QINEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qineq {

// Domain or precondition violation (bad q, b_j outside [0,1), z = 0 where
// the function is undefined, ...).
class invalid_argument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A product or series did not reach its stopping criterion inside the
// iteration cap.
class non_convergent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Laurent series evaluated at its own expansion point.
class center_pole : public invalid_argument {
public:
    using invalid_argument::invalid_argument;
};

} // namespace qineq

#endif // QINEQ_ERRORS_HPP
