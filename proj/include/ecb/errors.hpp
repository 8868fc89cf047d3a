#pragma once

#include <stdexcept>
#include <string>

namespace ecb {

// Input outside an operation's mathematical domain (log of zero, zero polynomial height).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller violated a documented precondition. The CLI maps this to exit code 2.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class parse_error : public precondition_error {
public:
    using precondition_error::precondition_error;
};

class singular_curve_error : public precondition_error {
public:
    using precondition_error::precondition_error;
};

// An internal consistency check failed; indicates a bug. The CLI maps this to exit code 3.
class invariant_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ecb
