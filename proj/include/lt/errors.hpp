#ifndef LT_ERRORS_HPP
#define LT_ERRORS_HPP

#include <stdexcept>

namespace lt {

// Input outside an operation's stated domain.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A precondition between modules was violated (caller bug, not user input).
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace lt

#endif
