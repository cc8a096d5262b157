#pragma once
//
// Module      : errors
// Description : exception types shared by all apgabor modules
//

#include <stdexcept>
#include <string>

namespace apgabor {

// invalid numeric argument or out-of-domain input
class argument_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// the window lacks a decay certificate needed by the requested operation
class unsupported_window_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// a truncation certificate could not be met
class precision_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// a structural invariant (e.g. Hermitian symmetry) does not hold
class invariant_violation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void
require(bool cond, const std::string& msg)
{
    if (!cond)
        throw argument_error(msg);
}

}  // namespace detail

}  // namespace apgabor
