#pragma once

#include <stdexcept>
#include <string>

namespace pzf_udn {

// Invalid argument values (out of the documented domain of an operation).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The requested quantity has no definition at these arguments (e.g. the
// closed-form lower bound outside its validity window). Distinct from
// DomainError so callers can treat "skip this point" separately from
// "the inputs are malformed".
class NotDefinedError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An algorithm failed to produce a trustworthy value (series cap hit,
// assertion on a computed result violated, ...). Carries enough context
// to identify the failing parameter point.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Combiner projection collapsed (near-aligned channel draw). Trials hitting
// this are redrawn; estimate_success fails if too many do.
class DegenerateProjection : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace pzf_udn
