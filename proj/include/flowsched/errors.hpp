#pragma once

#include <stdexcept>
#include <string>

namespace flowsched {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad instance data, job sequences that do not partition the
/// jobs, unparsable documents.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A schedule that violates the physical or canonical schedule invariants.
class InvalidSchedule : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// An operation was called outside its precondition (wrong machine count,
/// infeasible genome, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// The request exceeds a configured search-space or magnitude cap.
class InstanceTooLarge : public Error {
public:
    using Error::Error;
};

}  // namespace flowsched
