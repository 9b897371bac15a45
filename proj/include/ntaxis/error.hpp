#pragma once

#include <stdexcept>
#include <string>

namespace ntaxis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
   using std::runtime_error::runtime_error;
};

/// Raised by step() when the explicit update would leave u < 0 or v <= 0.
/// The caller is expected to retry with a smaller time step.
class StepRejected : public Error
{
public:
   explicit StepRejected(const std::string& what) : Error(what) {}
};

/// Non-finite values appeared during a step or dt estimate.
class BlowUp : public Error
{
public:
   explicit BlowUp(const std::string& what) : Error(what) {}
};

} // namespace ntaxis
