#ifndef SPSYS_ERRORS_HPP
#define SPSYS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spsys
{

// Base of every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error
{
public:
    using Error::Error;
};

// A documented precondition of an operation does not hold for its input.
class PreconditionError : public Error
{
public:
    using Error::Error;
};

// Triple data whose E3 does not match the normal form forced by E2.
class NotSubproductTripleError : public Error
{
public:
    using Error::Error;
};

// Chain with a rank-0 factor; only ranks 1 and 2 have a normal form.
class UnclassifiedChainError : public Error
{
public:
    using Error::Error;
};

// Kernel inclusion failed while extending a morphism level by level.
class NotExtendableError : public Error
{
public:
    using Error::Error;
};

// Input document that does not match the expected JSON schema.
class FormatError : public Error
{
public:
    using Error::Error;
};

// Failure inside the classification pipeline, tagged with the stage name.
class PipelineError : public Error
{
public:
    PipelineError(std::string stage, const std::string &what)
        : Error(stage + ": " + what), m_stage(std::move(stage))
    {
    }

    const std::string &stage() const noexcept
    {
        return m_stage;
    }

private:
    std::string m_stage;
};

} // namespace spsys

#endif
