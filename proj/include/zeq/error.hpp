#ifndef ZEQ_ERROR_HPP
#define ZEQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace zeq
{

// Error categories double as CLI exit codes.
enum class ErrorKind : int {
    usage = 1,
    precondition = 2,
    inconclusive = 3,
    internal = 4,
};

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept
    {
        return kind_;
    }

private:
    ErrorKind kind_;
};

inline Error precondition_error(const std::string &what)
{
    return Error(ErrorKind::precondition, what);
}

inline Error inconclusive_error(const std::string &what)
{
    return Error(ErrorKind::inconclusive, what);
}

inline Error internal_error(const std::string &what)
{
    return Error(ErrorKind::internal, what);
}

inline Error usage_error(const std::string &what)
{
    return Error(ErrorKind::usage, what);
}

} // namespace zeq

#endif
