#pragma once

#include <stdexcept>
#include <string>

namespace abm {

// Base of the library error taxonomy. kind() is the machine-readable name
// surfaced by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ABM_DECLARE_ERROR(Name)                                              \
    struct Name : Error {                                                    \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}         \
    };

ABM_DECLARE_ERROR(OrderMismatch)
ABM_DECLARE_ERROR(NonUnit)
ABM_DECLARE_ERROR(PrecisionExhausted)
ABM_DECLARE_ERROR(ObstructedSplit)
ABM_DECLARE_ERROR(NonGeometric)
ABM_DECLARE_ERROR(NotRegular)
ABM_DECLARE_ERROR(NotSimplePole)
ABM_DECLARE_ERROR(NoSuchBlock)
ABM_DECLARE_ERROR(InvalidArgument)
ABM_DECLARE_ERROR(UsageError)

#undef ABM_DECLARE_ERROR

// F_0 + (j - lambda) Id is singular at step j of a shifted solve.
struct Resonance : Error {
    Resonance(int j, const std::string& msg) : Error("Resonance", msg), step(j) {}
    int step;
};

struct SyntaxError : Error {
    SyntaxError(std::size_t off, const std::string& msg)
        : Error("SyntaxError", msg), offset(off) {}
    std::size_t offset;
};

}  // namespace abm
