#ifndef WM_ERROR_HPP
#define WM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wm {

// Error taxonomy shared by the core and the C API layer.
enum class ErrorCode {
    argument,     // bad parameter value or precondition violation
    io,           // file could not be read/written
    format,       // file exists but cannot be parsed / unsupported encoding
    dimension,    // shape mismatch between operands
    numeric,      // numerical routine failed or non-finite data
    degenerate,   // result undefined for this input (e.g. zero-energy NC)
    unsupported,  // requested a capability that does not exist
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace wm

#endif
