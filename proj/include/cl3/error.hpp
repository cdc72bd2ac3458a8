#ifndef CL3_ERROR_HPP
#define CL3_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cl3 {

/// Failure categories surfaced by the library. The numeric values are part
/// of the C API (see cl3.h) and must stay stable.
enum class ErrorCode : int {
    InvalidArgument = 1,
    InvalidDiscriminant = 2,
    PrecisionFailure = 3,
    UnknownGroup = 4,
    Unsupported = 5,
    NetworkDisabled = 6,
    NetworkFailure = 7,
    ParseError = 8,
    DataIntegrity = 9,
    IoError = 10,
    SearchBoxInsufficient = 11,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace cl3

#endif
