#ifndef DJET_ERROR_HPP
#define DJET_ERROR_HPP

#include <stdexcept>
#include <string>

namespace djet {

enum class ErrorKind {
    Usage,        // bad arguments, malformed input text
    Arithmetic,   // violated precondition (non-divisibility, ring mismatch, ...)
    Verification, // an identity the theory guarantees failed (bug detector)
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_usage(const std::string& msg) {
    throw Error(ErrorKind::Usage, msg);
}
[[noreturn]] inline void fail_arith(const std::string& msg) {
    throw Error(ErrorKind::Arithmetic, msg);
}
[[noreturn]] inline void fail_verify(const std::string& msg) {
    throw Error(ErrorKind::Verification, msg);
}

} // namespace djet

#endif
