#pragma once

#include <stdexcept>
#include <string>

namespace ebit {

// Machine-checkable failure categories. Anything raised against user-supplied
// data (bad dimensions, broken invariants, malformed files) maps to a category
// a caller can branch on; the message always names the violated condition.
enum class errc {
    dimension_mismatch,   // operands' dims are incompatible
    kind_mismatch,        // pure state combined with a density matrix
    invariant_violation,  // normalization / hermiticity / positivity broken
    parse_error,          // malformed input file or field
    cap_exceeded,         // enumeration or dimension cap exceeded
    rank_mismatch,        // operation requires equal Schmidt ranks
    not_pure,             // mixed input where a pure state is required
    non_positive_entropy, // entanglement temperature needs S_e > 0
    not_trace_preserving, // channel fails the completeness relation
    out_of_range,         // scalar argument outside its documented domain
    io_error,             // missing or unreadable file
};

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace ebit
