#pragma once

#include <stdexcept>
#include <string>

namespace cmdf {

// Violated mathematical precondition on a caller-supplied value
// (singular curve, non-squarefree twist factor, j outside the registry, ...).
// The CLI maps this to exit code 3.
class domain_error : public std::runtime_error {
  public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariant: something the library itself guarantees failed
// to hold (non-integral minimal model, height outside {1,2}, ...).
// The CLI maps this to exit code 4.
class internal_error : public std::logic_error {
  public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void check(bool cond, const std::string& what) {
    if (!cond)
        throw domain_error(what);
}

inline void require_invariant(bool cond, const std::string& what) {
    if (!cond)
        throw internal_error(what);
}

} // namespace cmdf
