#ifndef PCROT_ERRORS_HPP
#define PCROT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pcrot {

/// A system violates the contract ||A|| < 1, A invertible.
struct invalid_system : std::runtime_error {
  explicit invalid_system(const std::string& what) : std::runtime_error(what) {}
};

/// A point lies outside the domain required by the operation.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct singular_matrix : std::runtime_error {
  explicit singular_matrix(const std::string& what) : std::runtime_error(what) {}
};

/// Bounded-arithmetic error radius exceeded the caller's ceiling.
struct precision_exhausted : std::runtime_error {
  explicit precision_exhausted(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pcrot

#endif
