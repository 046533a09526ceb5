#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mochain {

// Categories double as CLI exit-code classes (see tools/cli).
enum class ErrorKind {
  domain,         // precondition on a mathematical argument violated
  numeric,        // convergence / precision budget exhausted
  singular_minor, // zero pivot during Gauss-Borel elimination
  structure,      // band structure violated
  positivity,     // negative transition entry or nonpositive evaluation at 1
  consistency,    // an identity that must hold exactly did not
  sizing,         // truncation too small for the requested query
  parse,          // malformed parameter string or input file
  unsupported,    // operation not defined for this kind of input
  index,          // index outside the truncation
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class NumericError : public Error {
 public:
  NumericError(const std::string& what, double achieved_digits = 0.0)
      : Error(ErrorKind::numeric, what), achieved_digits_(achieved_digits) {}
  double achieved_digits() const noexcept { return achieved_digits_; }

 private:
  double achieved_digits_;
};

class SingularMinorError : public Error {
 public:
  explicit SingularMinorError(std::size_t minor)
      : Error(ErrorKind::singular_minor,
              "leading principal minor of order " + std::to_string(minor) + " vanishes"),
        minor_(minor) {}
  std::size_t minor() const noexcept { return minor_; }

 private:
  std::size_t minor_;
};

class StructureError : public Error {
 public:
  explicit StructureError(const std::string& what) : Error(ErrorKind::structure, what) {}
};

class PositivityError : public Error {
 public:
  explicit PositivityError(const std::string& what) : Error(ErrorKind::positivity, what) {}
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what) : Error(ErrorKind::consistency, what) {}
};

class SizingError : public Error {
 public:
  explicit SizingError(const std::string& what) : Error(ErrorKind::sizing, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(ErrorKind::unsupported, what) {}
};

class IndexError : public Error {
 public:
  explicit IndexError(const std::string& what) : Error(ErrorKind::index, what) {}
};

}  // namespace mochain
