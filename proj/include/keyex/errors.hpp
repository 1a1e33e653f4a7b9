#ifndef KEYEX_ERRORS_HPP
#define KEYEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace keyex {

// Error categories map one-to-one onto CLI exit codes (see tools/keyex.cpp).
enum class ErrorKind { io, parse, config, contract };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorKind::io, m) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& m) : Error(ErrorKind::parse, m) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& m) : Error(ErrorKind::config, m) {}
};

// Violated precondition on an API call.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& m) : Error(ErrorKind::contract, m) {}
};

}  // namespace keyex

#endif  // KEYEX_ERRORS_HPP
