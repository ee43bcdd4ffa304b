#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace strata {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Formula-source syntax error with 1-based position and the token set the
// parser would have accepted at that point.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col,
             std::vector<std::string> expected = {})
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(col) + ")"),
        line_(line),
        col_(col),
        expected_(std::move(expected)) {}

  int line() const { return line_; }
  int col() const { return col_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int col_;
  std::vector<std::string> expected_;
};

// Structure-file and brace-notation format problems.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Structure invariant violations found at load time (automorphism,
// injectivity, dangling ids). `code` is a stable machine tag, `a`/`b` the
// offending pair where applicable.
class ValidationError : public Error {
 public:
  ValidationError(std::string code, const std::string& msg, std::string a = "",
                  std::string b = "")
      : Error(msg), code_(std::move(code)), a_(std::move(a)), b_(std::move(b)) {}

  const std::string& code() const { return code_; }
  const std::string& a() const { return a_; }
  const std::string& b() const { return b_; }

 private:
  std::string code_, a_, b_;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class TypingError : public Error {
 public:
  using Error::Error;
};

class TranslateError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace strata
