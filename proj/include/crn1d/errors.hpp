#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crn1d {

/// Base of every error raised by the library. `kind()` is the stable,
/// machine-readable tag written into reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

  /// Model errors are properties of a well-formed input (exit code 2);
  /// everything else is an input or usage problem (exit code 1).
  virtual bool is_model_error() const noexcept { return true; }

 private:
  std::string kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("ParseError", std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  bool is_model_error() const noexcept override { return false; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Malformed parameter or configuration input.
class InputError : public Error {
 public:
  explicit InputError(const std::string& message) : Error("InputError", message) {}
  bool is_model_error() const noexcept override { return false; }
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& message) : Error("DimensionMismatch", message) {}
  bool is_model_error() const noexcept override { return false; }
};

class NotOneDimensional : public Error {
 public:
  explicit NotOneDimensional(std::size_t rank)
      : Error("NotOneDimensional",
              "stoichiometric subspace has dimension " + std::to_string(rank) + ", expected 1"),
        rank_(rank) {}
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

/// The index set H is empty: zero or infinitely many positive steady states.
class HEmpty : public Error {
 public:
  HEmpty() : Error("HEmpty", "index set H is empty; zero or infinitely many positive steady states") {}
};

class NoTau : public Error {
 public:
  NoTau() : Error("NoTau", "no index in H with A_k > 0 attains the left endpoint of I") {}
};

class NotWellDefined : public Error {
 public:
  explicit NotWellDefined(const std::string& where)
      : Error("NotWellDefined", "P_ell vanishes at " + where) {}
};

class InfinitelyMany : public Error {
 public:
  InfinitelyMany()
      : Error("InfinitelyMany", "q vanishes identically on a nonempty interval; infinitely many steady states") {}
};

class NotTwoReactions : public Error {
 public:
  explicit NotTwoReactions(std::size_t m)
      : Error("NotTwoReactions", "two-reaction shortcut needs m = 2, got " + std::to_string(m)) {}
};

class SearchFailed : public Error {
 public:
  explicit SearchFailed(const std::string& delta_min)
      : Error("SearchFailed", "no perturbation validated down to delta = " + delta_min) {}
};

class IllConditioned : public Error {
 public:
  explicit IllConditioned(const std::string& message) : Error("IllConditioned", message) {}
};

}  // namespace crn1d
