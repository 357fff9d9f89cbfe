#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace motifae {

/// Malformed or unusable input data (edge lists, split files, embeddings).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Edge-list syntax error; carries the 1-based line number.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A loss term or parameter became non-finite.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Training produced a non-finite loss at a given iteration.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(std::size_t iteration, const std::string& what)
      : NumericalError("diverged at iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

}  // namespace motifae
