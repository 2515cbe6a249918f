#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace archetypal {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Rows are observations (n x d).
using DataMatrix = Matrix;
// Rows are archetypes (r x d).
using ArchetypeSet = Matrix;
// Row-stochastic mixture weights (n x r).
using WeightMatrix = Matrix;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Raised when a geometric hypothesis (affine independence, full dimension)
// fails in a way the operation cannot paper over.
class DegeneracyError : public Error {
 public:
  explicit DegeneracyError(const std::string& what, Index found = 0)
      : Error(what), found_(found) {}
  Index found() const { return found_; }

 private:
  Index found_;
};

class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, std::size_t iteration)
      : Error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}
  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " at line " + std::to_string(line)), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Selects the serial reference loop or the OpenMP kernel for batched work.
// Both paths reduce in index order and produce bitwise-identical results.
enum class Exec { serial, parallel };

void require_finite(const Matrix& m, const char* name);
void require_same_columns(const Matrix& a, const Matrix& b, const char* what);

}  // namespace archetypal
