#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "reebinv/rational.hpp"

namespace reebinv {

/// Small dense matrix over the rationals. Row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix operator+(const RationalMatrix& other) const;
  RationalMatrix operator-(const RationalMatrix& other) const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  bool operator==(const RationalMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> row_reduce(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

/// Basis of {x : m x = 0}, one vector per free column (free variable set to 1).
std::vector<std::vector<Rational>> nullspace(RationalMatrix m);

/// Solution of the affine system m x = rhs.
struct AffineSolution {
  std::vector<Rational> particular;              ///< free variables set to 0
  std::vector<std::vector<Rational>> homogeneous;  ///< nullspace basis
};

/// Returns nullopt when the system is inconsistent.
std::optional<AffineSolution> solve_affine(const RationalMatrix& m, const std::vector<Rational>& rhs);

}  // namespace reebinv
