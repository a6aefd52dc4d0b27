#ifndef CRGEO_EXACT_MATRIX_HPP
#define CRGEO_EXACT_MATRIX_HPP

#include <utility>
#include <vector>

#include "crgeo/gaussian_rational.hpp"

namespace crgeo {

/// Signature of a Hermitian matrix under congruence.
struct Signature {
  int plus = 0;
  int minus = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

/// Dense matrix over Q(i) with the exact linear algebra the invariant
/// computations need: rank, nullspace, Hermitian signature, congruence
/// diagonalization. No floating point; sizes stay tiny (n is a handful).
class ExactMatrix {
public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

  static ExactMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  GaussianRational& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const GaussianRational& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }

  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix scaled(const GaussianRational& s) const;
  ExactMatrix conj() const;
  ExactMatrix transpose() const;
  /// Conjugate transpose.
  ExactMatrix adjoint() const;

  bool is_hermitian() const;
  bool is_zero() const;

  int rank() const;
  bool invertible() const { return rows_ == cols_ && rank() == cols_; }

  /// Basis of { v : M v = 0 }, one vector per free column of the row echelon
  /// form, deterministic. Vectors have length cols().
  std::vector<std::vector<GaussianRational>> nullspace() const;

  /// Solve M x = b; returns empty optional-like flag via bool. M must be square
  /// invertible.
  std::vector<GaussianRational> solve(const std::vector<GaussianRational>& b) const;

  /// (n_plus, n_minus, n_zero) of a Hermitian matrix, computed by exact
  /// congruence diagonalization. Throws std::invalid_argument on
  /// non-Hermitian input.
  Signature hermitian_signature() const;

  /// Returns (p, d) with p invertible and p^* M p = d diagonal with real
  /// rational entries. Diagonal entries are not scaled to +-1 (that would
  /// need square roots outside Q(i)); the sign pattern carries the signature.
  /// Pivoting is deterministic: first nonzero diagonal entry, else the first
  /// index pair fixed up by adding a column (or i times a column).
  std::pair<ExactMatrix, ExactMatrix> congruence_diagonalize() const;

  std::vector<GaussianRational> apply(const std::vector<GaussianRational>& v) const;

  bool operator==(const ExactMatrix& o) const = default;

private:
  int rows_, cols_;
  std::vector<GaussianRational> e_;
};

} // namespace crgeo

#endif
