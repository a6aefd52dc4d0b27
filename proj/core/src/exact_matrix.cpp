#include "crgeo/exact_matrix.hpp"

#include <stdexcept>

namespace crgeo {

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n, n);
  for (int k = 0; k < n; ++k) m.at(k, k) = GaussianRational(1);
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("ExactMatrix: size mismatch in product");
  ExactMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("ExactMatrix: size mismatch");
  ExactMatrix r(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
  return r;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("ExactMatrix: size mismatch");
  ExactMatrix r(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
  return r;
}

ExactMatrix ExactMatrix::scaled(const GaussianRational& s) const {
  ExactMatrix r(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * s;
  return r;
}

ExactMatrix ExactMatrix::conj() const {
  ExactMatrix r(rows_, cols_);
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k].conj();
  return r;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

ExactMatrix ExactMatrix::adjoint() const { return transpose().conj(); }

bool ExactMatrix::is_hermitian() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j <= i; ++j)
      if (at(i, j) != at(j, i).conj()) return false;
  return true;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<int> echelon(ExactMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pr = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(r, j));
    GaussianRational inv = m.at(r, c).inverse();
    for (int j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      GaussianRational f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

} // namespace

int ExactMatrix::rank() const {
  ExactMatrix m = *this;
  return static_cast<int>(echelon(m).size());
}

std::vector<std::vector<GaussianRational>> ExactMatrix::nullspace() const {
  ExactMatrix m = *this;
  std::vector<int> pivots = echelon(m);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<std::vector<GaussianRational>> basis;
  for (int f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<GaussianRational> v(cols_);
    v[f] = GaussianRational(1);
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m.at(static_cast<int>(k), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<GaussianRational> ExactMatrix::solve(const std::vector<GaussianRational>& b) const {
  if (rows_ != cols_ || static_cast<int>(b.size()) != rows_)
    throw std::invalid_argument("ExactMatrix::solve: shape mismatch");
  ExactMatrix aug(rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  std::vector<int> pivots = echelon(aug);
  if (static_cast<int>(pivots.size()) != cols_ || (!pivots.empty() && pivots.back() == cols_))
    throw std::domain_error("ExactMatrix::solve: singular system");
  std::vector<GaussianRational> x(cols_);
  for (int i = 0; i < cols_; ++i) x[i] = aug.at(i, cols_);
  return x;
}

Signature ExactMatrix::hermitian_signature() const {
  auto [p, d] = congruence_diagonalize();
  (void)p;
  Signature s;
  for (int k = 0; k < d.cols(); ++k) {
    const mpq_class& v = d.at(k, k).re();
    if (v > 0) ++s.plus;
    else if (v < 0) ++s.minus;
    else ++s.zero;
  }
  return s;
}

std::pair<ExactMatrix, ExactMatrix> ExactMatrix::congruence_diagonalize() const {
  if (!is_hermitian()) throw std::invalid_argument("congruence_diagonalize: input not Hermitian");
  const int n = cols_;
  ExactMatrix a = *this;
  ExactMatrix p = identity(n);

  // Column operation e_c += mu * e_j, mirrored on rows to keep a = p^* M p.
  auto add_col = [&](int c, int j, const GaussianRational& mu) {
    for (int r = 0; r < n; ++r) a.at(r, c) += mu * a.at(r, j);
    GaussianRational mub = mu.conj();
    for (int cc = 0; cc < n; ++cc) a.at(c, cc) += mub * a.at(j, cc);
    for (int r = 0; r < n; ++r) p.at(r, c) += mu * p.at(r, j);
  };
  auto swap_cols = [&](int c, int j) {
    for (int r = 0; r < n; ++r) std::swap(a.at(r, c), a.at(r, j));
    for (int cc = 0; cc < n; ++cc) std::swap(a.at(c, cc), a.at(j, cc));
    for (int r = 0; r < n; ++r) std::swap(p.at(r, c), p.at(r, j));
  };

  for (int k = 0; k < n; ++k) {
    if (a.at(k, k).is_zero()) {
      int dpiv = -1;
      for (int j = k + 1; j < n; ++j)
        if (!a.at(j, j).is_zero()) { dpiv = j; break; }
      if (dpiv >= 0) {
        swap_cols(k, dpiv);
      } else {
        // All remaining diagonal entries vanish; fix up with the first
        // nonzero off-diagonal entry of the trailing block.
        int bi = -1, bj = -1;
        for (int i = k; i < n && bi < 0; ++i)
          for (int j = i + 1; j < n; ++j)
            if (!a.at(i, j).is_zero()) { bi = i; bj = j; break; }
        if (bi < 0) break; // trailing block is zero
        if (bi != k) swap_cols(k, bi);
        // a(k,bj) != 0 still (swap preserved nonzeroity of the pair)
        const GaussianRational& c = a.at(k, bj);
        // e_k += e_j gives diagonal 2*Re(c); e_k += i*e_j gives -2*Im(c).
        if (c.re() != 0) add_col(k, bj, GaussianRational(1));
        else add_col(k, bj, GaussianRational::i());
      }
    }
    if (a.at(k, k).is_zero()) continue;
    GaussianRational piv_inv = a.at(k, k).inverse();
    for (int j = k + 1; j < n; ++j) {
      if (a.at(k, j).is_zero()) continue;
      add_col(j, k, -(piv_inv * a.at(k, j)));
    }
  }

  ExactMatrix d(n, n);
  for (int k = 0; k < n; ++k) d.at(k, k) = a.at(k, k);
  return {p, d};
}

std::vector<GaussianRational> ExactMatrix::apply(const std::vector<GaussianRational>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("ExactMatrix::apply: size");
  std::vector<GaussianRational> r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

} // namespace crgeo
