#include "qcluster/matrix.hpp"

#include <gmpxx.h>

#include <numeric>
#include <sstream>

#include "qcluster/errors.hpp"

namespace qcluster {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix m = *this;
  for (auto& x : m.data_) x = -x;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
  IntMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::int64_t x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += x * b(k, j);
    }
  return p;
}

std::vector<std::int64_t> IntMatrix::column(std::size_t c) const {
  std::vector<std::int64_t> col(rows_);
  for (std::size_t r = 0; r < rows_; ++r) col[r] = (*this)(r, c);
  return col;
}

std::vector<std::int64_t> IntMatrix::apply(const std::vector<std::int64_t>& x) const {
  if (x.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
  std::vector<std::int64_t> y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
  return y;
}

bool IntMatrix::is_skew_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ",";
    os << "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ",";
      os << (*this)(r, c);
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

using QMatrix = std::vector<std::vector<mpq_class>>;

QMatrix to_rational(const IntMatrix& m) {
  QMatrix q(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) q[r][c] = m(r, c);
  return q;
}

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> row_reduce(QMatrix& q, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < q.size(); ++c) {
    std::size_t p = row;
    while (p < q.size() && q[p][c] == 0) ++p;
    if (p == q.size()) continue;
    std::swap(q[p], q[row]);
    const mpq_class inv = 1 / q[row][c];
    for (auto& x : q[row]) x *= inv;
    for (std::size_t r = 0; r < q.size(); ++r) {
      if (r == row || q[r][c] == 0) continue;
      const mpq_class f = q[r][c];
      for (std::size_t k = 0; k < q[r].size(); ++k) q[r][k] -= f * q[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw InternalError("integer overflow in lattice solve");
  return z.get_si();
}

}  // namespace

std::size_t rank(const IntMatrix& m) {
  QMatrix q = to_rational(m);
  return row_reduce(q, m.cols()).size();
}

std::optional<std::vector<std::int64_t>> solve_integer(const IntMatrix& a,
                                                       const std::vector<std::int64_t>& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_integer: rhs size");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  // Column operations H = A U with U unimodular, H in column echelon form.
  std::vector<std::vector<mpz_class>> h(m, std::vector<mpz_class>(n));
  std::vector<std::vector<mpz_class>> u(n, std::vector<mpz_class>(n, 0));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) h[r][c] = a(r, c);
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

  auto col_op = [&](std::size_t dst, std::size_t src, const mpz_class& f) {
    // col[dst] -= f * col[src]
    for (std::size_t r = 0; r < m; ++r) h[r][dst] -= f * h[r][src];
    for (std::size_t r = 0; r < n; ++r) u[r][dst] -= f * u[r][src];
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t r = 0; r < m; ++r) std::swap(h[r][x], h[r][y]);
    for (std::size_t r = 0; r < n; ++r) std::swap(u[r][x], u[r][y]);
  };

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t col = 0;
  for (std::size_t r = 0; r < m && col < n; ++r) {
    // Euclid across columns col..n-1 on row r.
    while (true) {
      std::size_t best = n;
      for (std::size_t c = col; c < n; ++c)
        if (h[r][c] != 0 && (best == n || abs(h[r][c]) < abs(h[r][best]))) best = c;
      if (best == n) break;
      col_swap(col, best);
      bool done = true;
      for (std::size_t c = col + 1; c < n; ++c) {
        if (h[r][c] == 0) continue;
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), h[r][c].get_mpz_t(), h[r][col].get_mpz_t());
        col_op(c, col, f);
        if (h[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (h[r][col] != 0) {
      pivots.emplace_back(r, col);
      ++col;
    }
  }

  // Forward substitution H y = b over the pivots, then check remaining rows.
  std::vector<mpz_class> y(n, 0);
  std::vector<mpz_class> residual(b.begin(), b.end());
  for (const auto& [r, c] : pivots) {
    // Rows between pivots must already be satisfied; checked at the end.
    if (!mpz_divisible_p(residual[r].get_mpz_t(), h[r][c].get_mpz_t())) return std::nullopt;
    mpz_class yc;
    mpz_divexact(yc.get_mpz_t(), residual[r].get_mpz_t(), h[r][c].get_mpz_t());
    y[c] = yc;
    for (std::size_t rr = 0; rr < m; ++rr) residual[rr] -= yc * h[rr][c];
  }
  for (const auto& x : residual)
    if (x != 0) return std::nullopt;

  std::vector<std::int64_t> x(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += u[i][j] * y[j];
    x[i] = to_i64(acc);
  }
  return x;
}

FullRankSolver::FullRankSolver(const IntMatrix& a) : a_(a) {
  const std::size_t n = a.cols();
  // Choose pivot rows greedily by row-reducing the transpose.
  QMatrix t = to_rational(a.transpose());
  std::vector<std::size_t> piv = row_reduce(t, a.rows());
  if (piv.size() != n) throw PreconditionError("matrix does not have full column rank");
  pivot_rows_ = piv;

  // Invert the square block a[pivot_rows_, :] over Q.
  QMatrix aug(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a(pivot_rows_[i], j);
    aug[i][n + i] = 1;
  }
  row_reduce(aug, n);
  mpz_class den = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpz_class d = aug[i][n + j].get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
  den_ = to_i64(den);
  adj_ = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class v = aug[i][n + j] * den;
      adj_(i, j) = to_i64(v.get_num());
    }
}

std::optional<std::vector<std::int64_t>> FullRankSolver::solve(
    const std::vector<std::int64_t>& b) const {
  if (b.size() != a_.rows()) throw DimensionMismatch("FullRankSolver: rhs size");
  const std::size_t n = a_.cols();
  std::vector<std::int64_t> x(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += adj_(i, j) * b[pivot_rows_[j]];
    if (acc % den_ != 0) return std::nullopt;
    x[i] = acc / den_;
  }
  if (a_.apply(x) != b) return std::nullopt;
  return x;
}

}  // namespace qcluster
