#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace qcluster {

/// Dense row-major integer matrix. Entries are small (seed data, degree
/// vectors); coefficient growth lives in VCoeff, not here.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  IntMatrix operator-() const;
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::vector<std::int64_t> column(std::size_t c) const;
  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const;

  bool is_skew_symmetric() const;

  /// "[[0,-1],[1,0]]"
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Rank over Q.
std::size_t rank(const IntMatrix& m);

/// Some x in Z^cols with a x = b, or nullopt when no integral solution exists.
/// Uses a column-style Hermite reduction; free coordinates are set to zero.
std::optional<std::vector<std::int64_t>> solve_integer(const IntMatrix& a,
                                                       const std::vector<std::int64_t>& b);

/// Exact solver for a x = b where a has full column rank: at most one
/// rational solution exists. Returns it only when it is integral.
class FullRankSolver {
 public:
  explicit FullRankSolver(const IntMatrix& a);

  std::optional<std::vector<std::int64_t>> solve(const std::vector<std::int64_t>& b) const;

 private:
  IntMatrix a_;
  std::vector<std::size_t> pivot_rows_;  // rows forming an invertible square block
  IntMatrix adj_;                        // adjugate-style inverse numerator of that block
  std::int64_t den_ = 1;
};

}  // namespace qcluster
