#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcluster/matrix.hpp"
#include "qcluster/vcoeff.hpp"

namespace qcluster {

/// Exponent vector m in Z^I, indexing the Laurent monomial X^m.
///
/// The natural ordering is lexicographic on the entries in index order; it is
/// a total group order and is the term order used by exact division.
class ExpVec {
 public:
  ExpVec() = default;
  explicit ExpVec(std::size_t dim) : v_(dim, 0) {}
  explicit ExpVec(std::vector<std::int64_t> entries) : v_(std::move(entries)) {}
  ExpVec(std::initializer_list<std::int64_t> entries) : v_(entries) {}

  /// The unit vector f_i.
  static ExpVec unit(std::size_t dim, std::size_t i);

  std::size_t dim() const { return v_.size(); }
  std::int64_t operator[](std::size_t i) const { return v_[i]; }
  std::int64_t& operator[](std::size_t i) { return v_[i]; }
  const std::vector<std::int64_t>& entries() const { return v_; }

  bool is_zero() const;

  ExpVec& operator+=(const ExpVec& o);
  ExpVec& operator-=(const ExpVec& o);
  friend ExpVec operator+(ExpVec a, const ExpVec& b) { return a += b; }
  friend ExpVec operator-(ExpVec a, const ExpVec& b) { return a -= b; }
  ExpVec operator-() const;
  friend ExpVec operator*(std::int64_t k, ExpVec a);

  friend bool operator==(const ExpVec&, const ExpVec&) = default;
  friend auto operator<=>(const ExpVec&, const ExpVec&) = default;

  /// "[1,-1]"
  std::string to_string() const;

 private:
  std::vector<std::int64_t> v_;
};

/// [x]_+ componentwise.
ExpVec positive_part(const ExpVec& x);

/// lambda(a, b) = a^T Lambda b.
std::int64_t bilinear(const IntMatrix& lambda, const ExpVec& a, const ExpVec& b);

/// Sparse element of the quantum torus: a finite sum of c_m X^m, c_m in Z[v^+-1].
///
/// Values are immutable in spirit; the mutating operators exist for building
/// results locally. No zero coefficient is ever stored.
class QTElem {
 public:
  using Terms = std::map<ExpVec, VCoeff>;

  QTElem() = default;
  explicit QTElem(std::size_t dim) : dim_(dim) {}

  static QTElem zero(std::size_t dim) { return QTElem(dim); }
  static QTElem one(std::size_t dim) { return monomial(ExpVec(dim)); }
  static QTElem monomial(const ExpVec& m, const VCoeff& c = VCoeff(1));

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  VCoeff coeff(const ExpVec& m) const;
  /// Key set of the terms.
  std::vector<ExpVec> support() const;

  /// Lexicographically largest / smallest term.
  const std::pair<const ExpVec, VCoeff>& lex_leading() const;
  const std::pair<const ExpVec, VCoeff>& lex_trailing() const;

  void add_term(const ExpVec& m, const VCoeff& c);

  QTElem operator-() const;
  QTElem& operator+=(const QTElem& o);
  QTElem& operator-=(const QTElem& o);
  friend QTElem operator+(QTElem a, const QTElem& b) { return a += b; }
  friend QTElem operator-(QTElem a, const QTElem& b) { return a -= b; }
  friend bool operator==(const QTElem&, const QTElem&) = default;

  /// Multiply every coefficient by c.
  QTElem scaled(const VCoeff& c) const;

  /// Canonical text, lex-sorted terms: "X[-1,0] + (v^-1)*X[0,0]", "0" for zero.
  std::string to_string() const;

 private:
  void check_dim(const QTElem& o) const;

  std::size_t dim_ = 0;
  Terms terms_;
};

QTElem add(const QTElem& a, const QTElem& b);

/// The commutative product: X^m . X^m' = X^{m+m'}.
QTElem commutative_mul(const QTElem& a, const QTElem& b);

/// The twisted product: X^m * X^m' = v^{lambda(m,m')} X^{m+m'}.
QTElem twisted_mul(const QTElem& a, const QTElem& b, const IntMatrix& lambda);

/// Twisted power a^{*k}, k >= 0.
QTElem twisted_pow(const QTElem& a, std::int64_t k, const IntMatrix& lambda);

/// Bar involution v -> v^-1 on coefficients of the commutative presentation.
QTElem bar(const QTElem& a);

/// Returns q with twisted_mul(q, divisor) == numerator.
///
/// Repeatedly cancels the lex-leading term of the remainder against the
/// lex-leading term of the divisor. Quotient exponents are confined to the
/// coordinate box forced by the Newton polytopes, so the loop terminates.
/// Throws NotDivisible when no Laurent quotient exists.
QTElem exact_divide(const QTElem& numerator, const QTElem& divisor, const IntMatrix& lambda);

/// Parses the text form written by QTElem::to_string.
QTElem parse_qtelem(const std::string& text, std::size_t dim);

}  // namespace qcluster
