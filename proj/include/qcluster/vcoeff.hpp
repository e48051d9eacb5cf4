#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace qcluster {

/// An element of Z[v, v^-1] with arbitrary-precision integer coefficients.
///
/// Terms are stored sparsely as exponent -> coefficient. Zero coefficients are
/// never stored, so the empty map is the canonical zero and equality is
/// structural.
class VCoeff {
 public:
  using Terms = std::map<std::int64_t, mpz_class>;

  VCoeff() = default;
  VCoeff(long c);  // NOLINT(google-explicit-constructor): integers embed as constants
  explicit VCoeff(const mpz_class& c);

  /// c * v^e
  static VCoeff monomial(std::int64_t e, const mpz_class& c = 1);
  /// v^e
  static VCoeff vpow(std::int64_t e) { return monomial(e); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// True iff this is +-v^a for some a.
  bool is_unit() const;
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of v^e (zero when absent).
  mpz_class coeff(std::int64_t e) const;
  std::int64_t min_exponent() const;
  std::int64_t max_exponent() const;

  /// For a unit +-v^a returns a; throws otherwise.
  std::int64_t unit_exponent() const;

  VCoeff operator-() const;
  VCoeff& operator+=(const VCoeff& o);
  VCoeff& operator-=(const VCoeff& o);
  VCoeff& operator*=(const VCoeff& o);
  friend VCoeff operator+(VCoeff a, const VCoeff& b) { return a += b; }
  friend VCoeff operator-(VCoeff a, const VCoeff& b) { return a -= b; }
  friend VCoeff operator*(const VCoeff& a, const VCoeff& b);
  friend bool operator==(const VCoeff& a, const VCoeff& b) = default;

  /// Multiply by v^e.
  VCoeff shifted(std::int64_t e) const;

  /// v -> v^-1
  VCoeff bar() const;

  /// The q with q * divisor == *this, if it exists in Z[v, v^-1].
  std::optional<VCoeff> exact_div(const VCoeff& divisor) const;

  /// Canonical text: ascending exponents, e.g. "v^-1 + 2*v^3", "0" for zero.
  std::string to_string() const;

 private:
  void add_term(std::int64_t e, const mpz_class& c);
  Terms terms_;
};

/// True iff every exponent is <= -1 (membership in v^-1 Z[v^-1]).
/// The zero coefficient is a member.
bool in_m(const VCoeff& c);

/// True iff every exponent lies in [lo, hi].
bool in_window(const VCoeff& c, std::int64_t lo, std::int64_t hi);

/// Parses the canonical text form produced by VCoeff::to_string.
VCoeff parse_vcoeff(const std::string& text);

}  // namespace qcluster
