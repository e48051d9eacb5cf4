#include "qcluster/vcoeff.hpp"

#include <cctype>
#include <sstream>

#include "qcluster/errors.hpp"

namespace qcluster {

VCoeff::VCoeff(long c) {
  if (c != 0) terms_.emplace(0, mpz_class(c));
}

VCoeff::VCoeff(const mpz_class& c) {
  if (c != 0) terms_.emplace(0, c);
}

VCoeff VCoeff::monomial(std::int64_t e, const mpz_class& c) {
  VCoeff r;
  if (c != 0) r.terms_.emplace(e, c);
  return r;
}

bool VCoeff::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 &&
         terms_.begin()->second == 1;
}

bool VCoeff::is_unit() const {
  if (terms_.size() != 1) return false;
  const auto& c = terms_.begin()->second;
  return c == 1 || c == -1;
}

mpz_class VCoeff::coeff(std::int64_t e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

std::int64_t VCoeff::min_exponent() const {
  if (terms_.empty()) throw PreconditionError("min_exponent of zero coefficient");
  return terms_.begin()->first;
}

std::int64_t VCoeff::max_exponent() const {
  if (terms_.empty()) throw PreconditionError("max_exponent of zero coefficient");
  return terms_.rbegin()->first;
}

std::int64_t VCoeff::unit_exponent() const {
  if (!is_unit()) throw NonUnitLeading("coefficient " + to_string() + " is not a unit");
  return terms_.begin()->first;
}

void VCoeff::add_term(std::int64_t e, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

VCoeff VCoeff::operator-() const {
  VCoeff r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

VCoeff& VCoeff::operator+=(const VCoeff& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

VCoeff& VCoeff::operator-=(const VCoeff& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

VCoeff operator*(const VCoeff& a, const VCoeff& b) {
  VCoeff r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

VCoeff& VCoeff::operator*=(const VCoeff& o) { return *this = *this * o; }

VCoeff VCoeff::shifted(std::int64_t e) const {
  VCoeff r;
  for (const auto& [x, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), x + e, c);
  return r;
}

VCoeff VCoeff::bar() const {
  VCoeff r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
  return r;
}

std::optional<VCoeff> VCoeff::exact_div(const VCoeff& divisor) const {
  if (divisor.is_zero()) throw PreconditionError("division by zero coefficient");
  if (is_zero()) return VCoeff{};
  // Quotient exponents are confined to [min(a)-min(d), max(a)-max(d)].
  const std::int64_t lo = min_exponent() - divisor.min_exponent();
  const std::int64_t hi = max_exponent() - divisor.max_exponent();
  if (hi < lo) return std::nullopt;
  const std::int64_t dtop = divisor.max_exponent();
  const mpz_class& dlead = divisor.terms_.rbegin()->second;
  VCoeff rem = *this;
  VCoeff q;
  while (!rem.is_zero()) {
    const std::int64_t e = rem.max_exponent() - dtop;
    if (e < lo || e > hi) return std::nullopt;
    const mpz_class& rlead = rem.terms_.rbegin()->second;
    if (!mpz_divisible_p(rlead.get_mpz_t(), dlead.get_mpz_t())) return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), rlead.get_mpz_t(), dlead.get_mpz_t());
    const VCoeff step = VCoeff::monomial(e, c);
    q += step;
    rem -= step * divisor;
  }
  return q;
}

std::string VCoeff::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "v";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

bool in_m(const VCoeff& c) {
  return c.is_zero() || c.max_exponent() <= -1;
}

bool in_window(const VCoeff& c, std::int64_t lo, std::int64_t hi) {
  return c.is_zero() || (c.min_exponent() >= lo && c.max_exponent() <= hi);
}

VCoeff parse_vcoeff(const std::string& text) {
  // Grammar: term ((" + " | " - ") term)*, term = [-][int*]v[^int] | [-]int
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "0") return {};
  VCoeff result;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("bad coefficient '" + text + "': " + why);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    mpz_class mag = 1;
    bool have_digits = j > i;
    if (have_digits) mag = mpz_class(s.substr(i, j - i));
    i = j;
    std::int64_t e = 0;
    if (i < s.size() && s[i] == '*') ++i;
    if (i < s.size() && s[i] == 'v') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t k = i;
        if (k < s.size() && s[k] == '-') ++k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == i) fail("missing exponent");
        e = std::stoll(s.substr(i, k - i));
        i = k;
      }
    } else if (!have_digits) {
      fail("empty term");
    }
    result += VCoeff::monomial(e, sign * mag);
    if (i < s.size() && s[i] != '+' && s[i] != '-') fail("unexpected character");
  }
  return result;
}

}  // namespace qcluster
