#include "qcluster/qtorus.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qcluster/errors.hpp"

namespace qcluster {

ExpVec ExpVec::unit(std::size_t dim, std::size_t i) {
  ExpVec e(dim);
  e.v_.at(i) = 1;
  return e;
}

bool ExpVec::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](std::int64_t x) { return x == 0; });
}

ExpVec& ExpVec::operator+=(const ExpVec& o) {
  if (o.dim() != dim()) throw DimensionMismatch("ExpVec dimension mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

ExpVec& ExpVec::operator-=(const ExpVec& o) {
  if (o.dim() != dim()) throw DimensionMismatch("ExpVec dimension mismatch");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

ExpVec ExpVec::operator-() const {
  ExpVec r = *this;
  for (auto& x : r.v_) x = -x;
  return r;
}

ExpVec operator*(std::int64_t k, ExpVec a) {
  for (auto& x : a.v_) x *= k;
  return a;
}

std::string ExpVec::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) os << ",";
    os << v_[i];
  }
  os << "]";
  return os.str();
}

ExpVec positive_part(const ExpVec& x) {
  ExpVec r = x;
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] = std::max<std::int64_t>(0, r[i]);
  return r;
}

std::int64_t bilinear(const IntMatrix& lambda, const ExpVec& a, const ExpVec& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n || lambda.rows() != n || lambda.cols() != n)
    throw DimensionMismatch("bilinear form dimension mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < n; ++j) row += lambda(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

QTElem QTElem::monomial(const ExpVec& m, const VCoeff& c) {
  QTElem r(m.dim());
  if (!c.is_zero()) r.terms_.emplace(m, c);
  return r;
}

VCoeff QTElem::coeff(const ExpVec& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? VCoeff{} : it->second;
}

std::vector<ExpVec> QTElem::support() const {
  std::vector<ExpVec> s;
  s.reserve(terms_.size());
  for (const auto& [m, c] : terms_) s.push_back(m);
  return s;
}

const std::pair<const ExpVec, VCoeff>& QTElem::lex_leading() const {
  if (terms_.empty()) throw PreconditionError("leading term of zero element");
  return *terms_.rbegin();
}

const std::pair<const ExpVec, VCoeff>& QTElem::lex_trailing() const {
  if (terms_.empty()) throw PreconditionError("trailing term of zero element");
  return *terms_.begin();
}

void QTElem::add_term(const ExpVec& m, const VCoeff& c) {
  if (m.dim() != dim_) throw DimensionMismatch("term dimension mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void QTElem::check_dim(const QTElem& o) const {
  if (o.dim_ != dim_)
    throw DimensionMismatch("quantum torus elements of dimension " + std::to_string(dim_) +
                            " and " + std::to_string(o.dim_));
}

QTElem QTElem::operator-() const {
  QTElem r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

QTElem& QTElem::operator+=(const QTElem& o) {
  check_dim(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

QTElem& QTElem::operator-=(const QTElem& o) {
  check_dim(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

QTElem QTElem::scaled(const VCoeff& c) const {
  QTElem r(dim_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : terms_) r.add_term(m, x * c);
  return r;
}

std::string QTElem::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (!c.is_one()) os << "(" << c.to_string() << ")*";
    os << "X" << m.to_string();
  }
  return os.str();
}

QTElem add(const QTElem& a, const QTElem& b) { return a + b; }

QTElem commutative_mul(const QTElem& a, const QTElem& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("commutative_mul dimension mismatch");
  QTElem r(a.dim());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.add_term(ma + mb, ca * cb);
  return r;
}

QTElem twisted_mul(const QTElem& a, const QTElem& b, const IntMatrix& lambda) {
  if (a.dim() != b.dim()) throw DimensionMismatch("twisted_mul dimension mismatch");
  if (lambda.rows() != a.dim() || lambda.cols() != a.dim())
    throw DimensionMismatch("twisted_mul: Lambda has wrong size");
  QTElem r(a.dim());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      r.add_term(ma + mb, (ca * cb).shifted(bilinear(lambda, ma, mb)));
  return r;
}

QTElem twisted_pow(const QTElem& a, std::int64_t k, const IntMatrix& lambda) {
  if (k < 0) throw PreconditionError("twisted_pow with negative exponent");
  QTElem r = QTElem::one(a.dim());
  for (std::int64_t i = 0; i < k; ++i) r = twisted_mul(r, a, lambda);
  return r;
}

QTElem bar(const QTElem& a) {
  QTElem r(a.dim());
  for (const auto& [m, c] : a.terms()) r.add_term(m, c.bar());
  return r;
}

QTElem exact_divide(const QTElem& numerator, const QTElem& divisor, const IntMatrix& lambda) {
  if (numerator.dim() != divisor.dim()) throw DimensionMismatch("exact_divide dimension mismatch");
  if (divisor.is_zero()) throw PreconditionError("exact_divide by zero");
  const std::size_t n = numerator.dim();
  QTElem q(n);
  if (numerator.is_zero()) return q;

  // Coordinate box for quotient exponents: per coordinate, min and max add
  // under products of Laurent polynomials.
  auto bounds = [n](const QTElem& z) {
    ExpVec lo(n), hi(n);
    bool first = true;
    for (const auto& [m, c] : z.terms()) {
      for (std::size_t i = 0; i < n; ++i) {
        if (first || m[i] < lo[i]) lo[i] = m[i];
        if (first || m[i] > hi[i]) hi[i] = m[i];
      }
      first = false;
    }
    return std::pair{lo, hi};
  };
  const auto [nlo, nhi] = bounds(numerator);
  const auto [dlo, dhi] = bounds(divisor);
  const ExpVec qlo = nlo - dlo;
  const ExpVec qhi = nhi - dhi;
  auto in_box = [&](const ExpVec& e) {
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] < qlo[i] || e[i] > qhi[i]) return false;
    return true;
  };

  const auto& [dm, dc] = divisor.lex_leading();
  QTElem rem = numerator;
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.lex_leading();
    const ExpVec e = rm - dm;
    if (!in_box(e))
      throw NotDivisible("exact_divide: remainder term " + rm.to_string() +
                         " cannot be cancelled");
    const VCoeff twist = dc.shifted(bilinear(lambda, e, dm));
    auto c = rc.exact_div(twist);
    if (!c) throw NotDivisible("exact_divide: coefficient " + rc.to_string() +
                               " not divisible by " + twist.to_string());
    const QTElem step = QTElem::monomial(e, *c);
    q += step;
    rem -= twisted_mul(step, divisor, lambda);
  }
  return q;
}

QTElem parse_qtelem(const std::string& text, std::size_t dim) {
  QTElem r(dim);
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "0") return r;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("bad element '" + text + "': " + why);
  };
  while (i < s.size()) {
    if (s[i] == '+') ++i;
    VCoeff c(1);
    if (s[i] == '(') {
      std::size_t close = s.find(')', i);
      if (close == std::string::npos) fail("unclosed coefficient");
      c = parse_vcoeff(s.substr(i + 1, close - i - 1));
      i = close + 1;
      if (i >= s.size() || s[i] != '*') fail("expected '*'");
      ++i;
    }
    if (s.compare(i, 2, "X[") != 0) fail("expected X[");
    std::size_t close = s.find(']', i);
    if (close == std::string::npos) fail("unclosed exponent");
    std::vector<std::int64_t> e;
    std::stringstream ss(s.substr(i + 2, close - i - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) e.push_back(std::stoll(tok));
    if (e.size() != dim) fail("exponent has wrong dimension");
    r.add_term(ExpVec(std::move(e)), c);
    i = close + 1;
  }
  return r;
}

}  // namespace qcluster
