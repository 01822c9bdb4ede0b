#include "specdiv/cyclotomic.hpp"

#include <map>
#include <numeric>

#include "specdiv/errors.hpp"

namespace specdiv {

namespace {

using Poly = std::vector<Rat>;  // coefficient list, low degree first

int poly_deg(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] != 0) return i;
  }
  return -1;
}

void poly_trim(Poly& p) { p.resize(poly_deg(p) + 1); }

/// Exact division with remainder; divisor must be nonzero.
std::pair<Poly, Poly> poly_divmod(Poly num, const Poly& den) {
  int dd = poly_deg(den);
  if (dd < 0) throw InternalError("polynomial division by zero");
  Poly quot(std::max<size_t>(1, num.size()), Rat(0));
  for (int d = poly_deg(num); d >= dd; d = poly_deg(num)) {
    Rat f = num[d] / den[dd];
    quot[d - dd] = f;
    for (int j = 0; j <= dd; ++j) num[d - dd + j] -= f * den[j];
  }
  poly_trim(num);
  poly_trim(quot);
  return {quot, num};
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// Cyclotomic polynomials via Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d.
Poly cyclotomic_polynomial(long m, std::map<long, Poly>& cache) {
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  Poly p(m + 1, Rat(0));
  p[0] = -1;
  p[m] = 1;
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto [q, r] = poly_divmod(p, cyclotomic_polynomial(d, cache));
    if (poly_deg(r) >= 0) throw InternalError("cyclotomic division not exact");
    p = q;
  }
  cache[m] = p;
  return p;
}

}  // namespace

CyclotomicField::CyclotomicField(long m) : m_(m) {
  if (m <= 0) throw InvalidArgument("conductor must be positive");
  std::map<long, Poly> cache;
  phi_ = cyclotomic_polynomial(m, cache);
  degree_ = poly_deg(phi_);
  // Powers of x mod Phi, enough to reduce any product of two residues
  // and any exponent below the conductor.
  long table = std::max(m, 2 * degree_ - 1);
  power_table_.reserve(table);
  std::vector<Rat> cur(degree_, Rat(0));
  if (degree_ > 0) cur[0] = 1;
  power_table_.push_back(cur);
  for (long k = 1; k < table; ++k) {
    std::vector<Rat> nxt(degree_, Rat(0));
    for (long i = 0; i + 1 < degree_; ++i) nxt[i + 1] = cur[i];
    Rat lead = cur.empty() ? Rat(0) : cur[degree_ - 1];
    if (lead != 0) {
      // x * x^{deg-1} = x^deg = -(phi_0 + ... + phi_{deg-1} x^{deg-1})
      for (long i = 0; i < degree_; ++i) nxt[i] -= lead * phi_[i];
    }
    power_table_.push_back(nxt);
    cur = power_table_.back();
  }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::create(long conductor) {
  static std::map<long, std::shared_ptr<const CyclotomicField>> cache;
  auto it = cache.find(conductor);
  if (it != cache.end()) return it->second;
  auto field = std::shared_ptr<const CyclotomicField>(
      new CyclotomicField(conductor));
  cache[conductor] = field;
  return field;
}

CycNumber CyclotomicField::zero() const {
  return CycNumber(shared_from_this(), std::vector<Rat>(degree_, Rat(0)));
}

CycNumber CyclotomicField::one() const { return from_rational(Rat(1)); }

CycNumber CyclotomicField::from_rational(const Rat& r) const {
  std::vector<Rat> c(degree_, Rat(0));
  if (degree_ > 0) c[0] = r;
  if (degree_ == 0) throw InternalError("degenerate cyclotomic field");
  return CycNumber(shared_from_this(), c);
}

CycNumber CyclotomicField::root_of_unity(long num, long den) const {
  if (den <= 0) throw InvalidArgument("root_of_unity: nonpositive order");
  if (m_ % den != 0) {
    throw InvalidArgument("root_of_unity: order " + std::to_string(den) +
                          " does not divide conductor " + std::to_string(m_));
  }
  long k = ((num % den) + den) % den * (m_ / den);
  return CycNumber(shared_from_this(), power_table_[k]);
}

CycNumber::CycNumber(std::shared_ptr<const CyclotomicField> field,
                     std::vector<Rat> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  if (static_cast<long>(c_.size()) != field_->degree()) {
    throw InternalError("cyclotomic coefficient vector of wrong length");
  }
}

bool CycNumber::is_zero() const {
  for (const auto& v : c_) {
    if (v != 0) return false;
  }
  return true;
}

bool CycNumber::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

Rat CycNumber::rational_value() const {
  if (!is_rational()) throw InternalError("cyclotomic value is not rational");
  return c_.empty() ? Rat(0) : c_[0];
}

namespace {
const CycNumber& pick_nonnull(const CycNumber& a, const CycNumber& b) {
  return a.field() ? a : b;
}
void check_fields(const CycNumber& a, const CycNumber& b) {
  if (a.field() && b.field() &&
      a.field()->conductor() != b.field()->conductor()) {
    throw InternalError("mixed cyclotomic conductors in arithmetic");
  }
}
}  // namespace

CycNumber CycNumber::operator+(const CycNumber& o) const {
  check_fields(*this, o);
  if (!field_) return o;
  if (!o.field_) return *this;
  std::vector<Rat> c(c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return CycNumber(field_, std::move(c));
}

CycNumber CycNumber::operator-(const CycNumber& o) const {
  return *this + (-o);
}

CycNumber CycNumber::operator-() const {
  if (!field_) return {};
  std::vector<Rat> c(c_);
  for (auto& v : c) v = -v;
  return CycNumber(field_, std::move(c));
}

CycNumber CycNumber::operator*(const CycNumber& o) const {
  check_fields(*this, o);
  if (!field_ || !o.field_) return {};
  long deg = field_->degree();
  std::vector<Rat> conv(2 * deg - 1, Rat(0));
  for (long i = 0; i < deg; ++i) {
    if (c_[i] == 0) continue;
    for (long j = 0; j < deg; ++j) {
      if (o.c_[j] == 0) continue;
      conv[i + j] += c_[i] * o.c_[j];
    }
  }
  std::vector<Rat> out(deg, Rat(0));
  for (long k = 0; k < static_cast<long>(conv.size()); ++k) {
    if (conv[k] == 0) continue;
    if (k < deg) {
      out[k] += conv[k];
    } else {
      const auto& pw = field_->power(k);
      for (long i = 0; i < deg; ++i) out[i] += conv[k] * pw[i];
    }
  }
  return CycNumber(field_, std::move(out));
}

CycNumber CycNumber::operator*(const Rat& r) const {
  if (!field_) return {};
  std::vector<Rat> c(c_);
  for (auto& v : c) v *= r;
  return CycNumber(field_, std::move(c));
}

CycNumber CycNumber::inverse() const {
  if (!field_ || is_zero()) throw InvalidArgument("inverse of zero");
  // Extended Euclid in Q[x] against the cyclotomic polynomial.
  Poly a(c_.begin(), c_.end());
  poly_trim(a);
  Poly b = field_->phi_;
  Poly s0{Rat(1)}, s1{};
  while (poly_deg(b) >= 0) {
    auto [q, r] = poly_divmod(a, b);
    Poly qs = poly_mul(q, s1);
    Poly s2(std::max(s0.size(), qs.size()), Rat(0));
    for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    poly_trim(s2);
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (poly_deg(a) != 0) {
    throw InternalError("cyclotomic inverse: gcd with Phi_m not constant");
  }
  // a is the gcd (a nonzero constant); s0 * this = a mod Phi.
  if (static_cast<long>(s0.size()) > field_->degree()) {
    s0 = poly_divmod(s0, field_->phi_).second;
  }
  std::vector<Rat> out(field_->degree(), Rat(0));
  for (size_t i = 0; i < s0.size(); ++i) out[i] = s0[i] / a[0];
  return CycNumber(field_, std::move(out));
}

bool CycNumber::operator==(const CycNumber& o) const {
  check_fields(*this, o);
  if (!field_) return o.is_zero();
  if (!o.field_) return is_zero();
  return c_ == o.c_;
}

}  // namespace specdiv
