#include "specdiv/qeta.hpp"

#include <algorithm>
#include <numeric>

#include "specdiv/divisors.hpp"
#include "specdiv/errors.hpp"
#include "specdiv/invariants.hpp"

namespace specdiv {

namespace {

CycNumber root_of(const std::shared_ptr<const CyclotomicField>& field,
                  const Rat& r) {
  Rat v = rat_mod1(r);
  return field->root_of_unity(v.get_num().get_si(), v.get_den().get_si());
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

void prune_zeros(PuiseuxSeries& s) {
  for (auto it = s.terms.begin(); it != s.terms.end();) {
    it = it->second.is_zero() ? s.terms.erase(it) : std::next(it);
  }
}

Rat lead_exponent_or(const PuiseuxSeries& s, const Rat& fallback) {
  return s.terms.empty() ? fallback : s.terms.begin()->first;
}

// mpq_class equality (mpq_equal) silently requires canonical fractions,
// so normalize every rational that enters a series from the outside.
Rat canon(Rat v) {
  v.canonicalize();
  return v;
}

}  // namespace

PuiseuxSeries series_monomial(std::shared_ptr<const CyclotomicField> field,
                              const Rat& exponent, const CycNumber& coeff,
                              const Rat& truncation) {
  PuiseuxSeries s{std::move(field), canon(truncation), {}};
  if (exponent <= truncation && !coeff.is_zero()) s.terms[canon(exponent)] = coeff;
  return s;
}

PuiseuxSeries series_add(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  PuiseuxSeries out{a.field ? a.field : b.field,
                    std::min(a.truncation, b.truncation),
                    {}};
  for (const auto& [e, c] : a.terms) {
    if (e <= out.truncation) out.terms[e] = c;
  }
  for (const auto& [e, c] : b.terms) {
    if (e > out.truncation) continue;
    auto [it, fresh] = out.terms.emplace(e, c);
    if (!fresh) it->second = it->second + c;
  }
  prune_zeros(out);
  return out;
}

PuiseuxSeries series_mul(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  Rat la = lead_exponent_or(a, a.truncation);
  Rat lb = lead_exponent_or(b, b.truncation);
  PuiseuxSeries out{a.field ? a.field : b.field,
                    std::min(a.truncation + lb, b.truncation + la),
                    {}};
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      Rat e = ea + eb;
      if (e > out.truncation) continue;
      CycNumber term = ca * cb;
      auto [it, fresh] = out.terms.emplace(std::move(e), term);
      if (!fresh) it->second = it->second + term;
    }
  }
  prune_zeros(out);
  return out;
}

PuiseuxSeries series_scale(const PuiseuxSeries& a, const CycNumber& c) {
  PuiseuxSeries out{a.field, a.truncation, {}};
  for (const auto& [e, v] : a.terms) out.terms[e] = v * c;
  prune_zeros(out);
  return out;
}

PuiseuxSeries series_pow(const PuiseuxSeries& a, long e) {
  if (e < 1) throw InvalidArgument("series_pow: exponent must be positive");
  PuiseuxSeries acc = a;
  long done = 1;
  while (done * 2 <= e) {
    acc = series_mul(acc, acc);
    done *= 2;
  }
  for (; done < e; ++done) acc = series_mul(acc, a);
  return acc;
}

bool series_equal(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  Rat t = std::min(a.truncation, b.truncation);
  auto skip = [&t](auto it, auto end) {
    while (it != end && it->first <= t && it->second.is_zero()) ++it;
    return it != end && it->first <= t ? it : end;
  };
  auto ia = skip(a.terms.begin(), a.terms.end());
  auto ib = skip(b.terms.begin(), b.terms.end());
  while (ia != a.terms.end() && ib != b.terms.end()) {
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    ia = skip(std::next(ia), a.terms.end());
    ib = skip(std::next(ib), b.terms.end());
  }
  return ia == a.terms.end() && ib == b.terms.end();
}

std::pair<Rat, CycNumber> series_lead(const PuiseuxSeries& a) {
  if (a.terms.empty()) throw InvalidArgument("series_lead: no terms");
  return {a.terms.begin()->first, a.terms.begin()->second};
}

PuiseuxSeries eta_expansion(const Rat& alpha, const Rat& beta,
                            const Rat& truncation, long conductor) {
  if (alpha <= 0) throw InvalidArgument("eta_expansion: alpha must be > 0");
  if (truncation < alpha / 24) {
    throw InvalidArgument("eta_expansion: truncation below leading exponent");
  }
  if (conductor == 0) {
    conductor = std::lcm(24L, 24 * beta.get_den().get_si());
  }
  auto field = CyclotomicField::create(conductor);
  Rat lead = canon(alpha / 24);
  Rat rel_trunc = canon(truncation) - lead;
  // Euler product over relative exponents; factors beyond the
  // truncation cannot affect tracked terms.
  std::map<Rat, CycNumber> rel;
  rel[Rat(0)] = field->one();
  for (long n = 1; Rat(n) * alpha <= rel_trunc; ++n) {
    CycNumber r = root_of(field, Rat(n) * beta);
    Rat shift = canon(Rat(n) * alpha);
    std::map<Rat, CycNumber> next = rel;
    for (const auto& [e, c] : rel) {
      Rat e2 = e + shift;
      if (e2 > rel_trunc) continue;
      CycNumber term = -(r * c);
      auto [it, fresh] = next.emplace(std::move(e2), term);
      if (!fresh) it->second = it->second + term;
    }
    for (auto it = next.begin(); it != next.end();) {
      it = it->second.is_zero() ? next.erase(it) : std::next(it);
    }
    rel = std::move(next);
  }
  PuiseuxSeries out{field, canon(truncation), {}};
  CycNumber front = root_of(field, beta / 24);
  for (const auto& [e, c] : rel) out.terms[e + lead] = front * c;
  return out;
}

std::pair<EtaFactor, EtaFactor> psi_factors(const DiscriminantForm& form,
                                            const CuspLabel& label) {
  long N = form.N(), Np = form.Nprime();
  long c = std::abs(label.c);
  // Parameters of the two eta factors, chosen so that the divisor of the
  // product is proportional to the intersection counts with the type of
  // the cusp (constant 1/24 per boundary component).  The scaling of the
  // shifted factor depends only on gcd(c, N), corrected by the part of N'
  // still dividing the cofactor; the plain factor is scaled by gcd of c
  // with the complementary level N/N'.
  long gN = c == 0 ? N : std::gcd(c, N);
  long D = std::gcd(Np, N / gN);
  Rat alpha_shift = canon(Rat(gN, D));
  Rat beta_shift(0);
  if (c != 0) {
    // Strip from c every prime dividing N'; the remaining cofactor fixes
    // the constant shift of the eta argument, with the same denominator
    // as the scaling correction.
    long ct = c;
    for (long p = 2, n = Np; n > 1; ++p) {
      if (n % p != 0) continue;
      while (n % p == 0) n /= p;
      while (ct % p == 0) ct /= p;
    }
    beta_shift = rat_mod1(Rat(-label.a * ct, D));
  }
  long gm = c == 0 ? N / Np : std::gcd(N / Np, c);
  EtaFactor shifted{alpha_shift, canon(beta_shift), 1};
  EtaFactor plain{Rat(gm), Rat(0), 1};
  if (label.star == 1) return {shifted, plain};
  return {plain, shifted};
}

std::pair<PuiseuxSeries, PuiseuxSeries> psi_expansion(
    const DiscriminantForm& form, const CuspLabel& label,
    const Rat& truncation, long conductor) {
  if (conductor == 0) conductor = std::lcm(48L, 24 * form.Nprime());
  auto [f1, f2] = psi_factors(form, label);
  return {eta_expansion(f1.alpha, f1.beta, truncation, conductor),
          eta_expansion(f2.alpha, f2.beta, truncation, conductor)};
}

EtaIdentityResult eta_identity_check(long p, int r, long terms) {
  if (!is_prime(p) || r < 1) {
    throw InvalidArgument("eta_identity_check: need p prime, r >= 1");
  }
  long pr = ipow(p, r);
  if (pr > 16) throw GuardExceeded("eta_identity_check: p^r > 16");
  if (terms < 1) throw InvalidArgument("eta_identity_check: terms < 1");
  long conductor = std::lcm(48L, 24 * pr);
  auto field = CyclotomicField::create(conductor);
  Rat trunc(terms);
  // Exponents balancing the unit-shift product; see the header note.
  long G = (pr - 1) / (p - 1);
  long E = (pr * p - 1) / (p - 1) + (ipow(p, r - 1) - 1) / (p - 1);
  PuiseuxSeries lhs =
      series_monomial(field, Rat(0), field->one(), trunc);
  for (long u = 1; u < pr; ++u) {
    if (u % p == 0) continue;
    lhs = series_mul(lhs, eta_expansion(Rat(1, pr), Rat(u, pr), trunc,
                                        conductor));
  }
  PuiseuxSeries down = eta_expansion(Rat(1, p), Rat(0), trunc, conductor);
  PuiseuxSeries up = eta_expansion(Rat(p), Rat(0), trunc, conductor);
  PuiseuxSeries numerator = eta_expansion(Rat(1), Rat(0), trunc, conductor);
  PuiseuxSeries cross =
      series_mul(lhs, series_mul(series_pow(down, G), series_pow(up, G)));
  PuiseuxSeries rhs = series_pow(numerator, E);
  auto [le, lc] = series_lead(cross);
  auto [re, rc] = series_lead(rhs);
  EtaIdentityResult out;
  out.constant = lc * rc.inverse();
  out.holds = le == re && series_equal(cross, series_scale(rhs, out.constant));
  return out;
}

bool relation_lift_check(long p, int r, int rprime, long terms) {
  if (!is_prime(p) || rprime < 1 || r < rprime) {
    throw InvalidArgument("relation_lift_check: need p prime, r >= r' >= 1");
  }
  if (ipow(p, r) > 9) throw GuardExceeded("relation_lift_check: p^r > 9");
  DiscriminantForm form(ipow(p, r), ipow(p, rprime));
  TypesSpan span = types_span(form);
  if (span.relation_kernel.size() != 1) {
    throw InternalError("relation kernel is not one-dimensional");
  }
  // Scale the kernel vector to integers.
  std::vector<Rat> v = span.relation_kernel[0];
  Int den(1);
  for (const auto& c : v) den = lcm(den, Int(c.get_den()));
  std::vector<long> w(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = Rat(v[i] * den).get_num().get_si();
  }
  auto types = enumerate_types(form);
  long conductor = std::lcm(48L, 24 * form.Nprime());
  auto field = CyclotomicField::create(conductor);
  Rat trunc(terms);
  PuiseuxSeries pos[2], neg[2];
  for (int k = 0; k < 2; ++k) {
    pos[k] = series_monomial(field, Rat(0), field->one(), trunc);
    neg[k] = pos[k];
  }
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    auto [s1, s2] = psi_expansion(form, types[i].witness, trunc, conductor);
    PuiseuxSeries comp[2] = {series_pow(s1, std::abs(w[i])),
                             series_pow(s2, std::abs(w[i]))};
    for (int k = 0; k < 2; ++k) {
      (w[i] > 0 ? pos[k] : neg[k]) =
          series_mul(w[i] > 0 ? pos[k] : neg[k], comp[k]);
    }
  }
  for (int k = 0; k < 2; ++k) {
    auto [pe, pc] = series_lead(pos[k]);
    auto [ne, nc] = series_lead(neg[k]);
    if (pe != ne) return false;
    if (!series_equal(series_scale(pos[k], nc), series_scale(neg[k], pc))) {
      return false;
    }
  }
  return true;
}

Rat order_at_cusp(const std::vector<EtaFactor>& factors, long a, long c) {
  if (a == 0 && c == 0) throw InvalidArgument("order_at_cusp: invalid cusp");
  if (std::gcd(std::abs(a), std::abs(c)) != 1) {
    throw InvalidArgument("order_at_cusp: cusp label is not reduced");
  }
  // Complete (a, c) to a matrix in SL2(Z) sending infinity to a/c:
  // find x, y with a*x + c*y = 1 and set b = -y, d = x.
  long x = 0, y = 0;
  {
    long r0 = a, r1 = c, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (r1 != 0) {
      long q = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
      std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
      std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    x = r0 < 0 ? -x0 : x0;
    y = r0 < 0 ? -y0 : y0;
  }
  long b = -y, d = x;  // a*d - b*c = 1
  Rat total(0);
  for (const auto& f : factors) {
    if (f.alpha <= 0) {
      throw InvalidArgument("order_at_cusp: factor with nonpositive alpha");
    }
    // Conjugated matrix (alpha a + beta c, alpha b + beta d; c, d),
    // rescaled to a primitive integer matrix.
    Rat top0 = f.alpha * a + f.beta * c;
    Rat top1 = f.alpha * b + f.beta * d;
    Int L = lcm(Int(top0.get_den()), Int(top1.get_den()));
    Int m00 = Int(Rat(top0 * L).get_num());
    Int m01 = Int(Rat(top1 * L).get_num());
    Int m10 = L * c, m11 = L * d;
    Int content = gcd(gcd(abs(m00), abs(m01)), gcd(abs(m10), abs(m11)));
    m00 /= content;
    m01 /= content;
    m10 /= content;
    m11 /= content;
    Int det = m00 * m11 - m01 * m10;
    if (det <= 0) throw InternalError("order_at_cusp: nonpositive determinant");
    Int e = gcd(abs(m00), abs(m10));
    Rat term(e * e, 24 * det);
    term.canonicalize();
    total += term * f.exponent;
  }
  return total;
}

CrossValidation cross_validate_boundary(const DiscriminantForm& form,
                                        const FqmSubgroup& H, long terms) {
  (void)terms;
  auto types = enumerate_types(form);
  const TypeWitness* witness = nullptr;
  for (const auto& tw : types) {
    if (tw.type == H) {
      witness = &tw;
      break;
    }
  }
  if (!witness || !witness->realized) {
    throw InvalidArgument(
        "cross_validate_boundary: H is not the type of any cusp");
  }
  auto [f1, f2] = psi_factors(form, witness->witness);
  CrossValidation out;
  for (const auto& cls : cusp_classes(form)) {
    const EtaFactor& f = cls.star == 1 ? f1 : f2;
    Rat order =
        order_at_cusp({f}, cls.representative.a, cls.representative.c);
    // The local parameter along the boundary component absorbs a factor
    // of the complementary level N_ztilde.
    long nzt = levels_of_cusp(form, cls.representative).second;
    long count = intersection_count(H, cls.type);
    out.classes.push_back(cls.representative);
    out.ratios.push_back(order * nzt / count);
  }
  out.constant = !out.ratios.empty() &&
                 std::all_of(out.ratios.begin(), out.ratios.end(),
                             [&](const Rat& r) { return r == out.ratios[0]; });
  if (out.constant) out.constant_value = out.ratios[0];
  return out;
}

}  // namespace specdiv
