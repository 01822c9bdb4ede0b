#include "specdiv/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "specdiv/errors.hpp"

namespace specdiv {

namespace {

/// e(r) for r in Q/Z, in the given field.
CycNumber root_of(const std::shared_ptr<const CyclotomicField>& field,
                  const RationalMod1& r) {
  const Rat& v = r.value();
  long num = mpz_get_si(v.get_num().get_mpz_t());
  long den = mpz_get_si(v.get_den().get_mpz_t());
  return field->root_of_unity(num, den);
}

long index_of(const std::vector<FqmElement>& elements, const FqmElement& g) {
  auto it = std::lower_bound(elements.begin(), elements.end(), g);
  if (it == elements.end() || !(*it == g)) {
    throw InternalError("element not found in sorted element list");
  }
  return static_cast<long>(it - elements.begin());
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::shared_ptr<const CyclotomicField> coefficient_field(
    const DiscriminantForm& form) {
  return CyclotomicField::create(form.N());
}

GroupAlgebraVector char_vector(const FqmSubgroup& H) {
  auto field = coefficient_field(H.form());
  GroupAlgebraVector v{H.form(), {}};
  for (const auto& g : H.elements()) v.coeffs.emplace(g, field->one());
  return v;
}

QuotientVector descent(const FqmSubgroup& H, const GroupAlgebraVector& v) {
  if (!(H.form() == v.form)) throw InvalidArgument("descent: form mismatch");
  if (!is_isotropic(H)) throw InvalidArgument("descent: H is not isotropic");
  FqmSubgroup perp = orthogonal_complement(H);
  QuotientVector out{H, {}};
  for (const auto& [g, c] : v.coeffs) {
    if (c.is_zero() || !perp.contains(g)) continue;
    FqmElement key = H.coset_representative(g);
    auto [it, fresh] = out.coeffs.emplace(key, c);
    if (!fresh) it->second = it->second + c;
  }
  return out;
}

GroupAlgebraVector induction(const FqmSubgroup& H, const QuotientVector& w) {
  if (!(H == w.subgroup)) {
    throw InvalidArgument("induction: vector is not indexed by H-cosets");
  }
  if (!is_isotropic(H)) throw InvalidArgument("induction: H is not isotropic");
  FqmSubgroup perp = orthogonal_complement(H);
  GroupAlgebraVector out{H.form(), {}};
  for (const auto& [g, c] : w.coeffs) {
    if (c.is_zero()) continue;
    if (!perp.contains(g)) {
      throw InvalidArgument("induction: coset outside H^perp");
    }
    for (const auto& h : H.elements()) {
      FqmElement key = add(H.form(), g, h);
      auto [it, fresh] = out.coeffs.emplace(key, c);
      if (!fresh) it->second = it->second + c;
    }
  }
  return out;
}

CycNumber inner_product(const GroupAlgebraVector& a,
                        const GroupAlgebraVector& b) {
  if (!(a.form == b.form)) {
    throw InvalidArgument("inner_product: form mismatch");
  }
  CycNumber sum;
  for (const auto& [g, c] : a.coeffs) {
    auto it = b.coeffs.find(g);
    if (it != b.coeffs.end()) sum = sum + c * it->second;
  }
  if (!sum.field()) return coefficient_field(a.form)->zero();
  return sum;
}

Matrix<CycNumber> weil_T(const DiscriminantForm& form) {
  auto field = coefficient_field(form);
  auto elements = all_elements(form);
  long n = static_cast<long>(elements.size());
  Matrix<CycNumber> T(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) T.at(i, j) = field->zero();
    T.at(i, i) = root_of(field, q_value(form, elements[i]));
  }
  return T;
}

Matrix<CycNumber> weil_S(const DiscriminantForm& form) {
  auto field = coefficient_field(form);
  auto elements = all_elements(form);
  long n = static_cast<long>(elements.size());
  // Milgram: the Gauss sum must equal +sqrt(|D|), i.e. the signature
  // factor of the representation is 1.
  CycNumber gauss = field->zero();
  for (const auto& g : elements) gauss = gauss + root_of(field, q_value(form, g));
  if (!(gauss == field->from_rational(Rat(form.N() * form.Nprime())))) {
    throw InternalError("Gauss sum does not match signature 0 mod 8");
  }
  Rat scale(1, form.N() * form.Nprime());
  Matrix<CycNumber> S(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      RationalMod1 b = bilinear(form, elements[i], elements[j]);
      S.at(i, j) = root_of(field, RationalMod1() - b) * scale;
    }
  }
  return S;
}

bool is_invariant(const GroupAlgebraVector& v) {
  const DiscriminantForm& form = v.form;
  auto field = coefficient_field(form);
  // T-invariance: e(q(gamma)) v_gamma = v_gamma forces the support onto
  // isotropic elements.
  for (const auto& [g, c] : v.coeffs) {
    if (!c.is_zero() && !q_value(form, g).is_zero()) return false;
  }
  // S-invariance, evaluated row by row against the sparse support.
  Rat scale(1, form.N() * form.Nprime());
  for (const auto& g : all_elements(form)) {
    CycNumber row = field->zero();
    for (const auto& [d, c] : v.coeffs) {
      if (c.is_zero()) continue;
      RationalMod1 b = bilinear(form, g, d);
      row = row + root_of(field, RationalMod1() - b) * c;
    }
    row = row * scale;
    auto it = v.coeffs.find(g);
    CycNumber expect = it == v.coeffs.end() ? field->zero() : it->second;
    if (!(row == expect)) return false;
  }
  return true;
}

namespace {

long mulmod(long a, long b, long q) {
  return static_cast<long>(
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) %
      static_cast<unsigned long>(q));
}

long powmod(long b, long e, long q) {
  long r = 1;
  b %= q;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, q);
    b = mulmod(b, b, q);
    e >>= 1;
  }
  return r;
}

long rank_mod_q(std::vector<std::vector<long>> m, long q) {
  long rows = static_cast<long>(m.size());
  long cols = rows ? static_cast<long>(m[0].size()) : 0;
  long rank = 0;
  for (long col = 0; col < cols && rank < rows; ++col) {
    long piv = -1;
    for (long r = rank; r < rows; ++r) {
      if (m[r][col] % q != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    long inv = powmod(m[rank][col], q - 2, q);
    for (long r = rank + 1; r < rows; ++r) {
      long f = mulmod(m[r][col] % q, inv, q);
      if (f == 0) continue;
      for (long j = col; j < cols; ++j) {
        m[r][j] = (m[r][j] - mulmod(f, m[rank][j], q)) % q;
        if (m[r][j] < 0) m[r][j] += q;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

long invariant_space_dim(const DiscriminantForm& form) {
  check_form_order_guard(form.order(), "invariant_space_dim");
  auto field = coefficient_field(form);
  long N = form.N();
  long NN = form.N() * form.Nprime();
  auto elements = all_elements(form);
  // T-invariance forces the support onto isotropic elements, and
  // rho(S)^2 is the negation permutation (the Milgram assertion in
  // weil_S pins the signature), so invariant vectors are constant on
  // +-orbits; one column per orbit of isotropic elements.
  std::vector<FqmElement> reps;
  std::map<FqmElement, long> orbit_of;
  for (const auto& g : elements) {
    if (!q_value(form, g).is_zero()) continue;
    FqmElement ng = negate(form, g);
    FqmElement rep = std::min(g, ng);
    auto it = orbit_of.find(rep);
    if (it == orbit_of.end()) {
      orbit_of.emplace(rep, static_cast<long>(reps.size()));
      reps.push_back(rep);
    }
    orbit_of.emplace(g, orbit_of[rep]);
  }
  long cols = static_cast<long>(reps.size());
  // The S-condition for gamma reads
  //   sum_delta e(-b(gamma, delta)) v_delta = N N' v_gamma,
  // folded over orbits. Encode each folded entry as the exponent pair
  // (two e(k/N) summands, -1 for an absent second summand) plus the
  // diagonal marker; rows with equal encodings coincide.
  std::set<std::vector<long>> seen;
  std::vector<std::vector<long>> rows;  // encoded: 2 exponents per column + diag
  for (const auto& g : elements) {
    std::vector<long> sig(2 * cols + 1);
    bool giso = q_value(form, g).is_zero();
    sig[2 * cols] = giso ? orbit_of.at(std::min(g, negate(form, g))) : -1;
    for (long j = 0; j < cols; ++j) {
      const FqmElement& d = reps[j];
      FqmElement nd = negate(form, d);
      Rat b = bilinear(form, g, d).value() * N;
      if (b.get_den() != 1) throw InternalError("bilinear denominator");
      long e1 = mpz_get_si(b.get_num().get_mpz_t());
      long e2 = -1;
      if (!(nd == d)) {
        Rat b2 = bilinear(form, g, nd).value() * N;
        e2 = mpz_get_si(b2.get_num().get_mpz_t());
        if (e2 < e1) std::swap(e1, e2);
      }
      sig[2 * j] = e1;
      sig[2 * j + 1] = e2;
    }
    if (seen.insert(sig).second) rows.push_back(std::move(sig));
  }
  long nrows = static_cast<long>(rows.size());
  // Rational kernel: expand each cyclotomic entry in the power basis,
  // one rational row per coordinate. Every rational solution of the
  // expanded system solves the cyclotomic system and vice versa.
  long deg = field->degree();
  Matrix<Rat> R(nrows * deg, cols);
  for (long i = 0; i < nrows; ++i) {
    std::vector<std::vector<Rat>> entry(cols);
    for (long j = 0; j < cols; ++j) {
      CycNumber e = field->root_of_unity(-rows[i][2 * j], N);
      if (rows[i][2 * j + 1] >= 0) {
        e = e + field->root_of_unity(-rows[i][2 * j + 1], N);
      }
      if (rows[i][2 * cols] == j) e = e - field->from_rational(Rat(NN));
      entry[j] = e.coeffs();
      entry[j].resize(deg, Rat(0));
    }
    for (long k = 0; k < deg; ++k) {
      for (long j = 0; j < cols; ++j) R.at(i * deg + k, j) = entry[j][k];
    }
  }
  long kdim = cols - echelonize(std::move(R)).rank();
  // Certification that the complex kernel is no bigger (so the rational
  // basis is a full basis): the rank of the cyclotomic matrix is at
  // most cols - kdim by the rational kernel, and a modular rank over
  // F_q with zeta -> element of order N bounds it from below.
  auto exp_mod = [&](long e) { return ((e % N) + N) % N; };
  for (long attempt = 0, t = 1; attempt < 8; ++t) {
    long q = t * N + 1;
    if (q < 3 || !is_prime(q)) continue;
    ++attempt;
    long zeta = 1;
    for (long g = 2; g < q && N > 1; ++g) {
      long c = powmod(g, (q - 1) / N, q);
      bool order_n = true;
      for (long p = 2; p <= N; ++p) {
        if (N % p == 0 && is_prime(p) && powmod(c, N / p, q) == 1) {
          order_n = false;
          break;
        }
      }
      if (order_n) {
        zeta = c;
        break;
      }
    }
    if (N > 1 && zeta == 1) continue;
    std::vector<std::vector<long>> mq(nrows, std::vector<long>(cols));
    for (long i = 0; i < nrows; ++i) {
      for (long j = 0; j < cols; ++j) {
        long v = powmod(zeta, exp_mod(-rows[i][2 * j]), q);
        if (rows[i][2 * j + 1] >= 0) {
          v = (v + powmod(zeta, exp_mod(-rows[i][2 * j + 1]), q)) % q;
        }
        if (rows[i][2 * cols] == j) v = (v - NN % q + q) % q;
        mq[i][j] = v;
      }
    }
    if (rank_mod_q(std::move(mq), q) == cols - kdim) return kdim;
  }
  throw InternalError("invariant_space_dim: modular rank certificate failed");
}

TypesSpan types_span(const DiscriminantForm& form) {
  auto types = enumerate_types(form);
  long n = static_cast<long>(types.size());
  // Gram matrix of the characteristic vectors; it is positive
  // semidefinite over Q, so its rank and kernel agree with those of
  // the vector family itself.
  Matrix<Rat> gram(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = i; j < n; ++j) {
      Rat v(intersection_count(types[i].type, types[j].type));
      gram.at(i, j) = v;
      gram.at(j, i) = v;
    }
  }
  Echelon<Rat> ech = echelonize(std::move(gram));
  TypesSpan out;
  out.dimension = ech.rank();
  for (auto& vec : kernel_basis(ech, Rat(1))) {
    out.relation_kernel.push_back(std::move(vec));
  }
  return out;
}

RelationReadings relation_readings(long p, int r, int rprime) {
  if (!is_prime(p)) throw InvalidArgument("relation_readings: p is not prime");
  if (rprime < 1 || r < rprime) {
    throw InvalidArgument("relation_readings: need r >= r' >= 1");
  }
  DiscriminantForm form(ipow(p, r), ipow(p, rprime));
  auto types = enumerate_types(form);
  std::map<FqmSubgroup, long> type_index;
  for (long i = 0; i < static_cast<long>(types.size()); ++i) {
    type_index.emplace(types[i].type, i);
  }
  auto add_term = [&](std::vector<Rat>& vec, int star, long a, long c,
                      const Rat& w) {
    FqmSubgroup type = type_of_cusp(form, {star, a, c});
    auto it = type_index.find(type);
    if (it == type_index.end()) throw InternalError("term type not in Types");
    vec[it->second] += w;
  };
  long pr = ipow(p, r), prp = ipow(p, rprime);
  RelationReadings out;
  out.literal.assign(types.size(), Rat(0));
  out.non_overlapping.assign(types.size(), Rat(0));
  for (int star : {1, 2}) {
    Rat sign = star == 1 ? Rat(1) : Rat(-1);
    // First family: a over multiples of p mod p^{r'}, cusp a/1.
    for (long a = 0; a < prp; a += p) {
      add_term(out.literal, star, a, 1, sign);
      add_term(out.non_overlapping, star, a, 1, sign);
    }
    // Middle family: 1/c with c over multiples of p^{r-r'} mod p^r. The
    // non-overlapping reading keeps only valuations above r - r', which
    // the unit family below does not reach.
    for (long c = 0; c < pr; c += ipow(p, r - rprime)) {
      add_term(out.literal, star, 1, c, sign);
      if (c == 0 || c % ipow(p, std::min(r, r - rprime + 1)) == 0) {
        add_term(out.non_overlapping, star, 1, c, sign);
      }
    }
    // Unit family: 1/(u p^s) for units u mod p^{r'} and 0 <= s <= r-r'.
    for (int s = 0; s <= r - rprime; ++s) {
      for (long u = 1; u < prp; ++u) {
        if (u % p == 0) continue;
        add_term(out.literal, star, 1, u * ipow(p, s), sign);
        add_term(out.non_overlapping, star, 1, u * ipow(p, s), sign);
      }
    }
  }
  // Membership in the relation kernel is equivalent to lying in the
  // kernel of the Gram matrix.
  long n = static_cast<long>(types.size());
  auto in_kernel = [&](const std::vector<Rat>& vec) {
    for (long i = 0; i < n; ++i) {
      Rat dot(0);
      for (long j = 0; j < n; ++j) {
        if (vec[j] == 0) continue;
        dot += Rat(intersection_count(types[i].type, types[j].type)) * vec[j];
      }
      if (dot != 0) return false;
    }
    return true;
  };
  out.literal_in_kernel = in_kernel(out.literal);
  out.non_overlapping_in_kernel = in_kernel(out.non_overlapping);
  return out;
}

bool relation_matches_paper(long p, int r, int rprime) {
  RelationReadings rr = relation_readings(p, r, rprime);
  return rr.literal_in_kernel || rr.non_overlapping_in_kernel;
}

}  // namespace specdiv
