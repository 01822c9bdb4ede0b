#include "specdiv/cusps.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "specdiv/errors.hpp"

namespace specdiv {

namespace {

long mod_pos(long v, long m) {
  long r = v % m;
  return r < 0 ? r + m : r;
}

long gcd_nonneg(long a, long b) { return std::gcd(std::abs(a), std::abs(b)); }

/// x, y with a*x + b*y = gcd(a, b).
long egcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  long x1, y1;
  long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

using Mat2 = std::array<std::array<long, 2>, 2>;

Mat2 mat2_mul(const Mat2& x, const Mat2& y) {
  return {{{x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1]},
           {x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1]}}};
}

/// Prime factorization as (p, multiplicity) pairs.
std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

CuspLabel make_label(int star, long a, long c) {
  if (star != 1 && star != 2) throw InvalidArgument("star must be 1 or 2");
  if (a == 0 && c == 0) throw InvalidArgument("cusp label (0, 0)");
  long g = gcd_nonneg(a, c);
  a /= g;
  c /= g;
  if (c < 0 || (c == 0 && a < 0)) {
    a = -a;
    c = -c;
  }
  return {star, a, c};
}

CuspParameters cusp_parameters(const DiscriminantForm& form,
                               const CuspLabel& label) {
  long N = form.N(), Np = form.Nprime();
  CuspParameters out;
  out.M = gcd_nonneg(N / Np, label.c);
  if (out.M == 0) out.M = N / Np;  // c = 0
  out.d1 = gcd_nonneg(label.a, Np);
  out.d2 = gcd_nonneg(label.c / out.M, Np);
  if (out.d2 == 0) out.d2 = Np;
  // Unit u with (Na/(N'M), 0, 0, -c/M) a multiple of (Nd1/(N'M), 0, 0, -u d2).
  long lead = N / (Np * out.M);
  long target_w = mod_pos(lead * label.a, N);
  long target_z = mod_pos(label.c / out.M, Np);
  for (long u = 1; u <= Np; ++u) {
    if (std::gcd(u, Np) != 1) continue;
    bool ok = false;
    for (long t = 0; t < N * Np && !ok; ++t) {
      if (mod_pos(t * lead * out.d1, N) == target_w &&
          mod_pos(t * u * out.d2, Np) == target_z) {
        ok = true;
      }
    }
    if (ok) {
      out.u = mod_pos(u, Np);
      if (out.u == 0) out.u = Np;  // N' = 1
      if (Np == 1) out.u = 1;
      return out;
    }
  }
  throw InternalError("cusp_parameters: no aligning unit found");
}

FqmSubgroup type_of_cusp(const DiscriminantForm& form, const CuspLabel& label) {
  long N = form.N(), Np = form.Nprime();
  long M = gcd_nonneg(N / Np, label.c);
  if (M == 0) M = N / Np;
  long lead = N / (Np * M);
  FqmElement g1, g2;
  if (label.star == 1) {
    g1 = reduce(form, lead * label.a, 0, 0, -label.c / M);
    g2 = reduce(form, 0, label.c, label.a, 0);
  } else {
    g1 = reduce(form, lead * label.a, 0, label.c / M, 0);
    g2 = reduce(form, 0, label.c, 0, -label.a);
  }
  return FqmSubgroup::from_generators(form, {g1, g2});
}

namespace {

/// Lifts a residue pair (a, c) mod m with gcd(a, c, m) = 1 to a
/// canonical coprime label.
CuspLabel lift_label(int star, long a, long c, long m) {
  a = mod_pos(a, m);
  c = mod_pos(c, m);
  if (c == 0) {
    if (a == 1) return make_label(star, 1, 0);
    return make_label(star, a, m);
  }
  for (long k = 0;; ++k) {
    long cand = a + k * m;
    if (std::gcd(cand == 0 ? m : cand, c) == 1 && cand != 0) {
      return make_label(star, cand, c);
    }
    if (k > 4 * m) throw InternalError("lift_label: no coprime lift found");
  }
}

}  // namespace

std::vector<TypeWitness> enumerate_types(const DiscriminantForm& form) {
  long m = form.N() * form.Nprime();
  std::map<FqmSubgroup, CuspLabel> found;
  for (int star : {1, 2}) {
    for (long a = 0; a < m; ++a) {
      for (long c = 0; c < m; ++c) {
        if (std::gcd(std::gcd(a, c), m) != 1) continue;
        CuspLabel label = lift_label(star, a, c, m);
        FqmSubgroup type = type_of_cusp(form, label);
        auto it = found.find(type);
        if (it == found.end()) {
          found.emplace(std::move(type), label);
        } else if (label < it->second) {
          it->second = label;
        }
      }
    }
  }
  std::vector<TypeWitness> out;
  auto primes = factorize(form.N() > 1 ? form.N() : 1);
  if (primes.size() <= 1) {
    out.reserve(found.size());
    for (auto& [type, witness] : found) out.push_back({type, witness, true});
    return out;
  }
  // A type is any direct sum of p-primary type components, but a cusp
  // realizes only the combinations where every p-component comes from
  // the same label; collect the per-prime component sets and form all
  // combinations.
  std::vector<std::vector<FqmSubgroup>> parts;
  for (auto [p, e] : primes) {
    std::set<FqmSubgroup> s;
    for (const auto& [type, witness] : found) {
      s.insert(p_primary_part(type, p));
    }
    parts.emplace_back(s.begin(), s.end());
  }
  std::map<FqmSubgroup, TypeWitness> all;
  std::vector<size_t> idx(parts.size(), 0);
  for (;;) {
    std::vector<FqmElement> gens;
    for (size_t i = 0; i < parts.size(); ++i) {
      for (const auto& g : parts[i][idx[i]].generators()) gens.push_back(g);
    }
    FqmSubgroup H = FqmSubgroup::from_generators(form, gens);
    auto it = found.find(H);
    if (it != found.end()) {
      all.emplace(H, TypeWitness{H, it->second, true});
    } else {
      all.emplace(H, TypeWitness{H, CuspLabel{}, false});
    }
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == parts[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  out.reserve(all.size());
  for (auto& [type, tw] : all) out.push_back(tw);
  return out;
}

long types_count_formula(long N, long Nprime) {
  if (N <= 0 || Nprime <= 0 || N % Nprime != 0) {
    throw InvalidArgument("types_count_formula: N' must divide N");
  }
  long count = 1;
  for (auto [p, r] : factorize(N)) {
    int rp = 0;
    long t = Nprime;
    while (t % p == 0) {
      t /= p;
      ++rp;
    }
    if (rp >= 1) {
      count *= 2 * ((r - rp + 1) * ipow(p, rp) - (r - rp - 1) * ipow(p, rp - 1));
    } else {
      count *= (r + 1);
    }
  }
  return count;
}

bool projected_group_member(const DiscriminantForm& form, int star,
                            const Mat2& mat) {
  (void)star;  // the two projections satisfy the same congruences
  long a = mat[0][0], b = mat[0][1], c = mat[1][0], d = mat[1][1];
  if (a * d - b * c != 1) {
    throw InvalidArgument("projected_group_member: determinant is not 1");
  }
  // N | c and N' | b make the entry congruences of the discriminant
  // kernel solvable for a partner iff a^2 = 1 mod N' (the four partner
  // congruences collapse using a*d = 1 mod N*N').
  return mod_pos(c, form.N()) == 0 && mod_pos(b, form.Nprime()) == 0 &&
         mod_pos(a * a - 1, form.Nprime()) == 0;
}

bool cusps_equivalent(const DiscriminantForm& form, int star,
                      const CuspLabel& l1, const CuspLabel& l2) {
  if (l1.star != star || l2.star != star) {
    throw InvalidArgument("cusps_equivalent: star mismatch");
  }
  long x, y;
  egcd(l1.a, l1.c, x, y);
  Mat2 A1 = {{{l1.a, -y}, {l1.c, x}}};
  egcd(l2.a, l2.c, x, y);
  Mat2 A2 = {{{l2.a, -y}, {l2.c, x}}};
  Mat2 A1inv = {{{A1[1][1], -A1[0][1]}, {-A1[1][0], A1[0][0]}}};
  long m = form.N() * form.Nprime();
  // Candidates g0 * P^n where P is the parabolic stabilizer of l1;
  // membership is periodic in n with period dividing N*N'.
  for (long n = 0; n < m; ++n) {
    Mat2 Tn = {{{1, n}, {0, 1}}};
    Mat2 g = mat2_mul(mat2_mul(A2, Tn), A1inv);
    if (projected_group_member(form, star, g)) return true;
    Mat2 gneg = {{{-g[0][0], -g[0][1]}, {-g[1][0], -g[1][1]}}};
    if (projected_group_member(form, star, gneg)) return true;
  }
  return false;
}

std::vector<CuspClass> cusp_classes(const DiscriminantForm& form) {
  check_form_order_guard(form.order(), "cusp_classes");
  long m = form.N() * form.Nprime();
  std::vector<CuspClass> classes;
  for (int star : {1, 2}) {
    // Level-m cusp representatives: residue pairs mod +-1.
    std::set<CuspLabel> labels;
    for (long a = 0; a < m; ++a) {
      for (long c = 0; c < m; ++c) {
        if (std::gcd(std::gcd(a, c), m) != 1) continue;
        long na = mod_pos(-a, m), nc = mod_pos(-c, m);
        if (std::make_pair(na, nc) < std::make_pair(a, c)) continue;
        labels.insert(lift_label(star, a, c, m));
      }
    }
    std::vector<CuspClass> star_classes;
    for (const auto& label : labels) {
      bool merged = false;
      for (auto& cls : star_classes) {
        if (cusps_equivalent(form, star, cls.representative, label)) {
          cls.members.push_back(label);
          merged = true;
          break;
        }
      }
      if (!merged) {
        star_classes.push_back(
            {star, label, {label}, type_of_cusp(form, label)});
      }
    }
    for (auto& cls : star_classes) {
      std::sort(cls.members.begin(), cls.members.end());
      cls.representative = cls.members.front();
      for (const auto& member : cls.members) {
        if (!(type_of_cusp(form, member) == cls.type)) {
          throw InternalError("cusp class members disagree on type");
        }
      }
    }
    classes.insert(classes.end(), star_classes.begin(), star_classes.end());
  }
  std::sort(classes.begin(), classes.end(),
            [](const CuspClass& a, const CuspClass& b) {
              return std::make_pair(a.star, a.representative) <
                     std::make_pair(b.star, b.representative);
            });
  return classes;
}

bool type_factorization_check(long N, long Nprime) {
  if (N <= 0 || Nprime <= 0 || N % Nprime != 0) {
    throw InvalidArgument("type_factorization_check: N' must divide N");
  }
  long lhs =
      static_cast<long>(enumerate_types(DiscriminantForm(N, Nprime)).size());
  long rhs = 1;
  for (auto [p, r] : factorize(N)) {
    int rp = 0;
    long t = Nprime;
    while (t % p == 0) {
      t /= p;
      ++rp;
    }
    DiscriminantForm local(ipow(p, r), ipow(p, rp));
    rhs *= static_cast<long>(enumerate_types(local).size());
  }
  return lhs == rhs;
}

}  // namespace specdiv
