#include "specdiv/divisors.hpp"

#include <algorithm>
#include <numeric>

#include "specdiv/errors.hpp"

namespace specdiv {

namespace {

long mod_pos(long v, long m) {
  long r = v % m;
  return r < 0 ? r + m : r;
}

long inverse_mod(long a, long m) {
  a = mod_pos(a, m);
  for (long x = 1; x <= m; ++x) {
    if (mod_pos(a * x, m) == 1) return x % m == 0 ? 0 : mod_pos(x, m);
  }
  throw InternalError("inverse_mod: not invertible");
}

Rat bernoulli2(const Rat& x) { return x * x - x + Rat(1, 6); }

}  // namespace

BoundaryDivisor special_divisor(const DiscriminantForm& form,
                                const FqmSubgroup& H) {
  if (!is_self_dual_isotropic(H)) {
    throw InvalidArgument("special_divisor: H is not self-dual isotropic");
  }
  BoundaryDivisor d{form, {}};
  for (const auto& cls : cusp_classes(form)) {
    d.entries[cls.representative] = Rat(intersection_count(H, cls.type));
  }
  return d;
}

TypeMultiplicityFunction boundary_divisor_of_invariant(
    const DiscriminantForm& form, const GroupAlgebraVector& v) {
  if (!(form == v.form)) {
    throw InvalidArgument("boundary divisor: form mismatch");
  }
  if (!is_invariant(v)) {
    throw InvalidArgument("boundary divisor: vector is not invariant");
  }
  TypeMultiplicityFunction out{form, {}};
  FqmElement zero;
  for (const auto& tw : enumerate_types(form)) {
    QuotientVector down = descent(tw.type, v);
    auto it = down.coeffs.find(zero);
    Rat mult(0);
    if (it != down.coeffs.end()) {
      if (!it->second.is_rational()) {
        throw InternalError("boundary multiplicity is not rational");
      }
      mult = it->second.rational_value();
    }
    out.entries[tw.type] = mult;
  }
  return out;
}

std::optional<SpecialCertificate> is_special(const DiscriminantForm& form,
                                             const BoundaryDivisor& d) {
  auto classes = cusp_classes(form);
  for (const auto& [label, mult] : d.entries) {
    bool known = std::any_of(classes.begin(), classes.end(),
                             [&](const CuspClass& c) {
                               return c.representative == label;
                             });
    if (!known) {
      throw InvalidArgument("is_special: divisor indexed outside the class list");
    }
  }
  auto mult_of = [&](const CuspClass& cls) {
    auto it = d.entries.find(cls.representative);
    return it == d.entries.end() ? Rat(0) : it->second;
  };
  auto types = enumerate_types(form);
  long n = static_cast<long>(types.size());
  // Necessary condition: multiplicities constant on classes of equal
  // type; collect the per-type target vector along the way.
  std::vector<Rat> target(n);
  std::vector<bool> seen(n, false);
  for (const auto& cls : classes) {
    auto it = std::lower_bound(
        types.begin(), types.end(), cls.type,
        [](const TypeWitness& tw, const FqmSubgroup& t) { return tw.type < t; });
    if (it == types.end() || !(it->type == cls.type)) {
      throw InternalError("cusp class type missing from Types(L)");
    }
    long idx = static_cast<long>(it - types.begin());
    Rat m = mult_of(cls);
    if (seen[idx] && target[idx] != m) return std::nullopt;
    target[idx] = m;
    seen[idx] = true;
  }
  // d = sum c_H Z(H) per class is equivalent to the per-type system
  // A c = target over the realized types (cusp classes only see those;
  // unrealized type combinations impose no constraint).
  std::vector<long> rows;
  for (long i = 0; i < n; ++i) {
    if (types[i].realized) rows.push_back(i);
  }
  long m = static_cast<long>(rows.size());
  Matrix<Rat> A(m, n);
  std::vector<Rat> b(m);
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < n; ++j) {
      A.at(i, j) = Rat(intersection_count(types[rows[i]].type, types[j].type));
    }
    b[i] = target[rows[i]];
  }
  auto sol = solve(A, b);
  if (!sol) return std::nullopt;
  SpecialCertificate cert{*sol, GroupAlgebraVector{form, {}}};
  auto field = coefficient_field(form);
  for (long i = 0; i < n; ++i) {
    if (cert.coefficients[i] == 0) continue;
    for (const auto& g : types[i].type.elements()) {
      CycNumber term = field->from_rational(cert.coefficients[i]);
      auto [it, fresh] = cert.invariant_vector.coeffs.emplace(g, term);
      if (!fresh) it->second = it->second + term;
    }
  }
  return cert;
}

long spbdiv_dimension(const DiscriminantForm& form) {
  auto types = enumerate_types(form);
  long n = static_cast<long>(types.size());
  bool all_realized =
      std::all_of(types.begin(), types.end(),
                  [](const TypeWitness& tw) { return tw.realized; });
  // The class matrix has one column per cusp class; it only spans the
  // realized types, so it computes the right rank exactly when every
  // type is realized.
  if (all_realized && form.N() * form.Nprime() <= 36) {
    auto classes = cusp_classes(form);
    long m = static_cast<long>(classes.size());
    Matrix<Rat> z(n, m);
    for (long i = 0; i < n; ++i) {
      for (long j = 0; j < m; ++j) {
        z.at(i, j) = Rat(intersection_count(types[i].type, classes[j].type));
      }
    }
    return echelonize(std::move(z)).rank();
  }
  Matrix<Rat> gram(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = i; j < n; ++j) {
      Rat v(intersection_count(types[i].type, types[j].type));
      gram.at(i, j) = v;
      gram.at(j, i) = v;
    }
  }
  return echelonize(std::move(gram)).rank();
}

std::pair<long, long> levels_of_cusp(const DiscriminantForm& form,
                                     const CuspLabel& label) {
  long N = form.N(), Np = form.Nprime();
  long pairing = std::gcd(std::abs(label.c), std::abs(label.a) * (N / Np));
  if (pairing == 0) pairing = N / Np;
  long nz = Np * pairing;
  long order = type_of_cusp(form, label).order();
  if (order % nz != 0) throw InternalError("level does not divide type order");
  return {nz, order / nz};
}

Rat weyl_component_constant(const DiscriminantForm& form, const FqmSubgroup& H,
                            const CuspLabel& label) {
  if (!is_self_dual_isotropic(H)) {
    throw InvalidArgument("weyl component: H is not self-dual isotropic");
  }
  return Rat(intersection_count(H, type_of_cusp(form, label)), 24);
}

Rat weyl_component_b2(const DiscriminantForm& form, const FqmSubgroup& H,
                      const CuspLabel& label) {
  if (!is_self_dual_isotropic(H)) {
    throw InvalidArgument("weyl component: H is not self-dual isotropic");
  }
  long N = form.N(), Np = form.Nprime();
  long M = std::gcd(N / Np, std::abs(label.c));
  if (M == 0) M = N / Np;
  long lead = N / (Np * M);
  FqmElement gz, gzt;
  if (label.star == 1) {
    gz = reduce(form, lead * label.a, 0, 0, -label.c / M);
    gzt = reduce(form, 0, label.c, label.a, 0);
  } else {
    gz = reduce(form, lead * label.a, 0, label.c / M, 0);
    gzt = reduce(form, 0, label.c, 0, -label.a);
  }
  auto [nz, nzt] = levels_of_cusp(form, label);
  Rat sum(0);
  for (long b1 = 0; b1 < nz; ++b1) {
    FqmElement part = scale(form, b1, gz);
    for (long b2 = 0; b2 < nzt; ++b2) {
      FqmElement g = add(form, part, scale(form, b2, gzt));
      if (H.contains(g)) sum += bernoulli2(Rat(b2, nzt));
    }
  }
  return sum / 2;
}

CharacterizationReport characterization_check(const DiscriminantForm& form,
                                              const BoundaryDivisor& d) {
  long N = form.N(), Np = form.Nprime();
  CharacterizationReport rep;
  auto classes = cusp_classes(form);
  auto mult_of = [&](const CuspClass& cls) {
    auto it = d.entries.find(cls.representative);
    return it == d.entries.end() ? Rat(0) : it->second;
  };
  if (Np == 1) {
    rep.regime_N1 = true;
    // Symmetry: classes come in mirror pairs with identical labels.
    rep.symmetric = true;
    for (const auto& cls : classes) {
      if (cls.star != 1) continue;
      CuspLabel mirror{2, cls.representative.a, cls.representative.c};
      auto other = std::find_if(classes.begin(), classes.end(),
                                [&](const CuspClass& c) {
                                  return c.representative == mirror;
                                });
      if (other == classes.end()) {
        throw InternalError("missing mirror cusp class");
      }
      if (mult_of(cls) != mult_of(*other)) rep.symmetric = false;
    }
    // gcd(c, N) is constant on classes of the projected group, so it
    // can be read off the representative.
    rep.gcd_dependent = true;
    std::map<std::pair<int, long>, Rat> by_gcd;
    for (const auto& cls : classes) {
      long g = std::gcd(std::abs(cls.representative.c), N);
      if (g == 0) g = N;
      auto key = std::make_pair(cls.star, g);
      auto [it, fresh] = by_gcd.emplace(key, mult_of(cls));
      if (!fresh && it->second != mult_of(cls)) rep.gcd_dependent = false;
    }
    rep.conditions_hold = rep.symmetric && rep.gcd_dependent;
  } else {
    if (N != Np) {
      throw InvalidArgument(
          "characterization_check: requires N' = 1 or N = N' = p^r");
    }
    long p = 0;
    for (long q = 2; q <= N; ++q) {
      if (N % q == 0) {
        p = q;
        break;
      }
    }
    long t = N;
    while (t % p == 0) t /= p;
    if (t != 1) {
      throw InvalidArgument(
          "characterization_check: N = N' must be a prime power");
    }
    rep.cond1 = rep.cond2 = true;
    // Multiplicity must only depend on the residue invariant a c^{-1}
    // (p | a) respectively a^{-1} c (p coprime to a) mod p^r, per star.
    std::map<std::tuple<int, int, long>, Rat> by_invariant;
    Rat star_sum[2] = {Rat(0), Rat(0)};
    for (const auto& cls : classes) {
      long a = mod_pos(cls.representative.a, N);
      long c = mod_pos(cls.representative.c, N);
      bool a_div = a % p == 0;
      long inv = a_div ? mod_pos(a * inverse_mod(c, N), N)
                       : mod_pos(inverse_mod(a, N) * c, N);
      auto key = std::make_tuple(cls.star, a_div ? 1 : 0, inv);
      Rat m = mult_of(cls);
      auto [it, fresh] = by_invariant.emplace(key, m);
      if (!fresh && it->second != m) {
        (a_div ? rep.cond1 : rep.cond2) = false;
      }
      star_sum[cls.star - 1] += m;
    }
    rep.cond3 = star_sum[0] == star_sum[1];
    rep.conditions_hold = rep.cond1 && rep.cond2 && rep.cond3;
  }
  rep.special = is_special(form, d).has_value();
  rep.agrees = rep.conditions_hold == rep.special;
  return rep;
}

}  // namespace specdiv
