#include <doctest.h>

#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "specdiv/cusps.hpp"
#include "specdiv/errors.hpp"

using namespace specdiv;

TEST_CASE("make_label canonicalization") {
  CHECK(make_label(1, 2, 4) == CuspLabel{1, 1, 2});
  CHECK(make_label(1, -2, -4) == CuspLabel{1, 1, 2});
  CHECK(make_label(2, -1, 2) == CuspLabel{2, -1, 2});
  CHECK(make_label(1, 3, 0) == CuspLabel{1, 1, 0});
  CHECK(make_label(1, -3, 0) == CuspLabel{1, 1, 0});
  CHECK(make_label(1, 0, 5) == CuspLabel{1, 0, 1});
  CHECK_THROWS_AS(make_label(1, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(make_label(3, 1, 0), InvalidArgument);
}

TEST_CASE("cusp_parameters on spec'd instances") {
  {
    DiscriminantForm form(1, 1);
    auto p = cusp_parameters(form, make_label(1, 5, 7));
    CHECK(p.M == 1);
    CHECK(p.d1 == 1);
    CHECK(p.d2 == 1);
    CHECK(p.u == 1);
  }
  {
    DiscriminantForm form(4, 1);
    CHECK(cusp_parameters(form, make_label(1, 1, 2)).M == 2);
  }
  {
    DiscriminantForm form(2, 2);
    auto p = cusp_parameters(form, make_label(1, 1, 1));
    CHECK(p.M == 1);
    CHECK(p.d1 == 1);
    CHECK(p.d2 == 1);
    CHECK(p.u == 1);
  }
}

TEST_CASE("types are self-dual isotropic and unit-invariant") {
  for (auto [N, Np] : {std::pair<long, long>{4, 2}, {6, 1}, {9, 3}, {2, 2}}) {
    DiscriminantForm form(N, Np);
    for (int star : {1, 2}) {
      for (long a = -5; a <= 5; ++a) {
        for (long c = 0; c <= 7; ++c) {
          if (a == 0 && c == 0) continue;
          if (std::gcd(std::abs(a), c) != 1) continue;
          CuspLabel l = make_label(star, a, c);
          FqmSubgroup H = type_of_cusp(form, l);
          CHECK(is_self_dual_isotropic(H));
          // Multiplying (a, c) by a unit mod N leaves the type fixed.
          for (long u : {5L, 7L}) {
            if (std::gcd(u, N) != 1) continue;
            CHECK(type_of_cusp(form, make_label(star, u * a, u * c)) == H);
          }
        }
      }
    }
  }
}

TEST_CASE("type counts match the closed formula on small forms") {
  for (auto [N, Np] :
       {std::pair<long, long>{1, 1}, {2, 1}, {2, 2}, {4, 1}, {4, 2},
        {4, 4}, {6, 1}, {6, 2}, {6, 6}, {8, 2}, {12, 1}, {12, 2}}) {
    DiscriminantForm form(N, Np);
    CHECK(static_cast<long>(enumerate_types(form).size()) ==
          types_count_formula(N, Np));
  }
  CHECK(types_count_formula(12, 1) == 6);
  CHECK(types_count_formula(4, 2) == 8);
  CHECK_THROWS_AS(types_count_formula(4, 3), InvalidArgument);
}

TEST_CASE("prime-power types are all realized with faithful witnesses") {
  // With a single prime the star shape cannot mismatch, so every type
  // has a realizing cusp; a direct sweep over labels must reach the
  // same set of types.
  for (auto [N, Np] : {std::pair<long, long>{4, 2}, {9, 3}, {8, 4}, {5, 5}}) {
    DiscriminantForm form(N, Np);
    std::set<FqmSubgroup> swept;
    long m = N * Np;
    // c ranges over [0, m^2) so that every residue class mod m of a
    // valid cusp is hit by a genuinely coprime pair.
    for (int star : {1, 2}) {
      swept.insert(type_of_cusp(form, make_label(star, 1, 0)));
      for (long a = 0; a < m; ++a) {
        for (long c = 1; c < m * m; ++c) {
          if (std::gcd(a, c) != 1) continue;
          swept.insert(type_of_cusp(form, make_label(star, a, c)));
        }
      }
    }
    auto types = enumerate_types(form);
    CHECK(types.size() == swept.size());
    for (const auto& tw : types) {
      CHECK(tw.realized);
      CHECK(swept.count(tw.type) == 1);
      CHECK(type_of_cusp(form, tw.witness) == tw.type);
    }
  }
}

TEST_CASE("star families coincide for N'=1 and are disjoint otherwise") {
  {
    DiscriminantForm form(12, 1);
    for (long a = -4; a <= 4; ++a) {
      for (long c = 0; c <= 5; ++c) {
        if ((a == 0 && c == 0) || std::gcd(std::abs(a), c) != 1) continue;
        CHECK(type_of_cusp(form, make_label(1, a, c)) ==
              type_of_cusp(form, make_label(2, a, c)));
      }
    }
  }
  for (auto [N, Np] : {std::pair<long, long>{2, 2}, {4, 2}, {9, 3}}) {
    DiscriminantForm form(N, Np);
    std::set<FqmSubgroup> star1, star2;
    for (const auto& tw : enumerate_types(form)) {
      (tw.witness.star == 1 ? star1 : star2).insert(tw.type);
    }
    for (const auto& H : star1) CHECK(star2.count(H) == 0);
  }
}

namespace {

long mod_pos(long v, long m) {
  long r = v % m;
  return r < 0 ? r + m : r;
}

// Reference implementation of the membership test: search a partner
// matrix mod N*N' with determinant 1 satisfying the four congruences
// a1 a2 = d1 d2 = 1 (mod N) and a1 d2 = a2 d1 = 1 (mod N'), with the
// partner subject to the same entry conditions (N | c, N' | b). Any
// residue matrix with unit determinant lifts to SL2(Z).
bool brute_member(const DiscriminantForm& form,
                  const std::array<std::array<long, 2>, 2>& m) {
  long N = form.N(), Np = form.Nprime(), mm = N * Np;
  long a1 = m[0][0], b1 = m[0][1], c1 = m[1][0], d1 = m[1][1];
  if (mod_pos(c1, N) != 0 || mod_pos(b1, Np) != 0) return false;
  for (long a2 = 0; a2 < mm; ++a2) {
    for (long d2 = 0; d2 < mm; ++d2) {
      if (mod_pos(a1 * a2 - 1, N) || mod_pos(d1 * d2 - 1, N)) continue;
      if (mod_pos(a1 * d2 - 1, Np) || mod_pos(a2 * d1 - 1, Np)) continue;
      for (long b2 = 0; b2 < mm; b2 += Np) {
        for (long c2 = 0; c2 < mm; c2 += N) {
          if (mod_pos(a2 * d2 - b2 * c2 - 1, mm) == 0) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("projected_group_member against partner search") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> small(-6, 6);
  for (auto [N, Np] : {std::pair<long, long>{2, 1}, {2, 2}, {4, 2}, {3, 3},
                       {6, 1}}) {
    DiscriminantForm form(N, Np);
    int checked = 0;
    while (checked < 60) {
      long a = small(rng), b = small(rng), c = small(rng), d = small(rng);
      if (a * d - b * c != 1) continue;
      ++checked;
      std::array<std::array<long, 2>, 2> m = {{{a, b}, {c, d}}};
      CHECK(projected_group_member(form, 1, m) == brute_member(form, m));
    }
  }
  DiscriminantForm form(2, 1);
  CHECK(projected_group_member(form, 1, {{{1, 1}, {0, 1}}}));
  CHECK(!projected_group_member(form, 1, {{{1, 0}, {1, 1}}}));
  CHECK_THROWS_AS(projected_group_member(form, 1, {{{1, 0}, {0, 2}}}),
                  InvalidArgument);
}

TEST_CASE("cusps_equivalent is an equivalence relation on samples") {
  DiscriminantForm form(4, 2);
  std::vector<CuspLabel> sample;
  for (long a = -3; a <= 3; ++a) {
    for (long c = 0; c <= 4; ++c) {
      if ((a == 0 && c == 0) || std::gcd(std::abs(a), c) != 1) continue;
      sample.push_back(make_label(1, a, c));
    }
  }
  for (const auto& l : sample) CHECK(cusps_equivalent(form, 1, l, l));
  for (const auto& l1 : sample) {
    for (const auto& l2 : sample) {
      bool e12 = cusps_equivalent(form, 1, l1, l2);
      CHECK(e12 == cusps_equivalent(form, 1, l2, l1));
      if (!e12) continue;
      CHECK(type_of_cusp(form, l1) == type_of_cusp(form, l2));
      for (const auto& l3 : sample) {
        if (cusps_equivalent(form, 1, l2, l3)) {
          CHECK(cusps_equivalent(form, 1, l1, l3));
        }
      }
    }
  }
}

TEST_CASE("cusp class counts on classical instances") {
  {
    // Trivial form: the projected group is SL2(Z), one cusp per star.
    auto classes = cusp_classes(DiscriminantForm(1, 1));
    CHECK(classes.size() == 2);
  }
  {
    // N=2, N'=1: the projection is Gamma_0(2) which has two cusps.
    auto classes = cusp_classes(DiscriminantForm(2, 1));
    CHECK(classes.size() == 4);
  }
  {
    // N=4, N'=1: Gamma_0(4) has three cusps (infinity, 0, 1/2).
    auto classes = cusp_classes(DiscriminantForm(4, 1));
    CHECK(classes.size() == 6);
  }
  {
    // N=6, N'=1: Gamma_0(6) has four cusps.
    auto classes = cusp_classes(DiscriminantForm(6, 1));
    CHECK(classes.size() == 8);
  }
}

TEST_CASE("cusp classes are consistent") {
  for (auto [N, Np] : {std::pair<long, long>{2, 2}, {4, 1}, {6, 1}, {3, 3}}) {
    DiscriminantForm form(N, Np);
    auto classes = cusp_classes(form);
    std::set<CuspLabel> reps;
    for (const auto& cls : classes) {
      CHECK(reps.insert(cls.representative).second);
      CHECK(cls.representative == cls.members.front());
      CHECK(cls.type == type_of_cusp(form, cls.representative));
      for (const auto& m : cls.members) {
        CHECK(m.star == cls.star);
        CHECK(cusps_equivalent(form, cls.star, cls.representative, m));
      }
    }
    // Distinct class representatives of the same star are inequivalent.
    for (size_t i = 0; i < classes.size(); ++i) {
      for (size_t j = i + 1; j < classes.size(); ++j) {
        if (classes[i].star != classes[j].star) continue;
        CHECK(!cusps_equivalent(form, classes[i].star,
                                classes[i].representative,
                                classes[j].representative));
      }
    }
    // Every realized type is the type of at least one class.
    for (const auto& tw : enumerate_types(form)) {
      if (!tw.realized) continue;
      bool found = false;
      for (const auto& cls : classes) {
        if (cls.type == tw.type) found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("type factorization against per-prime enumeration") {
  CHECK(type_factorization_check(6, 1));
  CHECK(type_factorization_check(6, 2));
  CHECK(type_factorization_check(6, 6));
  CHECK(type_factorization_check(12, 2));
  CHECK(type_factorization_check(12, 4));
}
