#include <doctest.h>

#include <random>
#include <tuple>

#include "specdiv/errors.hpp"
#include "specdiv/qeta.hpp"

using namespace specdiv;

TEST_CASE("eta(z) matches the pentagonal number series") {
  // q^{1/24} prod (1 - q^n) = q^{1/24} sum_k (-1)^k q^{k(3k-1)/2}.
  PuiseuxSeries s = eta_expansion(Rat(1), Rat(0), Rat(50));
  std::map<Rat, long> expected;
  for (long k = -10; k <= 10; ++k) {
    long e = k * (3 * k - 1) / 2;
    if (e <= 50) expected[Rat(1, 24) + Rat(e)] = (k % 2 == 0) ? 1 : -1;
  }
  for (const auto& [e, c] : s.terms) {
    if (e > s.truncation) continue;  // tail terms past truncation are inexact
    REQUIRE(c.is_rational());
    auto it = expected.find(e);
    REQUIRE(it != expected.end());
    CHECK(c.rational_value() == Rat(it->second));
  }
  for (const auto& [e, c] : expected) {
    if (e > s.truncation) continue;
    CHECK(s.terms.count(e) == 1);
  }
}

TEST_CASE("series arithmetic: ring laws and powers") {
  auto field = CyclotomicField::create(12);
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> exp(-4, 8);
  std::uniform_int_distribution<long> coeff(-5, 5);
  std::uniform_int_distribution<long> root(0, 11);
  auto random_series = [&]() {
    PuiseuxSeries s{field, Rat(6), {}};
    for (int t = 0; t < 6; ++t) {
      CycNumber c = field->from_rational(Rat(coeff(rng))) *
                    field->root_of_unity(root(rng), 12);
      s = series_add(s, series_monomial(field, Rat(exp(rng), 3), c, Rat(6)));
    }
    return s;
  };
  for (int trial = 0; trial < 10; ++trial) {
    PuiseuxSeries a = random_series();
    PuiseuxSeries b = random_series();
    PuiseuxSeries c = random_series();
    CHECK(series_equal(series_mul(a, b), series_mul(b, a)));
    CHECK(series_equal(series_mul(series_mul(a, b), c),
                       series_mul(a, series_mul(b, c))));
    CHECK(series_equal(series_mul(a, series_add(b, c)),
                       series_add(series_mul(a, b), series_mul(a, c))));
    PuiseuxSeries p = a;
    for (int e = 2; e <= 4; ++e) {
      p = series_mul(p, a);
      CHECK(series_equal(series_pow(a, e), p));
    }
  }
}

TEST_CASE("psi factors lead with exponent alpha/24") {
  for (auto [N, Np] : {std::pair<long, long>{2, 1}, {4, 2}, {3, 3}}) {
    DiscriminantForm form(N, Np);
    for (auto label : {make_label(1, 1, 0), make_label(1, 0, 1),
                       make_label(2, 1, 1)}) {
      auto [f1, f2] = psi_factors(form, label);
      auto [s1, s2] = psi_expansion(form, label, Rat(3));
      CHECK(series_lead(s1).first == f1.alpha * Rat(f1.exponent, 24));
      CHECK(series_lead(s2).first == f2.alpha * Rat(f2.exponent, 24));
    }
  }
}

TEST_CASE("unit-shift eta identity and its constant") {
  auto expect_constant = [](const EtaIdentityResult& res, long phi) {
    REQUIRE(res.holds);
    auto field = res.constant.field();
    REQUIRE(field != nullptr);
    CHECK(res.constant == field->root_of_unity(phi, 48));
  };
  expect_constant(eta_identity_check(2, 1, 40), 1);   // phi(2) = 1
  expect_constant(eta_identity_check(3, 1, 40), 2);   // phi(3) = 2
  expect_constant(eta_identity_check(2, 2, 30), 2);   // phi(4) = 2
}

TEST_CASE("order_at_cusp for eta(delta z)") {
  for (long delta : {1L, 2L, 3L, 4L, 6L}) {
    std::vector<EtaFactor> f = {{Rat(delta), Rat(0), 1}};
    for (auto [a, c] : {std::pair<long, long>{1, 0}, {0, 1}, {1, 2},
                        {1, 3}, {2, 3}, {1, 6}, {5, 6}}) {
      long g = c == 0 ? delta : std::gcd(delta, c);
      Rat want(g * g, 24 * delta);
      want.canonicalize();
      CHECK(order_at_cusp(f, a, c) == want);
    }
  }
  // Sanity values: eta(2z) has order 1/12 at infinity and 1/48 at 0.
  std::vector<EtaFactor> eta2 = {{Rat(2), Rat(0), 1}};
  CHECK(order_at_cusp(eta2, 1, 0) == Rat(1, 12));
  CHECK(order_at_cusp(eta2, 0, 1) == Rat(1, 48));
  // Exponents scale the order linearly.
  std::vector<EtaFactor> sq = {{Rat(2), Rat(0), -3}};
  CHECK(order_at_cusp(sq, 0, 1) == Rat(-1, 16));
}

TEST_CASE("relation lifts to an eta-product identity") {
  CHECK(relation_lift_check(2, 1, 1, 40));
  CHECK(relation_lift_check(3, 1, 1, 30));
}

TEST_CASE("cross-validation of boundary orders") {
  for (auto [N, Np] : {std::pair<long, long>{2, 1}, {2, 2}, {4, 1}}) {
    DiscriminantForm form(N, Np);
    for (const auto& tw : enumerate_types(form)) {
      CrossValidation cv = cross_validate_boundary(form, tw.type, 24);
      CHECK(cv.constant);
      CHECK(cv.constant_value == Rat(1, 24));
      CHECK(cv.classes.size() == cv.ratios.size());
      CHECK(cv.classes.size() == cusp_classes(form).size());
    }
  }
  // Types without a realizing cusp are rejected.
  DiscriminantForm big(6, 6);
  for (const auto& tw : enumerate_types(big)) {
    if (tw.realized) continue;
    CHECK_THROWS_AS(cross_validate_boundary(big, tw.type, 8), InvalidArgument);
    break;
  }
}
