#pragma once

#include <map>
#include <utility>
#include <vector>

#include "specdiv/cusps.hpp"
#include "specdiv/cyclotomic.hpp"
#include "specdiv/fqm.hpp"
#include "specdiv/rational.hpp"

namespace specdiv {

/// A truncated formal series sum c_e q^e with rational exponents and
/// cyclotomic coefficients. Terms with exponent <= truncation are
/// exact; zero coefficients are not stored.
struct PuiseuxSeries {
  std::shared_ptr<const CyclotomicField> field;
  Rat truncation;
  std::map<Rat, CycNumber> terms;
};

PuiseuxSeries series_monomial(std::shared_ptr<const CyclotomicField> field,
                              const Rat& exponent, const CycNumber& coeff,
                              const Rat& truncation);
PuiseuxSeries series_add(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries series_mul(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries series_scale(const PuiseuxSeries& a, const CycNumber& c);
PuiseuxSeries series_pow(const PuiseuxSeries& a, long e);  // e >= 1
/// Termwise equality below the joint truncation.
bool series_equal(const PuiseuxSeries& a, const PuiseuxSeries& b);
/// Leading (exponent, coefficient); throws on a series with no terms.
std::pair<Rat, CycNumber> series_lead(const PuiseuxSeries& a);

/// One factor eta(alpha z + beta)^exponent of an eta quotient.
struct EtaFactor {
  Rat alpha;
  Rat beta;
  long exponent = 1;
};

/// e(beta/24) q^{alpha/24} prod (1 - e(n beta) q^{n alpha}), truncated.
/// conductor 0 selects the smallest field containing all coefficients.
PuiseuxSeries eta_expansion(const Rat& alpha, const Rat& beta,
                            const Rat& truncation, long conductor = 0);

/// The two eta factors of the Borcherds product of the characteristic
/// vector of type_of_cusp(label): first the z1 factor, then the z2
/// factor.
std::pair<EtaFactor, EtaFactor> psi_factors(const DiscriminantForm& form,
                                            const CuspLabel& label);

/// psi_factors expanded as series.
std::pair<PuiseuxSeries, PuiseuxSeries> psi_expansion(
    const DiscriminantForm& form, const CuspLabel& label,
    const Rat& truncation, long conductor = 0);

/// Verifies the unit-shift eta identity
///   prod_{u in (Z/p^r)^x} eta((z+u)/p^r)
///     = c * eta(z)^E / (eta(z/p) eta(pz))^G
/// with E = (p^{r+1} - 1 + p^{r-1} - 1)/(p - 1), G = (p^r - 1)/(p - 1),
/// by exact cross-multiplied comparison to `terms` worth of exponents;
/// returns the measured constant c. (A published form of this identity
/// replaces the G-th powers of eta(z/p), eta(pz) by eta(z/p^r),
/// eta(p^r z) and E by p^r - p^{r-1} + 2; the two coincide for r = 1,
/// but for r >= 2 only the version above balances degrees.)
struct EtaIdentityResult {
  bool holds = false;
  CycNumber constant;
};
EtaIdentityResult eta_identity_check(long p, int r, long terms);

/// Lifts the unique linear relation among type characteristic vectors
/// of L_{p^r, p^{r'}} to an identity of eta products: the products of
/// psi_expansion factors weighted by the relation kernel agree up to a
/// constant, separately in each variable.
bool relation_lift_check(long p, int r, int rprime, long terms);

/// Vanishing order of the eta quotient at the cusp a/c, as the leading
/// exponent in e(w) of the conjugated factors.
Rat order_at_cusp(const std::vector<EtaFactor>& factors, long a, long c);

/// Compares, on every cusp class, the level-normalized order of the
/// relevant component of the eta product of H against the intersection
/// count with the class type.
struct CrossValidation {
  std::vector<CuspLabel> classes;
  std::vector<Rat> ratios;
  bool constant = false;
  Rat constant_value;
};
CrossValidation cross_validate_boundary(const DiscriminantForm& form,
                                        const FqmSubgroup& H, long terms);

}  // namespace specdiv
