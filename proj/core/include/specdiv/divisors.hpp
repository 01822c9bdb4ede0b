#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "specdiv/cusps.hpp"
#include "specdiv/invariants.hpp"

namespace specdiv {

/// A rational boundary divisor, supported on cusp classes and keyed by
/// their representative labels. Absent classes have multiplicity zero.
struct BoundaryDivisor {
  DiscriminantForm form;
  std::map<CuspLabel, Rat> entries;
};

/// A rational function on Types(L), keyed by canonical subgroups.
struct TypeMultiplicityFunction {
  DiscriminantForm form;
  std::map<FqmSubgroup, Rat> entries;
};

/// Z(H): multiplicity #(H intersect type(S)) on every cusp class S.
BoundaryDivisor special_divisor(const DiscriminantForm& form,
                                const FqmSubgroup& H);

/// Type T maps to the zero-coset coefficient of descent(T, v). Rejects
/// non-invariant v.
TypeMultiplicityFunction boundary_divisor_of_invariant(
    const DiscriminantForm& form, const GroupAlgebraVector& v);

struct SpecialCertificate {
  std::vector<Rat> coefficients;  // indexed by enumerate_types order
  GroupAlgebraVector invariant_vector;
};

/// Decides whether d lies in the span of {Z(H)}; on success returns
/// coefficients and the invariant vector realizing d.
std::optional<SpecialCertificate> is_special(const DiscriminantForm& form,
                                             const BoundaryDivisor& d);

/// Rank of the special-divisor family, computed over cusp classes when
/// the class list is within guard, over type indices otherwise.
long spbdiv_dimension(const DiscriminantForm& form);

/// (N_z, N_ztilde) with N_z = N' gcd(c, a N/N') and
/// N_ztilde = |type| / N_z.
std::pair<long, long> levels_of_cusp(const DiscriminantForm& form,
                                     const CuspLabel& label);

/// intersection_count(H, type(label)) / 24.
Rat weyl_component_constant(const DiscriminantForm& form, const FqmSubgroup& H,
                            const CuspLabel& label);

/// (1/2) sum over b1 mod N_z, b2 mod N_ztilde of
/// 1_H(b1 g_z + b2 g_ztilde) B2(b2 / N_ztilde).
Rat weyl_component_b2(const DiscriminantForm& form, const FqmSubgroup& H,
                      const CuspLabel& label);

/// Explicit divisor characterizations in the two regimes where the
/// multiplicity pattern has a closed description.
struct CharacterizationReport {
  bool regime_N1 = false;  // N' = 1; otherwise N = N' = p^r
  // N' = 1 regime
  bool symmetric = false;
  bool gcd_dependent = false;
  // N = N' = p^r regime
  bool cond1 = false;  // p | a components depend only on a c^{-1}
  bool cond2 = false;  // p coprime a components depend only on a^{-1} c
  bool cond3 = false;  // total multiplicity balanced between the stars
  bool conditions_hold = false;
  bool special = false;
  bool agrees = false;  // conditions_hold == special
};
CharacterizationReport characterization_check(const DiscriminantForm& form,
                                              const BoundaryDivisor& d);

}  // namespace specdiv
