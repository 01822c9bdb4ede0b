#pragma once

#include <map>
#include <vector>

#include "specdiv/cusps.hpp"
#include "specdiv/cyclotomic.hpp"
#include "specdiv/fqm.hpp"
#include "specdiv/linalg.hpp"

namespace specdiv {

/// Sparse vector in the group algebra of the discriminant form.
/// Coefficients live in the cyclotomic field of conductor N; entries
/// absent from the map are zero.
struct GroupAlgebraVector {
  DiscriminantForm form;
  std::map<FqmElement, CycNumber> coeffs;
};

/// Vector on the quotient H^perp / H, keyed by the lexicographically
/// least representative of each coset.
struct QuotientVector {
  FqmSubgroup subgroup;
  std::map<FqmElement, CycNumber> coeffs;
};

/// Coefficient field used for group-algebra vectors of the form:
/// conductor N = lcm(N, N').
std::shared_ptr<const CyclotomicField> coefficient_field(
    const DiscriminantForm& form);

/// Indicator vector of H (coefficient 1 on each element of H).
GroupAlgebraVector char_vector(const FqmSubgroup& H);

/// Isotropic descent: e_gamma maps to e_{gamma+H} when gamma is
/// orthogonal to H and to 0 otherwise.
QuotientVector descent(const FqmSubgroup& H, const GroupAlgebraVector& v);

/// Isotropic induction: e_{gamma+H} maps to the sum of e_{gamma+h}.
GroupAlgebraVector induction(const FqmSubgroup& H, const QuotientVector& w);

/// Standard bilinear pairing sum of products of matching coefficients.
CycNumber inner_product(const GroupAlgebraVector& a,
                        const GroupAlgebraVector& b);

/// Weil representation generator matrices, indexed by all_elements
/// order. T is diagonal e(q(gamma)); S has entries
/// e(-b(gamma, delta)) / (N N'). weil_S asserts the Milgram Gauss sum
/// (the signature factor must be 1).
Matrix<CycNumber> weil_T(const DiscriminantForm& form);
Matrix<CycNumber> weil_S(const DiscriminantForm& form);

/// Whether rho(T) v = v and rho(S) v = v.
bool is_invariant(const GroupAlgebraVector& v);

/// Dimension of the space of invariant vectors, by exact elimination
/// over the cyclotomic field. The kernel must admit a rational basis.
/// Guarded by max_form_order().
long invariant_space_dim(const DiscriminantForm& form);

/// Rank and relation kernel of {char_vector(H)}_{H in Types(L)},
/// indexed by enumerate_types order.
struct TypesSpan {
  long dimension = 0;
  std::vector<std::vector<Rat>> relation_kernel;
};
TypesSpan types_span(const DiscriminantForm& form);

/// The displayed prime-power relation among type characteristic
/// functions admits two readings: the literal one, where types hit by
/// several summation families accumulate coefficients, and the
/// non-overlapping one, where the middle family is restricted to
/// valuations not covered by the unit family.
struct RelationReadings {
  std::vector<Rat> literal;          // indexed by enumerate_types order
  std::vector<Rat> non_overlapping;  // same indexing
  bool literal_in_kernel = false;
  bool non_overlapping_in_kernel = false;
};
RelationReadings relation_readings(long p, int r, int rprime);

/// True iff at least one reading of the displayed relation lies in the
/// relation kernel.
bool relation_matches_paper(long p, int r, int rprime);

}  // namespace specdiv
