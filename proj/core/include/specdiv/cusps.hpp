#pragma once

#include <array>
#include <compare>
#include <vector>

#include "specdiv/fqm.hpp"

namespace specdiv {

/// A one-dimensional boundary component: star 1 is {a/c} x H, star 2 is
/// H x {a/c}. Normalized so that gcd(a, c) = 1, c >= 0 and c = 0 forces
/// a = 1 (the cusp at infinity).
struct CuspLabel {
  int star = 1;
  long a = 1;
  long c = 0;

  auto operator<=>(const CuspLabel&) const = default;
};

/// Normalizes (a, c) to the canonical representative. Throws
/// InvalidArgument if a = c = 0.
CuspLabel make_label(int star, long a, long c);

struct CuspParameters {
  long M = 1;   // gcd(N/N', c)
  long d1 = 1;  // gcd(a, N')
  long d2 = 1;  // gcd(c/M, N')
  long u = 1;   // unit mod N' aligning the first type generator
};

CuspParameters cusp_parameters(const DiscriminantForm& form,
                               const CuspLabel& label);

/// The self-dual isotropic subgroup attached to the isotropic plane of
/// the labelled boundary component.
FqmSubgroup type_of_cusp(const DiscriminantForm& form, const CuspLabel& label);

struct TypeWitness {
  FqmSubgroup type;
  CuspLabel witness;
  /// Whether some cusp has this exact type. Types factor through the
  /// p-primary components, but a single cusp fixes the same "star
  /// shape" at every prime dividing N'; the remaining p-primary
  /// combinations are types of the lattice without a realizing cusp.
  bool realized = true;
};

/// All distinct types (every combination of p-primary type components),
/// ordered by canonical subgroup form; realized entries carry the least
/// label realizing them.
std::vector<TypeWitness> enumerate_types(const DiscriminantForm& form);

/// Closed-form count of |Types(L_{N,N'})|.
long types_count_formula(long N, long Nprime);

/// Whether the 2x2 integer matrix (det 1) is the star-component of some
/// element of the discriminant kernel.
bool projected_group_member(const DiscriminantForm& form, int star,
                            const std::array<std::array<long, 2>, 2>& mat);

bool cusps_equivalent(const DiscriminantForm& form, int star,
                      const CuspLabel& l1, const CuspLabel& l2);

struct CuspClass {
  int star;
  CuspLabel representative;           // lexicographically least member
  std::vector<CuspLabel> members;     // level-NN' representatives merged
  FqmSubgroup type;
};

/// Complete list of cusp classes for both stars, deterministic order.
/// Guarded by max_form_order().
std::vector<CuspClass> cusp_classes(const DiscriminantForm& form);

/// Checks |Types(L_{N,N'})| against the product of the p-component
/// counts, both sides enumerated independently.
bool type_factorization_check(long N, long Nprime);

}  // namespace specdiv
