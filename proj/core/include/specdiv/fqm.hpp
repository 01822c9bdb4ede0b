#pragma once

#include <array>
#include <compare>
#include <vector>

#include "specdiv/rational.hpp"

namespace specdiv {

/// The discriminant form of U(N) + U(N'), realized as
/// (Z/N)^2 + (Z/N')^2 with q(w,x,y,z) = wx/N + yz/N' in Q/Z.
class DiscriminantForm {
 public:
  DiscriminantForm(long N, long Nprime);

  long N() const { return N_; }
  long Nprime() const { return Nprime_; }
  long order() const { return N_ * N_ * Nprime_ * Nprime_; }
  std::array<long, 4> moduli() const { return {N_, N_, Nprime_, Nprime_}; }

  bool operator==(const DiscriminantForm& o) const {
    return N_ == o.N_ && Nprime_ == o.Nprime_;
  }

 private:
  long N_;
  long Nprime_;
};

/// An element (w, x, y, z), components reduced to [0, modulus).
struct FqmElement {
  long w = 0, x = 0, y = 0, z = 0;

  auto operator<=>(const FqmElement&) const = default;
  bool is_zero() const { return w == 0 && x == 0 && y == 0 && z == 0; }
};

FqmElement reduce(const DiscriminantForm& form, long w, long x, long y, long z);
FqmElement add(const DiscriminantForm& form, const FqmElement& a,
               const FqmElement& b);
FqmElement negate(const DiscriminantForm& form, const FqmElement& a);
FqmElement scale(const DiscriminantForm& form, long k, const FqmElement& a);

/// Maps a matrix (a', b'; c', d') in the dual lattice to its class
/// (Nb', N'c', N'a', -N'd'). Rejects entries outside the dual lattice.
FqmElement element_from_matrix(const DiscriminantForm& form,
                               const std::array<Rat, 4>& entries);

RationalMod1 q_value(const DiscriminantForm& form, const FqmElement& g);
RationalMod1 bilinear(const DiscriminantForm& form, const FqmElement& g,
                      const FqmElement& h);

/// All elements of the form, in lexicographic (w, x, y, z) order.
std::vector<FqmElement> all_elements(const DiscriminantForm& form);

/// A subgroup in canonical form. The canonical data is the Hermite
/// normal form of the lattice spanned by generator lifts together with
/// the relation rows diag(N, N, N', N'), so equality of subgroups is
/// equality of the stored matrices.
class FqmSubgroup {
 public:
  static FqmSubgroup from_generators(const DiscriminantForm& form,
                                     const std::vector<FqmElement>& gens);
  static FqmSubgroup trivial(const DiscriminantForm& form);

  const DiscriminantForm& form() const { return form_; }
  long order() const { return order_; }

  /// Nonzero canonical generators (reduced HNF rows).
  std::vector<FqmElement> generators() const;

  bool contains(const FqmElement& g) const;

  /// All elements, lexicographically sorted.
  std::vector<FqmElement> elements() const;

  /// Lexicographically least element of the coset g + H.
  FqmElement coset_representative(const FqmElement& g) const;

  bool operator==(const FqmSubgroup& o) const {
    return form_ == o.form_ && hnf_ == o.hnf_;
  }
  /// Deterministic total order (forms first, then canonical matrices).
  bool operator<(const FqmSubgroup& o) const;

 private:
  FqmSubgroup(const DiscriminantForm& form,
              std::array<std::array<long, 4>, 4> hnf, long order)
      : form_(form), hnf_(hnf), order_(order) {}

  DiscriminantForm form_;
  std::array<std::array<long, 4>, 4> hnf_;
  long order_;
};

/// Order of H1 intersect H2. Throws InvalidArgument on mismatched forms.
long intersection_count(const FqmSubgroup& H1, const FqmSubgroup& H2);

FqmSubgroup orthogonal_complement(const FqmSubgroup& H);

bool is_isotropic(const FqmSubgroup& H);
bool is_self_dual_isotropic(const FqmSubgroup& H);

/// All self-dual isotropic subgroups, deterministically ordered.
/// Guarded by max_form_order().
std::vector<FqmSubgroup> enumerate_self_dual_isotropic(
    const DiscriminantForm& form);

/// Image of H under projection to the p-primary component.
FqmSubgroup p_primary_part(const FqmSubgroup& H, long p);

}  // namespace specdiv
