#pragma once

#include <memory>
#include <vector>

#include "specdiv/rational.hpp"

namespace specdiv {

class CycNumber;

/// The m-th cyclotomic field Q(zeta_m), with elements represented as
/// residues modulo the m-th cyclotomic polynomial.
class CyclotomicField : public std::enable_shared_from_this<CyclotomicField> {
 public:
  /// Cached per conductor; fields are immutable.
  static std::shared_ptr<const CyclotomicField> create(long conductor);

  long conductor() const { return m_; }
  long degree() const { return degree_; }

  CycNumber zero() const;
  CycNumber one() const;
  CycNumber from_rational(const Rat& r) const;

  /// e(num/den) as a field element; den must divide the conductor.
  CycNumber root_of_unity(long num, long den) const;

  /// x^k reduced mod Phi_m, for 0 <= k < reduction table size.
  const std::vector<Rat>& power(long k) const { return power_table_[k]; }

 private:
  explicit CyclotomicField(long m);

  long m_;
  long degree_;
  std::vector<Rat> phi_;  // monic, size degree_ + 1
  std::vector<std::vector<Rat>> power_table_;

  friend class CycNumber;
};

/// An exact element of a cyclotomic field. A default-constructed value
/// is the zero of any field it meets.
class CycNumber {
 public:
  CycNumber() = default;
  CycNumber(std::shared_ptr<const CyclotomicField> field,
            std::vector<Rat> coeffs);

  bool is_zero() const;
  /// The rational value if the element is rational.
  bool is_rational() const;
  Rat rational_value() const;

  const std::vector<Rat>& coeffs() const { return c_; }
  std::shared_ptr<const CyclotomicField> field() const { return field_; }

  CycNumber operator+(const CycNumber& o) const;
  CycNumber operator-(const CycNumber& o) const;
  CycNumber operator-() const;
  CycNumber operator*(const CycNumber& o) const;
  CycNumber operator*(const Rat& r) const;
  CycNumber inverse() const;
  bool operator==(const CycNumber& o) const;

 private:
  std::shared_ptr<const CyclotomicField> field_;  // null means zero
  std::vector<Rat> c_;
};

}  // namespace specdiv
