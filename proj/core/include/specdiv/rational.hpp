#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace specdiv {

using Int = mpz_class;
using Rat = mpq_class;

/// Parses "p/q" or "p". Throws InvalidArgument on malformed input or q = 0.
Rat rat_parse(const std::string& s);

/// Renders as "p/q", always including the denominator ("2/1").
std::string rat_str(const Rat& r);

/// Representative of r mod 1 in [0, 1).
Rat rat_mod1(const Rat& r);

/// Floor of a rational as an Int.
Int rat_floor(const Rat& r);

/// An exact value in Q/Z, normalized to [0, 1) with reduced fraction.
class RationalMod1 {
 public:
  RationalMod1() : v_(0) {}
  explicit RationalMod1(const Rat& r) : v_(rat_mod1(r)) {}

  const Rat& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  RationalMod1 operator+(const RationalMod1& o) const {
    return RationalMod1(v_ + o.v_);
  }
  RationalMod1 operator-(const RationalMod1& o) const {
    return RationalMod1(v_ - o.v_);
  }
  bool operator==(const RationalMod1& o) const { return v_ == o.v_; }
  bool operator<(const RationalMod1& o) const { return v_ < o.v_; }

 private:
  Rat v_;
};

}  // namespace specdiv
