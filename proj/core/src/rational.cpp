#include "specdiv/rational.hpp"

#include "specdiv/errors.hpp"

namespace specdiv {

Rat rat_parse(const std::string& s) {
  if (s.empty()) throw InvalidArgument("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0) {
    throw InvalidArgument("malformed rational literal: '" + s + "'");
  }
  if (r.get_den() == 0) {
    throw InvalidArgument("zero denominator in rational literal: '" + s + "'");
  }
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Rat rat_mod1(const Rat& r) { return r - Rat(rat_floor(r)); }

}  // namespace specdiv
