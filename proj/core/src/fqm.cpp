#include "specdiv/fqm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "specdiv/errors.hpp"

namespace specdiv {

namespace {

long mod_pos(long v, long m) {
  long r = v % m;
  return r < 0 ? r + m : r;
}

using Row = std::array<long, 4>;
using Mat4 = std::array<Row, 4>;

/// Row Hermite normal form of the lattice spanned by `rows`. The caller
/// guarantees full rank (relation rows are always appended), so the
/// result is upper triangular with positive diagonal and entries above
/// each pivot reduced into [0, pivot).
Mat4 hermite_normal_form(std::vector<Row> rows) {
  std::array<int, 4> pivot_of{};
  int next = 0;
  for (int col = 0; col < 4; ++col) {
    // Euclidean elimination in this column among rows [next, end).
    for (;;) {
      int best = -1;
      for (int r = next; r < static_cast<int>(rows.size()); ++r) {
        if (rows[r][col] != 0 &&
            (best < 0 ||
             std::abs(rows[r][col]) < std::abs(rows[best][col]))) {
          best = r;
        }
      }
      if (best < 0) throw InternalError("hnf: rank deficient input");
      std::swap(rows[next], rows[best]);
      bool others = false;
      for (int r = next + 1; r < static_cast<int>(rows.size()); ++r) {
        if (rows[r][col] == 0) continue;
        long q = rows[r][col] / rows[next][col];
        for (int j = 0; j < 4; ++j) rows[r][j] -= q * rows[next][j];
        if (rows[r][col] != 0) others = true;
      }
      if (!others) break;
    }
    if (rows[next][col] < 0) {
      for (int j = 0; j < 4; ++j) rows[next][j] = -rows[next][j];
    }
    pivot_of[col] = next;
    ++next;
  }
  // Reduce entries above each pivot.
  for (int col = 0; col < 4; ++col) {
    int p = pivot_of[col];
    long d = rows[p][col];
    for (int r = 0; r < p; ++r) {
      long q = rows[r][col] / d;
      if (rows[r][col] - q * d < 0) --q;
      if (q == 0) continue;
      for (int j = 0; j < 4; ++j) rows[r][j] -= q * rows[p][j];
    }
  }
  Mat4 out{};
  for (int i = 0; i < 4; ++i) out[i] = rows[i];
  return out;
}

}  // namespace

DiscriminantForm::DiscriminantForm(long N, long Nprime)
    : N_(N), Nprime_(Nprime) {
  if (N <= 0 || Nprime <= 0) {
    throw InvalidArgument("discriminant form needs positive N, N'");
  }
  if (N % Nprime != 0) {
    throw InvalidArgument("N' = " + std::to_string(Nprime) +
                          " does not divide N = " + std::to_string(N));
  }
}

FqmElement reduce(const DiscriminantForm& form, long w, long x, long y,
                  long z) {
  return {mod_pos(w, form.N()), mod_pos(x, form.N()),
          mod_pos(y, form.Nprime()), mod_pos(z, form.Nprime())};
}

FqmElement add(const DiscriminantForm& form, const FqmElement& a,
               const FqmElement& b) {
  return reduce(form, a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z);
}

FqmElement negate(const DiscriminantForm& form, const FqmElement& a) {
  return reduce(form, -a.w, -a.x, -a.y, -a.z);
}

FqmElement scale(const DiscriminantForm& form, long k, const FqmElement& a) {
  long kw = mod_pos(k, form.N());
  long kp = mod_pos(k, form.Nprime());
  return reduce(form, kw * a.w, kw * a.x, kp * a.y, kp * a.z);
}

FqmElement element_from_matrix(const DiscriminantForm& form,
                               const std::array<Rat, 4>& entries) {
  const Rat& a = entries[0];
  const Rat& b = entries[1];
  const Rat& c = entries[2];
  const Rat& d = entries[3];
  Rat na = a * form.Nprime();
  Rat nb = b * form.N();
  Rat nc = c * form.Nprime();
  Rat nd = d * form.Nprime();
  for (const Rat* v : {&na, &nb, &nc, &nd}) {
    if (v->get_den() != 1) {
      throw InvalidArgument(
          "matrix is not in the dual lattice: denominators too large");
    }
  }
  // Identification (a',b';c',d') -> (Nb', N'c', N'a', -N'd'). The second
  // coordinate is N'c'; this is the unique choice compatible with
  // q(w,x,y,z) = wx/N + yz/N' and q(X) = -N' det(X).
  return reduce(form, nb.get_num().get_si(), nc.get_num().get_si(),
                na.get_num().get_si(), -nd.get_num().get_si());
}

RationalMod1 q_value(const DiscriminantForm& form, const FqmElement& g) {
  Rat v = Rat(g.w * g.x, form.N()) + Rat(g.y * g.z, form.Nprime());
  v.canonicalize();
  return RationalMod1(v);
}

RationalMod1 bilinear(const DiscriminantForm& form, const FqmElement& g,
                      const FqmElement& h) {
  // Polarization of q; computed directly to stay linear in each slot.
  Rat v = Rat(g.w * h.x + g.x * h.w, form.N()) +
          Rat(g.y * h.z + g.z * h.y, form.Nprime());
  v.canonicalize();
  return RationalMod1(v);
}

std::vector<FqmElement> all_elements(const DiscriminantForm& form) {
  std::vector<FqmElement> out;
  out.reserve(form.order());
  for (long w = 0; w < form.N(); ++w)
    for (long x = 0; x < form.N(); ++x)
      for (long y = 0; y < form.Nprime(); ++y)
        for (long z = 0; z < form.Nprime(); ++z) out.push_back({w, x, y, z});
  return out;
}

FqmSubgroup FqmSubgroup::from_generators(const DiscriminantForm& form,
                                         const std::vector<FqmElement>& gens) {
  std::vector<Row> rows;
  rows.reserve(gens.size() + 4);
  for (const auto& g : gens) {
    FqmElement r = reduce(form, g.w, g.x, g.y, g.z);
    rows.push_back({r.w, r.x, r.y, r.z});
  }
  auto m = form.moduli();
  for (int i = 0; i < 4; ++i) {
    Row rel{};
    rel[i] = m[i];
    rows.push_back(rel);
  }
  Mat4 hnf = hermite_normal_form(std::move(rows));
  long det = 1;
  for (int i = 0; i < 4; ++i) det *= hnf[i][i];
  long order = form.order() / det;
  return FqmSubgroup(form, hnf, order);
}

FqmSubgroup FqmSubgroup::trivial(const DiscriminantForm& form) {
  return from_generators(form, {});
}

std::vector<FqmElement> FqmSubgroup::generators() const {
  std::vector<FqmElement> out;
  for (int i = 0; i < 4; ++i) {
    FqmElement g =
        reduce(form_, hnf_[i][0], hnf_[i][1], hnf_[i][2], hnf_[i][3]);
    if (!g.is_zero()) out.push_back(g);
  }
  return out;
}

bool FqmSubgroup::contains(const FqmElement& g) const {
  FqmElement r = reduce(form_, g.w, g.x, g.y, g.z);
  Row v = {r.w, r.x, r.y, r.z};
  for (int i = 0; i < 4; ++i) {
    if (v[i] % hnf_[i][i] != 0) return false;
    long q = v[i] / hnf_[i][i];
    for (int j = i; j < 4; ++j) v[j] -= q * hnf_[i][j];
  }
  return v == Row{0, 0, 0, 0};
}

std::vector<FqmElement> FqmSubgroup::elements() const {
  std::set<FqmElement> closed{FqmElement{}};
  auto gens = generators();
  std::vector<FqmElement> frontier(closed.begin(), closed.end());
  while (!frontier.empty()) {
    std::vector<FqmElement> next;
    for (const auto& e : frontier) {
      for (const auto& g : gens) {
        FqmElement s = add(form_, e, g);
        if (closed.insert(s).second) next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  if (static_cast<long>(closed.size()) != order_) {
    throw InternalError("subgroup closure size does not match HNF order");
  }
  return {closed.begin(), closed.end()};
}

FqmElement FqmSubgroup::coset_representative(const FqmElement& g) const {
  FqmElement best = reduce(form_, g.w, g.x, g.y, g.z);
  for (const auto& h : elements()) {
    FqmElement cand = add(form_, g, h);
    if (cand < best) best = cand;
  }
  return best;
}

bool FqmSubgroup::operator<(const FqmSubgroup& o) const {
  if (form_.N() != o.form_.N()) return form_.N() < o.form_.N();
  if (form_.Nprime() != o.form_.Nprime())
    return form_.Nprime() < o.form_.Nprime();
  return hnf_ < o.hnf_;
}

long intersection_count(const FqmSubgroup& H1, const FqmSubgroup& H2) {
  if (!(H1.form() == H2.form())) {
    throw InvalidArgument("intersection of subgroups of different forms");
  }
  const FqmSubgroup& small = H1.order() <= H2.order() ? H1 : H2;
  const FqmSubgroup& big = H1.order() <= H2.order() ? H2 : H1;
  long count = 0;
  for (const auto& e : small.elements()) {
    if (big.contains(e)) ++count;
  }
  return count;
}

FqmSubgroup orthogonal_complement(const FqmSubgroup& H) {
  const DiscriminantForm& form = H.form();
  auto gens = H.generators();
  std::vector<FqmElement> comp;
  for (const auto& e : all_elements(form)) {
    bool ok = true;
    for (const auto& g : gens) {
      if (!bilinear(form, e, g).is_zero()) {
        ok = false;
        break;
      }
    }
    if (ok) comp.push_back(e);
  }
  return FqmSubgroup::from_generators(form, comp);
}

bool is_isotropic(const FqmSubgroup& H) {
  for (const auto& e : H.elements()) {
    if (!q_value(H.form(), e).is_zero()) return false;
  }
  return true;
}

bool is_self_dual_isotropic(const FqmSubgroup& H) {
  if (!is_isotropic(H)) return false;
  return orthogonal_complement(H) == H;
}

std::vector<FqmSubgroup> enumerate_self_dual_isotropic(
    const DiscriminantForm& form) {
  check_form_order_guard(form.order(), "enumerate_self_dual_isotropic");
  const long target = form.N() * form.Nprime();

  std::vector<FqmElement> iso;
  for (const auto& e : all_elements(form)) {
    if (q_value(form, e).is_zero()) iso.push_back(e);
  }

  // Grow isotropic subgroups by adjoining isotropic elements orthogonal
  // to everything already present. An isotropic subgroup has order at
  // most sqrt(|D|) = target; those hitting the bound are self-dual.
  std::set<FqmSubgroup> seen;
  std::set<FqmSubgroup> found;
  std::vector<FqmSubgroup> frontier{FqmSubgroup::trivial(form)};
  seen.insert(frontier.front());
  if (target == 1) found.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<FqmSubgroup> next;
    for (const auto& H : frontier) {
      auto gens = H.generators();
      for (const auto& e : iso) {
        if (H.contains(e)) continue;
        bool orth = true;
        for (const auto& g : gens) {
          if (!bilinear(form, e, g).is_zero()) {
            orth = false;
            break;
          }
        }
        if (!orth) continue;
        auto ext = gens;
        ext.push_back(e);
        FqmSubgroup H2 = FqmSubgroup::from_generators(form, ext);
        if (H2.order() > target) continue;
        if (!seen.insert(H2).second) continue;
        if (H2.order() == target) {
          found.insert(H2);
        } else {
          next.push_back(H2);
        }
      }
    }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

FqmSubgroup p_primary_part(const FqmSubgroup& H, long p) {
  const DiscriminantForm& form = H.form();
  long N = form.N();
  if (p < 2 || N % p != 0) {
    throw InvalidArgument("p = " + std::to_string(p) +
                          " does not divide N = " + std::to_string(N));
  }
  long pv = 1;
  long rest = N;
  while (rest % p == 0) {
    rest /= p;
    pv *= p;
  }
  // CRT idempotent: e = 1 mod p^v, e = 0 mod N/p^v. Scaling by e
  // projects every cyclic component onto its p-part.
  long e = 0;
  for (long k = 0; k < pv; ++k) {
    if ((k * rest) % pv == 1 % pv) {
      e = k * rest;
      break;
    }
  }
  std::vector<FqmElement> gens;
  for (const auto& g : H.generators()) gens.push_back(scale(form, e, g));
  return FqmSubgroup::from_generators(form, gens);
}

}  // namespace specdiv
