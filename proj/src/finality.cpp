#include "fibcat/finality.hpp"

#include <map>
#include <set>

#include "fibcat/fibration.hpp"
#include "fibcat/homology.hpp"
#include "fibcat/ids.hpp"

namespace fibcat {

namespace {

FinalityVerdict commas_verdict(const Functor& f, int certify_dim, bool final) {
  const auto& d = f.target();
  FinalityVerdict v;
  v.functor = f;
  v.certify_dim = certify_dim;
  v.holds = true;
  for (int y = 0; y < d.object_count(); ++y) {
    auto cm = final ? comma(point(d, y), f) : comma(f, point(d, y));
    FinalityEntry e;
    e.object = y;
    e.nonempty = cm.category.object_count() > 0;
    e.connected = e.nonempty && is_connected(cm.category);
    if (certify_dim >= 0) e.homology_trivial = e.connected && homology(cm.category, certify_dim).reduced_trivial();
    if (!e.ok() && v.holds) {
      v.holds = false;
      const char* kind = !e.nonempty ? "empty_comma" : !e.connected ? "disconnected_comma" : "comma_homology";
      v.witness = Witness{kind, {d.object_id(y)}, {}};
    }
    v.entries.push_back(e);
  }
  return v;
}

// Normalized chain map induced by a functor, as matrices per degree.
IntMatrix chain_map(const TruncatedNerve& a, const TruncatedNerve& b, const Functor& f, int k) {
  IntMatrix m(static_cast<int>(b.count(k)), static_cast<int>(a.count(k)));
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < b.count(k); ++i) index[b.simplices[k][i]] = static_cast<int>(i);
  for (std::size_t s = 0; s < a.count(k); ++s) {
    std::vector<int> img;
    bool degenerate = false;
    for (int x : a.simplices[k][s]) {
      const int y = k == 0 ? f.object(x) : f.morphism(x);
      if (k > 0 && f.target().is_identity(y)) degenerate = true;
      img.push_back(y);
    }
    if (degenerate) continue;
    m.at(index.at(img), static_cast<int>(s)) += 1;
  }
  return m;
}

IntMatrix nerve_boundary(const TruncatedNerve& n, int k) {
  IntMatrix m(static_cast<int>(n.count(k - 1)), static_cast<int>(n.count(k)));
  for (std::size_t s = 0; s < n.count(k); ++s)
    for (int i = 0; i <= k; ++i)
      if (n.faces[k][s][i] >= 0) m.at(n.faces[k][s][i], static_cast<int>(s)) += (i % 2 == 0) ? 1 : -1;
  return m;
}

// Mapping cone of f_*: C_*(A) → C_*(B) is acyclic through degree `top`.
bool cone_acyclic(const Functor& f, int top) {
  auto na = nerve(f.source(), top);
  auto nb = nerve(f.target(), top);
  // Cone_n = A_{n-1} ⊕ B_n, d(a, b) = (-∂a, f a + ∂b).
  std::vector<std::size_t> dims;
  for (int n = 0; n <= top + 1; ++n) dims.push_back((n >= 1 ? na.count(n - 1) : 0) + nb.count(n));
  std::vector<IntMatrix> bd;
  bd.emplace_back(0, 0);
  for (int n = 1; n <= top + 1; ++n) {
    const int ra = n >= 2 ? static_cast<int>(na.count(n - 2)) : 0;
    const int rb = static_cast<int>(nb.count(n - 1));
    const int ca = static_cast<int>(na.count(n - 1));
    const int cb = static_cast<int>(nb.count(n));
    IntMatrix m(ra + rb, ca + cb);
    if (n >= 2) {
      auto da = nerve_boundary(na, n - 1);
      for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ca; ++j) m.at(i, j) = -da.at(i, j);
    }
    auto fm = chain_map(na, nb, f, n - 1);
    for (int i = 0; i < rb; ++i)
      for (int j = 0; j < ca; ++j) m.at(ra + i, j) = fm.at(i, j);
    auto db = nerve_boundary(nb, n);
    for (int i = 0; i < rb; ++i)
      for (int j = 0; j < cb; ++j) m.at(ra + i, ca + j) = db.at(i, j);
    bd.push_back(std::move(m));
  }
  for (const auto& g : chain_homology(dims, bd, top))
    if (g.rank != 0 || !g.torsion.empty()) return false;
  return true;
}

// F/d → F/d' induced by g: d → d'.
Functor comma_transport(const Functor& f, int g) {
  const auto& d = f.target();
  const auto& c = f.source();
  auto from = comma(f, point(d, d.src(g)));
  auto to = comma(f, point(d, d.tgt(g)));
  auto obj_id = [&](int x, int psi) { return tuple_id({c.object_id(x), d.morphism_id(psi), "*"}); };
  std::vector<int> om(from.category.object_count()), mm(from.category.morphism_count());
  // Recover (x, psi) per object of `from`.
  std::map<int, std::pair<int, int>> data;
  for (int x = 0; x < c.object_count(); ++x)
    for (int psi : d.hom(f.object(x), d.src(g))) {
      const int i = from.category.object_index(obj_id(x, psi));
      data[i] = {x, psi};
      om[i] = to.category.object_index(obj_id(x, d.compose(g, psi)));
    }
  for (int m = 0; m < from.category.morphism_count(); ++m) {
    const int s = from.category.src(m), t = from.category.tgt(m);
    const int alpha = from.to_source.morphism(m);
    const auto [xs, ps] = data[s];
    const auto [xt, pt] = data[t];
    mm[m] = to.category.morphism_index(tuple_id({obj_id(xs, d.compose(g, ps)), c.morphism_id(alpha), "*->*",
                                                 obj_id(xt, d.compose(g, pt))}));
  }
  return Functor(from.category, to.category, std::move(om), std::move(mm));
}

}  // namespace

FinalityVerdict is_final(const Functor& f, int certify_dim) { return commas_verdict(f, certify_dim, true); }

FinalityVerdict is_initial(const Functor& f, int certify_dim) { return commas_verdict(f, certify_dim, false); }

Verdict theoremB_hypothesis(const Functor& f, int dim) {
  const auto& d = f.target();
  for (int g = 0; g < d.morphism_count(); ++g) {
    if (d.is_identity(g)) continue;
    if (!cone_acyclic(comma_transport(f, g), dim + 1))
      return Verdict::no(Witness{"slice_transport_not_homology_iso", {d.morphism_id(g)},
                                 "mapping cone not acyclic through degree " + std::to_string(dim + 1)});
  }
  return Verdict::yes();
}

std::vector<int> pi0_map(const Functor& f) {
  auto ls = pi0(f.source());
  auto lt = pi0(f.target());
  int n = 0;
  pi0(f.source(), &n);
  std::vector<int> out(n, -1);
  for (int x = 0; x < f.source().object_count(); ++x) out[ls[x]] = lt[f.object(x)];
  return out;
}

PullbackSquare pullback_square(const Functor& right, const Functor& bottom) {
  auto pb = pullback(bottom, right);
  return {pb.second, pb.first, right, bottom};
}

Verdict quillenB_pi0_square(const PullbackSquare& sq) {
  if (auto v = is_left_final(sq.right); !v)
    throw PreconditionError("right leg is not left final", *v.witness);
  if (auto v = is_right_initial(sq.right); !v)
    throw PreconditionError("right leg is not right initial", *v.witness);
  if (!(compose(sq.right, sq.top) == compose(sq.bottom, sq.left)))
    throw PreconditionError("square does not commute", Witness{"not_commutative", {}, {}});
  auto pb = pullback(sq.bottom, sq.right);
  const auto& xp = sq.top.source();
  const auto& yp = sq.left.target();
  const auto& x = sq.top.target();
  std::vector<int> om(xp.object_count()), mm(xp.morphism_count());
  for (int i = 0; i < xp.object_count(); ++i)
    om[i] = pb.category.object_index(
        tuple_id({yp.object_id(sq.left.object(i)), x.object_id(sq.top.object(i))}));
  for (int m = 0; m < xp.morphism_count(); ++m)
    mm[m] = pb.category.morphism_index(
        tuple_id({yp.morphism_id(sq.left.morphism(m)), x.morphism_id(sq.top.morphism(m))}));
  if (!is_isomorphism(Functor(xp, pb.category, om, mm)))
    throw PreconditionError("square is not a strict pullback", Witness{"not_pullback", {}, {}});

  auto c_left = pi0_map(sq.left);
  auto c_top = pi0_map(sq.top);
  auto c_right = pi0_map(sq.right);
  auto c_bottom = pi0_map(sq.bottom);
  std::set<std::pair<int, int>> target;
  for (std::size_t a = 0; a < c_bottom.size(); ++a)
    for (std::size_t b = 0; b < c_right.size(); ++b)
      if (c_bottom[a] == c_right[b]) target.emplace(static_cast<int>(a), static_cast<int>(b));
  std::map<std::pair<int, int>, int> hit;
  for (std::size_t k = 0; k < c_left.size(); ++k) {
    std::pair<int, int> img{c_left[k], c_top[k]};
    if (!hit.emplace(img, static_cast<int>(k)).second)
      return Verdict::no(Witness{"pi0_not_injective", {std::to_string(hit[img]), std::to_string(k)}, {}});
  }
  for (const auto& t : target)
    if (!hit.count(t))
      return Verdict::no(Witness{"pi0_not_surjective", {std::to_string(t.first), std::to_string(t.second)}, {}});
  return Verdict::yes();
}

}  // namespace fibcat
