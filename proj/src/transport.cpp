#include "fibcat/transport.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include "fibcat/constructions.hpp"
#include "fibcat/ids.hpp"
#include "fibcat/union_find.hpp"

namespace fibcat {

namespace {

[[noreturn]] void refuse(const std::string& what, const Verdict& v) {
  throw PreconditionError(what, v.witness.value_or(Witness{"precondition", {}, what}));
}

std::string join_id(const std::vector<std::string>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out + ")";
}

// Ambient index → index in the subcategory, -1 outside.
std::vector<int> object_positions(const Subcategory& s, int ambient_count) {
  std::vector<int> pos(ambient_count, -1);
  for (int i = 0; i < s.category.object_count(); ++i) pos[s.inclusion.object(i)] = i;
  return pos;
}

std::vector<int> morphism_positions(const Subcategory& s, int ambient_count) {
  std::vector<int> pos(ambient_count, -1);
  for (int i = 0; i < s.category.morphism_count(); ++i) pos[s.inclusion.morphism(i)] = i;
  return pos;
}

bool is_vertical(const Functor& pi, int m) {
  return pi.target().is_identity(pi.morphism(m));
}

// The unique vertical w: a → b accepted by the predicate; -1 if none, -2 if
// several.
int unique_vertical(const Functor& pi, int a, int b, const std::function<bool(int)>& accept) {
  const auto& e = pi.source();
  int found = -1;
  for (int w : e.hom(a, b)) {
    if (!is_vertical(pi, w) || !accept(w)) continue;
    if (found >= 0) return -2;
    found = w;
  }
  return found;
}

}  // namespace

// ---- category-valued functors ----------------------------------------------

ValidationReport validate_cat_functor(const CatValuedFunctor& f) {
  ValidationReport rep;
  const auto& k = f.base;
  auto add = [&](std::string kind, std::vector<std::string> ids) { rep.violations.push_back({std::move(kind), std::move(ids), ""}); };
  if (static_cast<int>(f.values.size()) != k.object_count() || static_cast<int>(f.maps.size()) != k.morphism_count()) {
    add("shape", {});
    return rep;
  }
  for (int x = 0; x < k.object_count(); ++x)
    if (!validate_category(f.values[x]).ok()) add("invalid_value", {k.object_id(x)});
  if (!rep.ok()) return rep;
  for (int m = 0; m < k.morphism_count(); ++m) {
    if (!(f.maps[m].source() == f.values[k.src(m)]) || !(f.maps[m].target() == f.values[k.tgt(m)]))
      add("map_typing", {k.morphism_id(m)});
    else if (!validate_functor(f.maps[m]).ok())
      add("invalid_map", {k.morphism_id(m)});
  }
  if (!rep.ok()) return rep;
  for (int x = 0; x < k.object_count(); ++x)
    if (!(f.maps[k.identity(x)] == identity_functor(f.values[x]))) add("identity", {k.object_id(x)});
  for (int g = 0; g < k.morphism_count(); ++g)
    for (int m : k.in(k.src(g)))
      if (!(f.maps[k.compose(g, m)] == compose(f.maps[g], f.maps[m])))
        add("composite", {k.morphism_id(g), k.morphism_id(m)});
  return rep;
}

void require_valid(const CatValuedFunctor& f, std::string_view what) {
  auto rep = validate_cat_functor(f);
  if (!rep.ok()) throw ValidationError(std::string(what) + ": invalid category-valued functor", rep.violations);
}

CatValuedFunctor constant_cat_functor(const FiniteCategory& k, const FiniteCategory& c) {
  CatValuedFunctor f{k, std::vector<FiniteCategory>(k.object_count(), c),
                     std::vector<Functor>(k.morphism_count(), identity_functor(c))};
  return f;
}

// ---- (co)Cartesian replacement ---------------------------------------------

CartesianReplacement cocart_replacement(const Functor& pi) {
  require_valid(pi, "cocart_replacement");
  const auto& e = pi.source();
  const auto& k = pi.target();
  const auto ar = arrow_category(k);
  const auto pb = pullback(pi, ar.ev_s);
  const auto& t = pb.category;
  CartesianReplacement out;
  out.projection = compose(ar.ev_t, pb.second);

  auto id_of = [&](int x) { return k.morphism_id(k.identity(x)); };
  auto square = [&](int u, int a, int b, int u2) {
    return tuple_id({k.morphism_id(u), k.morphism_id(a), k.morphism_id(b), k.morphism_id(u2)});
  };
  std::vector<int> objs(e.object_count()), mors(e.morphism_count());
  for (int x = 0; x < e.object_count(); ++x) objs[x] = t.object_index(tuple_id({e.object_id(x), id_of(pi.object(x))}));
  for (int m = 0; m < e.morphism_count(); ++m) {
    const int a = k.identity(pi.object(e.src(m))), b = k.identity(pi.object(e.tgt(m)));
    mors[m] = t.morphism_index(tuple_id({e.morphism_id(m), square(a, pi.morphism(m), pi.morphism(m), b)}));
  }
  out.unit = Functor(e, t, objs, mors);
  require_valid(out.unit, "replacement unit");

  if (!is_cocartesian_fibration(out.projection)) throw InvariantError("coCartesian replacement is not coCartesian");
  if (!is_fully_faithful(out.unit)) throw InvariantError("replacement unit is not fully faithful");
  if (!(compose(out.projection, out.unit) == pi)) throw InvariantError("replacement unit is not over the base");
  if (!is_cocartesian_fibration(pi)) return out;

  // L(e, u) = target of the chosen lift of u at e.
  std::vector<int> lift(t.object_count()), lobj(t.object_count()), lmor(t.morphism_count());
  for (int o = 0; o < t.object_count(); ++o) {
    lift[o] = cocartesian_lift(pi, pb.first.object(o), pb.second.object(o));
    lobj[o] = e.tgt(lift[o]);
  }
  for (int m = 0; m < t.morphism_count(); ++m) {
    const int s = t.src(m), d = t.tgt(m);
    const int b = ar.ev_t.morphism(pb.second.morphism(m));
    const int want = e.compose(lift[d], pb.first.morphism(m));
    int found = -1, count = 0;
    for (int h : e.hom(lobj[s], lobj[d]))
      if (pi.morphism(h) == b && e.compose(h, lift[s]) == want) {
        found = h;
        ++count;
      }
    if (count != 1) throw InvariantError("no unique factorization through a coCartesian lift");
    lmor[m] = found;
  }
  Functor left(t, e, lobj, lmor);
  require_valid(left, "replacement adjoint");
  if (!(compose(pi, left) == out.projection)) throw InvariantError("replacement adjoint is not over the base");
  if (!(compose(left, out.unit) == identity_functor(e))) throw InvariantError("replacement adjoint is not a retraction");
  // η: (e, u) → (L(e, u), id), given by the lift itself.
  std::vector<int> eta(t.object_count());
  for (int o = 0; o < t.object_count(); ++o) {
    const int u = pb.second.object(o);
    const int x = k.tgt(u);
    eta[o] = t.morphism_index(tuple_id({e.morphism_id(lift[o]), square(u, u, k.identity(x), k.identity(x))}));
  }
  for (int m = 0; m < t.morphism_count(); ++m)
    if (t.compose(out.unit.morphism(lmor[m]), eta[t.src(m)]) != t.compose(eta[t.tgt(m)], m))
      throw InvariantError("replacement unit transformation is not natural");
  for (int o = 0; o < t.object_count(); ++o)
    if (!e.is_identity(left.morphism(eta[o]))) throw InvariantError("triangle identity fails on the adjoint");
  for (int x = 0; x < e.object_count(); ++x)
    if (!t.is_identity(eta[out.unit.object(x)])) throw InvariantError("triangle identity fails on the unit");
  out.adjoint = left;
  return out;
}

CartesianReplacement cart_replacement(const Functor& pi) {
  auto r = cocart_replacement(opposite(pi));
  CartesianReplacement out{opposite(r.projection), opposite(r.unit), std::nullopt};
  if (r.adjoint) out.adjoint = opposite(*r.adjoint);
  return out;
}

// ---- discrete (un)straightening ---------------------------------------------

Functor unstraighten(const SetFunctor& f) {
  require_valid(f, "unstraighten");
  const auto& k = f.base;
  CategoryBuilder b;
  std::vector<int> off(k.object_count() + 1, 0), moff(k.morphism_count() + 1, 0);
  for (int x = 0; x < k.object_count(); ++x) {
    off[x + 1] = off[x] + f.size(x);
    for (const auto& v : f.values[x]) b.add_object(tuple_id({k.object_id(x), v}));
  }
  std::vector<int> base_of, elem_of;
  for (int m = 0; m < k.morphism_count(); ++m) {
    const int s = k.src(m), d = k.tgt(m);
    moff[m + 1] = moff[m] + f.size(s);
    for (int a = 0; a < f.size(s); ++a) {
      b.add_morphism(tuple_id({k.morphism_id(m), f.values[s][a]}), off[s] + a, off[d] + f.act(m, a));
      base_of.push_back(m);
      elem_of.push_back(a);
    }
  }
  for (int x = 0; x < k.object_count(); ++x)
    for (int a = 0; a < f.size(x); ++a) b.set_identity(off[x] + a, moff[k.identity(x)] + a);
  auto r = b.build([&](int g, int h) {
    const int c = k.compose(base_of[g], base_of[h]);
    return c < 0 ? -1 : moff[c] + elem_of[h];
  });
  std::vector<int> objs(r.category.object_count()), mors(r.category.morphism_count());
  for (int x = 0; x < k.object_count(); ++x)
    for (int a = 0; a < f.size(x); ++a) objs[r.object_index[off[x] + a]] = x;
  for (int i = 0; i < static_cast<int>(base_of.size()); ++i) mors[r.morphism_index[i]] = base_of[i];
  return Functor(r.category, k, objs, mors);
}

Functor unstraighten_contravariant(const SetFunctor& f) { return opposite(unstraighten(f)); }

SetFunctor straighten_discrete_opfib(const Functor& pi) {
  require_valid(pi, "straighten_discrete_opfib");
  if (auto v = is_discrete_opfibration(pi); !v) refuse("straightening needs a discrete opfibration", v);
  const auto& e = pi.source();
  const auto& k = pi.target();
  SetFunctor f;
  f.base = k;
  f.values.resize(k.object_count());
  std::vector<int> pos(e.object_count());
  for (int x = 0; x < e.object_count(); ++x) {
    auto& v = f.values[pi.object(x)];
    pos[x] = static_cast<int>(v.size());
    v.push_back(e.object_id(x));
  }
  f.maps.resize(k.morphism_count());
  for (int m = 0; m < k.morphism_count(); ++m) f.maps[m].assign(f.size(k.src(m)), -1);
  for (int h = 0; h < e.morphism_count(); ++h) f.maps[pi.morphism(h)][pos[e.src(h)]] = pos[e.tgt(h)];
  require_valid(f, "straightening");
  return f;
}

SetFunctor straighten_discrete_fib(const Functor& pi) {
  if (auto v = is_discrete_fibration(pi); !v) refuse("straightening needs a discrete fibration", v);
  return straighten_discrete_opfib(opposite(pi));
}

bool check_discrete_roundtrip(const SetFunctor& f) {
  const auto g = straighten_discrete_opfib(unstraighten(f));
  const auto& k = f.base;
  SetTransformation t;
  t.components.resize(k.object_count());
  for (int x = 0; x < k.object_count(); ++x)
    for (const auto& v : f.values[x]) t.components[x].push_back(g.element_index(x, tuple_id({k.object_id(x), v})));
  return is_natural_isomorphism(f, g, t);
}

bool check_discrete_roundtrip(const Functor& pi) {
  const auto s = straighten_discrete_opfib(pi);
  const auto p = unstraighten(s);
  const auto& e = pi.source();
  const auto& k = pi.target();
  const auto& t = p.source();
  std::vector<int> objs(t.object_count(), -1), mors(t.morphism_count(), -1);
  for (int x = 0; x < k.object_count(); ++x)
    for (const auto& v : s.values[x]) objs[t.object_index(tuple_id({k.object_id(x), v}))] = e.object_index(v);
  for (int m = 0; m < k.morphism_count(); ++m)
    for (const auto& v : s.values[k.src(m)]) {
      const int src = e.object_index(v);
      for (int h : e.out(src))
        if (pi.morphism(h) == m) mors[t.morphism_index(tuple_id({k.morphism_id(m), v}))] = h;
    }
  Functor iso(t, e, objs, mors);
  return validate_functor(iso).ok() && is_isomorphism(iso) && compose(pi, iso) == p;
}

std::vector<SetFunctor> enumerate_set_functors(const FiniteCategory& k, int max_size, std::size_t cap) {
  const int n = k.object_count(), nm = k.morphism_count();
  std::vector<SetFunctor> out;
  std::vector<int> sizes(n, 0);
  std::size_t tried = 0;
  std::vector<int> free;
  for (int m = 0; m < nm; ++m)
    if (!k.is_identity(m)) free.push_back(m);
  std::vector<std::vector<int>> maps(nm);
  std::vector<char> assigned(nm, 0);
  auto consistent = [&](int m) {
    for (int g = 0; g < nm; ++g) {
      if (!assigned[g]) continue;
      for (int f : {m}) {
        // g ∘ f and f ∘ g when all three are assigned.
        for (auto [a, b] : {std::pair{g, f}, std::pair{f, g}}) {
          if (k.tgt(b) != k.src(a)) continue;
          const int c = k.compose(a, b);
          if (!assigned[c]) continue;
          for (int x = 0; x < sizes[k.src(b)]; ++x)
            if (maps[a][maps[b][x]] != maps[c][x]) return false;
        }
      }
    }
    return true;
  };
  std::function<void(int)> assign = [&](int i) {
    if (++tried > cap) throw EnumerationCapExceeded("set functor enumeration", cap);
    if (i == static_cast<int>(free.size())) {
      SetFunctor f;
      f.base = k;
      f.values.resize(n);
      for (int x = 0; x < n; ++x)
        for (int a = 0; a < sizes[x]; ++a) f.values[x].push_back(std::to_string(a));
      f.maps = maps;
      out.push_back(std::move(f));
      return;
    }
    const int m = free[i];
    const int s = sizes[k.src(m)], d = sizes[k.tgt(m)];
    if (s > 0 && d == 0) return;
    std::vector<int> choice(s, 0);
    for (;;) {
      maps[m] = choice;
      assigned[m] = 1;
      if (consistent(m)) assign(i + 1);
      assigned[m] = 0;
      int j = 0;
      while (j < s && ++choice[j] == d) choice[j++] = 0;
      if (j == s) break;
    }
  };
  std::function<void(int)> pick_sizes = [&](int x) {
    if (x == n) {
      std::fill(assigned.begin(), assigned.end(), 0);
      for (int y = 0; y < n; ++y) {
        const int id = k.identity(y);
        maps[id].resize(sizes[y]);
        for (int a = 0; a < sizes[y]; ++a) maps[id][a] = a;
        assigned[id] = 1;
      }
      assign(0);
      return;
    }
    for (int s = 0; s <= max_size; ++s) {
      sizes[x] = s;
      pick_sizes(x + 1);
    }
  };
  pick_sizes(0);
  return out;
}

// ---- left and right fibration replacement ---------------------------------

FibrationReplacement lfib_replacement(const Functor& pi) {
  require_valid(pi, "lfib_replacement");
  const auto& j = pi.source();
  const auto& k = pi.target();
  const int n = k.object_count();
  SetFunctor f;
  f.base = k;
  f.values.resize(n);
  std::vector<Comma> commas;
  std::vector<std::vector<int>> cls(n);  // comma object → position in values
  std::vector<std::vector<int>> rep(n);  // position → representative comma object
  std::vector<std::string> star(n);
  for (int x = 0; x < n; ++x) {
    const auto pt = point(k, x);
    star[x] = pt.source().object_id(0);
    commas.push_back(comma(pi, pt));
    const auto& c = commas.back().category;
    UnionFind uf(c.object_count());
    for (int m = 0; m < c.morphism_count(); ++m) uf.unite(c.src(m), c.tgt(m));
    cls[x].assign(c.object_count(), -1);
    for (int o = 0; o < c.object_count(); ++o)
      if (uf.find(o) == static_cast<std::size_t>(o)) {
        cls[x][o] = static_cast<int>(f.values[x].size());
        f.values[x].push_back(c.object_id(o));
        rep[x].push_back(o);
      }
    for (int o = 0; o < c.object_count(); ++o) cls[x][o] = cls[x][uf.find(o)];
  }
  auto comma_object = [&](int x, int src, int phi) {
    return commas[x].category.object_index(tuple_id({j.object_id(src), k.morphism_id(phi), star[x]}));
  };
  // Each comma object of x is (j, φ) for the unique φ with the id built above.
  std::vector<std::vector<std::pair<int, int>>> parts(n);
  for (int x = 0; x < n; ++x) {
    parts[x].resize(commas[x].category.object_count());
    for (int a = 0; a < j.object_count(); ++a)
      for (int phi : k.hom(pi.object(a), x)) parts[x][comma_object(x, a, phi)] = {a, phi};
  }
  f.maps.resize(k.morphism_count());
  for (int g = 0; g < k.morphism_count(); ++g) {
    const int x = k.src(g), y = k.tgt(g);
    f.maps[g].assign(f.size(x), -1);
    for (int o = 0; o < static_cast<int>(parts[x].size()); ++o) {
      const auto [a, phi] = parts[x][o];
      const int image = cls[y][comma_object(y, a, k.compose(g, phi))];
      int& slot = f.maps[g][cls[x][o]];
      if (slot >= 0 && slot != image) throw InvariantError("postcomposition is not well defined on components");
      slot = image;
    }
  }
  require_valid(f, "left fibration replacement");
  FibrationReplacement out{f, unstraighten(f), {}};
  const auto& t = out.fibration.source();
  std::vector<int> objs(j.object_count()), mors(j.morphism_count());
  auto element = [&](int a) {
    const int x = pi.object(a);
    return f.values[x][cls[x][comma_object(x, a, k.identity(x))]];
  };
  for (int a = 0; a < j.object_count(); ++a) objs[a] = t.object_index(tuple_id({k.object_id(pi.object(a)), element(a)}));
  for (int m = 0; m < j.morphism_count(); ++m)
    mors[m] = t.morphism_index(tuple_id({k.morphism_id(pi.morphism(m)), element(j.src(m))}));
  out.unit = Functor(j, t, objs, mors);
  require_valid(out.unit, "left fibration replacement unit");
  if (!(compose(out.fibration, out.unit) == pi)) throw InvariantError("replacement unit is not over the base");
  return out;
}

FibrationReplacement rfib_replacement(const Functor& pi) {
  auto r = lfib_replacement(opposite(pi));
  return {r.values, opposite(r.fibration), opposite(r.unit)};
}

UniversalPropertyCheck check_replacement_universal_property(const FibrationReplacement& r, const Functor& pi,
                                                            const Functor& z, std::size_t cap) {
  UniversalPropertyCheck out;
  const auto replaced = enumerate_functors_over(r.fibration, z, cap);
  const auto original = enumerate_functors_over(pi, z, cap);
  out.replaced = replaced.size();
  out.original = original.size();
  std::set<std::string> image, target;
  for (const auto& s : replaced) {
    auto id = functor_id(compose(s, r.unit));
    if (!image.insert(id).second) {
      out.witness = Witness{"not_injective", {functor_id(s)}, "two functors restrict to the same one"};
      return out;
    }
  }
  for (const auto& s : original) target.insert(functor_id(s));
  for (const auto& id : target)
    if (!image.count(id)) {
      out.witness = Witness{"not_surjective", {id}, "a functor over the base does not extend"};
      return out;
    }
  out.holds = image == target;
  if (!out.holds) out.witness = Witness{"not_over_base", {}, "a restriction is not among the functors over the base"};
  return out;
}

// ---- relative classifying space -------------------------------------------

RelativeClassifyingSpace relative_classifying_space(const Functor& pi) {
  require_valid(pi, "relative_classifying_space");
  RelativeClassifyingSpace out;
  if (auto lf = is_left_final(pi); !lf) {
    if (auto ri = is_right_initial(pi); !ri)
      refuse("relative classifying space needs a left final or right initial functor", lf);
    out.from_left_final = false;
  }
  const bool left = out.from_left_final;
  const auto& e = pi.source();
  const auto& k = pi.target();
  UnionFind uf(e.object_count());
  for (int m = 0; m < e.morphism_count(); ++m)
    if (is_vertical(pi, m)) uf.unite(e.src(m), e.tgt(m));
  std::vector<int> root(e.object_count());
  for (int x = 0; x < e.object_count(); ++x) root[x] = static_cast<int>(uf.find(x));

  CategoryBuilder b;
  std::vector<int> obj(e.object_count(), -1), obj_base;
  for (int x = 0; x < e.object_count(); ++x)
    if (root[x] == x) {
      obj[x] = b.add_object(tuple_id({k.object_id(pi.object(x)), e.object_id(x)}));
      obj_base.push_back(pi.object(x));
    }
  // The morphism over f attached to a component: out of it (left) or into it (right).
  std::map<std::pair<int, int>, int> mor;
  std::vector<int> mor_base, mor_comp;
  for (int r = 0; r < e.object_count(); ++r) {
    if (root[r] != r) continue;
    const int x = pi.object(r);
    for (int f : left ? k.out(x) : k.in(x)) {
      std::set<int> ends;
      for (int a = 0; a < e.object_count(); ++a) {
        if (root[a] != r) continue;
        for (int h : left ? e.out(a) : e.in(a))
          if (pi.morphism(h) == f) ends.insert(root[left ? e.tgt(h) : e.src(h)]);
      }
      if (ends.size() != 1)
        throw InvariantError("component transport is not unique along " + k.morphism_id(f) + " at " + e.object_id(r));
      const int other = *ends.begin();
      const int i = b.add_morphism(tuple_id({k.morphism_id(f), e.object_id(r)}), left ? obj[r] : obj[other],
                                   left ? obj[other] : obj[r]);
      mor[{f, r}] = i;
      mor_base.push_back(f);
      mor_comp.push_back(r);
      if (k.is_identity(f)) b.set_identity(obj[r], i);
    }
  }
  auto r = b.build([&](int g, int f) {
    const int c = k.compose(mor_base[g], mor_base[f]);
    auto it = mor.find({c, left ? mor_comp[f] : mor_comp[g]});
    return it == mor.end() ? -1 : it->second;
  });
  require_valid(r.category, "relative classifying space");
  std::vector<int> objs(r.category.object_count()), mors(r.category.morphism_count());
  for (int i = 0; i < static_cast<int>(obj_base.size()); ++i) objs[r.object_index[i]] = obj_base[i];
  for (int i = 0; i < static_cast<int>(mor_base.size()); ++i) mors[r.morphism_index[i]] = mor_base[i];
  out.projection = Functor(r.category, k, objs, mors);
  require_valid(out.projection, "relative classifying space projection");
  std::vector<int> uo(e.object_count()), um(e.morphism_count());
  for (int x = 0; x < e.object_count(); ++x) uo[x] = r.object_index[obj[root[x]]];
  for (int h = 0; h < e.morphism_count(); ++h)
    um[h] = r.morphism_index[mor.at({pi.morphism(h), root[left ? e.src(h) : e.tgt(h)]})];
  out.unit = Functor(e, r.category, uo, um);
  require_valid(out.unit, "relative classifying space unit");
  if (!(compose(out.projection, out.unit) == pi)) throw InvariantError("classifying space unit is not over the base");
  if (!is_conservative(out.projection)) throw InvariantError("relative classifying space is not conservative");
  if (left ? !is_discrete_opfibration(out.projection) : !is_discrete_fibration(out.projection))
    throw InvariantError("relative classifying space is not a discrete (op)fibration");
  return out;
}

// ---- category-valued (un)straightening ------------------------------------

Functor unstraighten_cat(const CatValuedFunctor& f) {
  require_valid(f, "unstraighten_cat");
  const auto& k = f.base;
  CategoryBuilder b;
  std::map<std::pair<int, int>, int> obj;
  for (int x = 0; x < k.object_count(); ++x)
    for (int a = 0; a < f.values[x].object_count(); ++a)
      obj[{x, a}] = b.add_object(tuple_id({k.object_id(x), f.values[x].object_id(a)}));
  struct Mor {
    int f, e, phi;
  };
  std::vector<Mor> data;
  std::map<std::tuple<int, int, int>, int> mor;
  for (int m = 0; m < k.morphism_count(); ++m) {
    const int x = k.src(m), y = k.tgt(m);
    const auto& fy = f.values[y];
    for (int a = 0; a < f.values[x].object_count(); ++a) {
      const auto& ea = f.values[x].object_id(a);
      for (int phi : fy.out(f.maps[m].object(a))) {
        const auto id = fy.is_identity(phi) ? tuple_id({ea, k.morphism_id(m)})
                                            : tuple_id({ea, k.morphism_id(m), fy.morphism_id(phi)});
        const int i = b.add_morphism(id, obj.at({x, a}), obj.at({y, fy.tgt(phi)}));
        mor[{m, a, phi}] = i;
        data.push_back({m, a, phi});
        if (k.is_identity(m) && fy.is_identity(phi)) b.set_identity(obj.at({x, a}), i);
      }
    }
  }
  auto r = b.build([&](int g, int h) {
    const auto& dg = data[g];
    const auto& dh = data[h];
    const int c = k.compose(dg.f, dh.f);
    if (c < 0) return -1;
    const auto& fz = f.values[k.tgt(dg.f)];
    const int phi = fz.compose(dg.phi, f.maps[dg.f].morphism(dh.phi));
    auto it = mor.find({c, dh.e, phi});
    return it == mor.end() ? -1 : it->second;
  });
  std::vector<int> objs(r.category.object_count()), mors(r.category.morphism_count());
  for (const auto& [key, i] : obj) objs[r.object_index[i]] = key.first;
  for (int i = 0; i < static_cast<int>(data.size()); ++i) mors[r.morphism_index[i]] = data[i].f;
  Functor out(r.category, k, objs, mors);
  require_valid(r.category, "unstraightening");
  require_valid(out, "unstraightening projection");
  if (!is_cocartesian_fibration(out)) throw InvariantError("unstraightening is not coCartesian");
  return out;
}

Straightening straighten_cocart(const Functor& pi) {
  require_valid(pi, "straighten_cocart");
  if (auto v = is_cocartesian_fibration(pi); !v) refuse("straightening needs a coCartesian fibration", v);
  const auto& e = pi.source();
  const auto& k = pi.target();
  const int ne = e.object_count(), nm = k.morphism_count();
  Straightening out;
  std::vector<std::vector<int>> lift(nm, std::vector<int>(ne, -1));
  for (int f = 0; f < nm; ++f)
    for (int a = 0; a < ne; ++a)
      if (pi.object(a) == k.src(f)) {
        lift[f][a] = cocartesian_lift(pi, a, f);
        if (lift[f][a] < 0) throw InvariantError("missing coCartesian lift");
        out.cleavage.lifts.push_back({a, f, lift[f][a]});
      }
  auto push = [&](int f, int a) { return e.tgt(lift[f][a]); };
  // F(f) on vertical morphisms over the source of f.
  std::vector<std::vector<int>> vimg(nm, std::vector<int>(e.morphism_count(), -1));
  for (int f = 0; f < nm; ++f)
    for (int v = 0; v < e.morphism_count(); ++v) {
      if (!is_vertical(pi, v) || pi.object(e.src(v)) != k.src(f)) continue;
      const int want = e.compose(lift[f][e.tgt(v)], v);
      const int w = unique_vertical(pi, push(f, e.src(v)), push(f, e.tgt(v)),
                                    [&](int c) { return e.compose(c, lift[f][e.src(v)]) == want; });
      if (w < 0) throw InvariantError("vertical morphism has no unique transport");
      vimg[f][v] = w;
    }
  std::map<std::tuple<int, int, int>, int> comp;
  out.cleavage.split = true;
  for (int f = 0; f < nm; ++f)
    for (int g : k.out(k.tgt(f)))
      for (int a = 0; a < ne; ++a) {
        if (lift[f][a] < 0) continue;
        const int gf = k.compose(g, f);
        const int first = lift[gf][a];
        const int second = e.compose(lift[g][push(f, a)], lift[f][a]);
        const int c = unique_vertical(pi, e.tgt(first), e.tgt(second),
                                      [&](int w) { return e.compose(w, first) == second; });
        if (c < 0 || !e.is_isomorphism(c)) throw InvariantError("cleavage comparison is not an isomorphism");
        comp[{f, g, a}] = c;
        out.cleavage.comparisons.push_back({f, g, a, c});
        if (!e.is_identity(c)) out.cleavage.split = false;
      }
  for (int f = 0; f < nm; ++f)
    for (int g : k.out(k.tgt(f)))
      for (int h : k.out(k.tgt(g)))
        for (int a = 0; a < ne; ++a) {
          if (lift[f][a] < 0) continue;
          const int gf = k.compose(g, f), hg = k.compose(h, g);
          const int lhs = e.compose(vimg[h][comp.at({f, g, a})], comp.at({gf, h, a}));
          const int rhs = e.compose(comp.at({g, h, push(f, a)}), comp.at({f, hg, a}));
          if (lhs != rhs) throw InvariantError("cleavage comparisons violate the cocycle identity");
        }
  if (!out.cleavage.split) return out;
  CatValuedFunctor sf;
  sf.base = k;
  std::vector<Subcategory> fibers;
  std::vector<std::vector<int>> opos, mpos;
  for (int x = 0; x < k.object_count(); ++x) {
    fibers.push_back(fiber(pi, x));
    sf.values.push_back(fibers.back().category);
    opos.push_back(object_positions(fibers.back(), ne));
    mpos.push_back(morphism_positions(fibers.back(), e.morphism_count()));
  }
  for (int f = 0; f < nm; ++f) {
    const int x = k.src(f), y = k.tgt(f);
    const auto& fx = fibers[x];
    std::vector<int> objs(fx.category.object_count()), mors(fx.category.morphism_count());
    for (int i = 0; i < fx.category.object_count(); ++i) objs[i] = opos[y][push(f, fx.inclusion.object(i))];
    for (int i = 0; i < fx.category.morphism_count(); ++i) mors[i] = mpos[y][vimg[f][fx.inclusion.morphism(i)]];
    sf.maps.emplace_back(fx.category, fibers[y].category, objs, mors);
  }
  require_valid(sf, "straightening");
  out.functor = std::move(sf);
  return out;
}

bool check_cat_roundtrip(const CatValuedFunctor& f) {
  const auto s = straighten_cocart(unstraighten_cat(f));
  if (!s.functor) return false;
  const auto& g = *s.functor;
  const auto& k = f.base;
  std::vector<Functor> iso;
  for (int x = 0; x < k.object_count(); ++x) {
    const auto& a = f.values[x];
    const auto& b = g.values[x];
    const auto& idx = k.morphism_id(k.identity(x));
    std::vector<int> objs, mors;
    for (int o = 0; o < a.object_count(); ++o) {
      auto i = b.find_object(tuple_id({k.object_id(x), a.object_id(o)}));
      if (!i) return false;
      objs.push_back(*i);
    }
    for (int m = 0; m < a.morphism_count(); ++m) {
      const auto& src = a.object_id(a.src(m));
      auto i = b.find_morphism(a.is_identity(m) ? tuple_id({src, idx}) : tuple_id({src, idx, a.morphism_id(m)}));
      if (!i) return false;
      mors.push_back(*i);
    }
    Functor phi(a, b, objs, mors);
    if (!validate_functor(phi).ok() || !is_isomorphism(phi)) return false;
    iso.push_back(std::move(phi));
  }
  for (int m = 0; m < k.morphism_count(); ++m)
    if (!(compose(g.maps[m], iso[k.src(m)]) == compose(iso[k.tgt(m)], f.maps[m]))) return false;
  return true;
}

// ---- maximal sub-fibrations -------------------------------------------------

namespace {

SubFibration maximal_subfibration(const Functor& pi, bool left) {
  require_valid(pi, "maximal subfibration");
  if (auto v = left ? is_cocartesian_fibration(pi) : is_cartesian_fibration(pi); !v)
    refuse(left ? "maximal left subfibration needs a coCartesian fibration"
                : "maximal right subfibration needs a Cartesian fibration",
           v);
  const auto& e = pi.source();
  std::vector<char> keep(e.morphism_count(), 0);
  std::vector<int> mors, objs;
  for (int m = 0; m < e.morphism_count(); ++m)
    if (left ? is_cocartesian_morphism(pi, m) : is_cartesian_morphism(pi, m)) {
      keep[m] = 1;
      mors.push_back(m);
    }
  for (int g : mors)
    for (int f : mors)
      if (e.tgt(f) == e.src(g) && !keep[e.compose(g, f)])
        throw InvariantError("(co)Cartesian morphisms " + e.morphism_id(f) + ", " + e.morphism_id(g) +
                             " do not compose");
  for (int x = 0; x < e.object_count(); ++x) objs.push_back(x);
  auto sub = subcategory(e, objs, mors);
  SubFibration out{compose(pi, sub.inclusion), sub.inclusion};
  if (left ? !is_left_fibration(out.projection) : !is_right_fibration(out.projection))
    throw InvariantError("maximal subfibration is not a left (right) fibration");
  return out;
}

}  // namespace

SubFibration maximal_left_subfibration(const Functor& pi) { return maximal_subfibration(pi, true); }
SubFibration maximal_right_subfibration(const Functor& pi) { return maximal_subfibration(pi, false); }

// ---- pushforward -------------------------------------------------------------

namespace {

// Index tables of a base change along g: [n] → K, by level and by [n]-morphism.
struct LevelTable {
  Pullback pb;
  std::vector<std::vector<int>> object;    // [level][e]
  std::vector<std::vector<int>> morphism;  // [morphism of [n]][m]
};

LevelTable level_table(const Functor& pi, const Functor& g) {
  LevelTable t{pullback(g, pi), {}, {}};
  const auto& base = g.source();
  t.object.assign(base.object_count(), std::vector<int>(pi.source().object_count(), -1));
  t.morphism.assign(base.morphism_count(), std::vector<int>(pi.source().morphism_count(), -1));
  const auto& c = t.pb.category;
  for (int o = 0; o < c.object_count(); ++o) t.object[t.pb.first.object(o)][t.pb.second.object(o)] = o;
  for (int m = 0; m < c.morphism_count(); ++m) t.morphism[t.pb.first.morphism(m)][t.pb.second.morphism(m)] = m;
  return t;
}

// The section of E_{|x} read off a section over f at one end.
Functor restrict_end(const Functor& sigma, const LevelTable& t, int level, int v, const Subcategory& fib) {
  std::vector<int> objs(fib.category.object_count()), mors(fib.category.morphism_count());
  for (int i = 0; i < fib.category.object_count(); ++i) objs[i] = sigma.object(t.object[level][fib.inclusion.object(i)]);
  for (int i = 0; i < fib.category.morphism_count(); ++i)
    mors[i] = sigma.morphism(t.morphism[v][fib.inclusion.morphism(i)]);
  return Functor(fib.category, sigma.target(), objs, mors);
}

}  // namespace

Pushforward pushforward_exponentiable(const Functor& pi, const Functor& zeta, std::size_t cap) {
  require_valid(pi, "pushforward");
  require_valid(zeta, "pushforward");
  if (!(zeta.target() == pi.source())) throw PreconditionError("pushforward: ζ must land in the source of π", Witness{"shape_mismatch", {}, ""});
  if (auto v = is_exponentiable(pi); !v) refuse("pushforward needs an exponentiable functor", v);
  const auto& e = pi.source();
  const auto& k = pi.target();
  const auto& z = zeta.source();
  const auto one = interval(1);
  const int v00 = one.morphism_index("0->0"), v01 = one.morphism_index("0->1"), v11 = one.morphism_index("1->1");

  CategoryBuilder b;
  std::vector<Subcategory> fibers;
  std::vector<std::vector<int>> fpos, fmpos;
  std::vector<std::map<std::string, int>> object_lookup(k.object_count());
  std::vector<int> obj_base;
  std::vector<Functor> obj_secs;
  for (int x = 0; x < k.object_count(); ++x) {
    fibers.push_back(fiber(pi, x));
    fpos.push_back(object_positions(fibers.back(), e.object_count()));
    fmpos.push_back(morphism_positions(fibers.back(), e.morphism_count()));
    for (auto& s : enumerate_functors_over(fibers.back().inclusion, zeta, cap)) {
      const auto id = functor_id(s);
      object_lookup[x][id] = b.add_object(tuple_id({k.object_id(x), id}));
      obj_base.push_back(x);
      obj_secs.push_back(std::move(s));
    }
  }
  std::vector<LevelTable> tables;
  std::vector<std::map<std::string, int>> mor_lookup(k.morphism_count());
  std::vector<int> mor_base;
  std::vector<Functor> mor_secs;
  for (int f = 0; f < k.morphism_count(); ++f) {
    tables.push_back(level_table(pi, select_morphism(k, f)));
    const auto& t = tables.back();
    for (auto& sigma : enumerate_functors_over(t.pb.second, zeta, cap)) {
      const int s = object_lookup[k.src(f)].at(functor_id(restrict_end(sigma, t, 0, v00, fibers[k.src(f)])));
      const int d = object_lookup[k.tgt(f)].at(functor_id(restrict_end(sigma, t, 1, v11, fibers[k.tgt(f)])));
      const auto id = functor_id(sigma);
      mor_lookup[f][id] = b.add_morphism(tuple_id({k.morphism_id(f), id}), s, d);
      mor_base.push_back(f);
      mor_secs.push_back(std::move(sigma));
    }
  }
  auto lookup_section = [&](int f, const Functor& sigma) {
    auto it = mor_lookup[f].find(functor_id(sigma));
    if (it == mor_lookup[f].end()) throw InvariantError("glued section is not a section over " + k.morphism_id(f));
    return it->second;
  };
  for (int i = 0; i < static_cast<int>(obj_secs.size()); ++i) {
    const int x = obj_base[i];
    const auto& t = tables[k.identity(x)];
    const auto& c = t.pb.category;
    std::vector<int> objs(c.object_count()), mors(c.morphism_count());
    for (int o = 0; o < c.object_count(); ++o) objs[o] = obj_secs[i].object(fpos[x][t.pb.second.object(o)]);
    for (int m = 0; m < c.morphism_count(); ++m) mors[m] = obj_secs[i].morphism(fmpos[x][t.pb.second.morphism(m)]);
    b.set_identity(i, lookup_section(k.identity(x), Functor(c, z, objs, mors)));
  }
  // Factorizations m = m2 ∘ m1 with m1 over f and m2 over g, for m over g ∘ f.
  std::map<std::pair<int, int>, std::vector<std::vector<std::pair<int, int>>>> factorizations;
  auto factor = [&](int f, int g) -> const std::vector<std::vector<std::pair<int, int>>>& {
    auto it = factorizations.find({f, g});
    if (it != factorizations.end()) return it->second;
    std::vector<std::vector<std::pair<int, int>>> out(e.morphism_count());
    const int gf = k.compose(g, f);
    for (int m = 0; m < e.morphism_count(); ++m) {
      if (pi.morphism(m) != gf) continue;
      for (int m1 : e.out(e.src(m))) {
        if (pi.morphism(m1) != f) continue;
        for (int m2 : e.out(e.tgt(m1)))
          if (pi.morphism(m2) == g && e.compose(m2, m1) == m) out[m].push_back({m1, m2});
      }
      if (out[m].empty())
        throw PreconditionError("pushforward: empty factorization category",
                                Witness{"empty_factorization", {e.morphism_id(m), k.morphism_id(f), k.morphism_id(g)}, ""});
    }
    return factorizations.emplace(std::pair{f, g}, std::move(out)).first->second;
  };
  auto r = b.build([&](int gi, int fi) {
    const int f = mor_base[fi], g = mor_base[gi];
    const int gf = k.compose(g, f);
    const auto& sigma = mor_secs[fi];
    const auto& tau = mor_secs[gi];
    const auto& tf = tables[f];
    const auto& tg = tables[g];
    const auto& t = tables[gf];
    const auto& fac = factor(f, g);
    const auto& c = t.pb.category;
    std::vector<int> objs(c.object_count()), mors(c.morphism_count());
    for (int o = 0; o < c.object_count(); ++o) {
      const int a = t.pb.second.object(o);
      objs[o] = t.pb.first.object(o) == 0 ? sigma.object(tf.object[0][a]) : tau.object(tg.object[1][a]);
    }
    for (int mm = 0; mm < c.morphism_count(); ++mm) {
      const int v = t.pb.first.morphism(mm), m = t.pb.second.morphism(mm);
      if (v == v00) {
        mors[mm] = sigma.morphism(tf.morphism[v00][m]);
      } else if (v == v11) {
        mors[mm] = tau.morphism(tg.morphism[v11][m]);
      } else {
        int value = -1;
        for (auto [m1, m2] : fac[m]) {
          const int w = z.compose(tau.morphism(tg.morphism[v01][m2]), sigma.morphism(tf.morphism[v01][m1]));
          if (value >= 0 && value != w) throw InvariantError("gluing depends on the factorization");
          value = w;
        }
        mors[mm] = value;
      }
    }
    return lookup_section(gf, Functor(c, z, objs, mors));
  });
  require_valid(r.category, "pushforward");
  Pushforward out;
  std::vector<int> objs(r.category.object_count()), mors(r.category.morphism_count());
  out.object_sections.resize(r.category.object_count());
  out.morphism_sections.resize(r.category.morphism_count());
  for (int i = 0; i < static_cast<int>(obj_base.size()); ++i) {
    objs[r.object_index[i]] = obj_base[i];
    out.object_sections[r.object_index[i]] = std::move(obj_secs[i]);
  }
  for (int i = 0; i < static_cast<int>(mor_base.size()); ++i) {
    mors[r.morphism_index[i]] = mor_base[i];
    out.morphism_sections[r.morphism_index[i]] = std::move(mor_secs[i]);
  }
  out.projection = Functor(r.category, k, objs, mors);
  require_valid(out.projection, "pushforward projection");
  return out;
}

AdjunctionCheck check_pushforward_adjunction(const Pushforward& pf, const Functor& pi, const Functor& zeta,
                                             const Functor& p, std::size_t cap) {
  AdjunctionCheck out;
  const auto& e = pi.source();
  const auto& k = pi.target();
  const auto& z = zeta.source();
  const int v01 = interval(1).morphism_index("0->1");
  const auto lhs = enumerate_functors_over(p, pf.projection, cap);
  const auto pb = pullback(p, pi);
  const auto rhs = enumerate_functors_over(pb.second, zeta, cap);
  out.over_k = lhs.size();
  out.over_e = rhs.size();
  std::vector<LevelTable> tables;
  for (int f = 0; f < k.morphism_count(); ++f) tables.push_back(level_table(pi, select_morphism(k, f)));
  std::vector<std::vector<int>> fpos;
  for (int x = 0; x < k.object_count(); ++x) fpos.push_back(object_positions(fiber(pi, x), e.object_count()));
  const auto& c = pb.category;
  std::set<std::string> image;
  for (const auto& F : lhs) {
    std::vector<int> objs(c.object_count()), mors(c.morphism_count());
    for (int o = 0; o < c.object_count(); ++o) {
      const int a = pb.second.object(o);
      objs[o] = pf.object_sections[F.object(pb.first.object(o))].object(fpos[pi.object(a)][a]);
    }
    for (int t = 0; t < c.morphism_count(); ++t) {
      const int mu = F.morphism(pb.first.morphism(t));
      const int f = pf.projection.morphism(mu);
      mors[t] = pf.morphism_sections[mu].morphism(tables[f].morphism[v01][pb.second.morphism(t)]);
    }
    Functor g(c, z, objs, mors);
    if (!validate_functor(g).ok() || !(compose(zeta, g) == pb.second)) {
      out.witness = Witness{"transpose_not_over_e", {functor_id(F)}, ""};
      return out;
    }
    if (!image.insert(functor_id(g)).second) {
      out.witness = Witness{"transpose_not_injective", {functor_id(F)}, ""};
      return out;
    }
  }
  for (const auto& g : rhs)
    if (!image.count(functor_id(g))) {
      out.witness = Witness{"transpose_not_surjective", {functor_id(g)}, ""};
      return out;
    }
  out.holds = image.size() == rhs.size();
  return out;
}

// ---- Kan extension along a fibration --------------------------------------

namespace {

// Compatible families of f over the objects `objs`, constrained by `mors`.
std::vector<std::vector<int>> families(const SetFunctor& f, const std::vector<int>& objs, const std::vector<int>& mors) {
  const auto& k = f.base;
  std::vector<int> pos(k.object_count(), -1);
  for (int i = 0; i < static_cast<int>(objs.size()); ++i) pos[objs[i]] = i;
  std::vector<std::vector<int>> checks(objs.size());
  for (int m : mors) checks[std::max(pos[k.src(m)], pos[k.tgt(m)])].push_back(m);
  std::vector<std::vector<int>> out;
  std::vector<int> choice(objs.size(), -1);
  std::function<void(int)> go = [&](int i) {
    if (i == static_cast<int>(objs.size())) {
      out.push_back(choice);
      return;
    }
    for (int a = 0; a < f.size(objs[i]); ++a) {
      choice[i] = a;
      bool ok = true;
      for (int m : checks[i])
        if (f.act(m, choice[pos[k.src(m)]]) != choice[pos[k.tgt(m)]]) ok = false;
      if (ok) go(i + 1);
    }
    choice[i] = -1;
  };
  go(0);
  return out;
}

SetFunctor left_kan(const Functor& pi, const SetFunctor& f) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  std::vector<int> off(e.object_count() + 1, 0);
  for (int a = 0; a < e.object_count(); ++a) off[a + 1] = off[a] + f.size(a);
  UnionFind uf(off.back());
  for (int m = 0; m < e.morphism_count(); ++m)
    if (is_vertical(pi, m))
      for (int s = 0; s < f.size(e.src(m)); ++s) uf.unite(off[e.src(m)] + s, off[e.tgt(m)] + f.act(m, s));
  std::map<std::size_t, std::string> name;
  for (int a = 0; a < e.object_count(); ++a)
    for (int s = 0; s < f.size(a); ++s) {
      auto id = tuple_id({e.object_id(a), f.values[a][s]});
      auto [it, fresh] = name.emplace(uf.find(off[a] + s), id);
      if (!fresh && id < it->second) it->second = id;
    }
  SetFunctor out;
  out.base = k;
  out.values.resize(k.object_count());
  std::map<std::size_t, int> position;
  {
    std::vector<std::vector<std::pair<std::string, std::size_t>>> sorted(k.object_count());
    for (const auto& [root, id] : name) {
      int a = 0;
      while (off[a + 1] <= static_cast<int>(root)) ++a;
      sorted[pi.object(a)].push_back({id, root});
    }
    for (int x = 0; x < k.object_count(); ++x) {
      std::sort(sorted[x].begin(), sorted[x].end());
      for (const auto& [id, root] : sorted[x]) {
        position[root] = static_cast<int>(out.values[x].size());
        out.values[x].push_back(id);
      }
    }
  }
  auto cls = [&](int a, int s) { return position.at(uf.find(off[a] + s)); };
  out.maps.resize(k.morphism_count());
  for (int g = 0; g < k.morphism_count(); ++g) out.maps[g].assign(out.size(k.src(g)), -1);
  for (int m = 0; m < e.morphism_count(); ++m) {
    const int g = pi.morphism(m);
    for (int s = 0; s < f.size(e.src(m)); ++s) {
      int& slot = out.maps[g][cls(e.src(m), s)];
      const int image = cls(e.tgt(m), f.act(m, s));
      if (slot >= 0 && slot != image) throw InvariantError("fiberwise colimit transport is not well defined");
      slot = image;
    }
  }
  for (const auto& row : out.maps)
    for (int v : row)
      if (v < 0) throw InvariantError("fiberwise colimit transport is not defined everywhere");
  require_valid(out, "left Kan extension");

  // π ↓ x: the fiber class of (a, s) goes to the comma class of ((a, id, *), s).
  for (int x = 0; x < k.object_count(); ++x) {
    const auto pt = point(k, x);
    const auto cm = comma(pi, pt);
    const auto g = compose(f, cm.to_source);
    const auto& c = cm.category;
    std::vector<int> coff(c.object_count() + 1, 0);
    for (int o = 0; o < c.object_count(); ++o) coff[o + 1] = coff[o] + g.size(o);
    UnionFind cu(coff.back());
    for (int m = 0; m < c.morphism_count(); ++m)
      for (int s = 0; s < g.size(c.src(m)); ++s) cu.unite(coff[c.src(m)] + s, coff[c.tgt(m)] + g.act(m, s));
    std::vector<long> to_comma(out.size(x), -1);
    for (int a = 0; a < e.object_count(); ++a) {
      if (pi.object(a) != x) continue;
      const int o = c.object_index(
          tuple_id({e.object_id(a), k.morphism_id(k.identity(x)), pt.source().object_id(0)}));
      for (int s = 0; s < f.size(a); ++s) {
        const long root = static_cast<long>(cu.find(coff[o] + s));
        long& slot = to_comma[cls(a, s)];
        if (slot >= 0 && slot != root) throw InvariantError("fiber colimit does not map to the comma colimit");
        slot = root;
      }
    }
    std::set<long> hit(to_comma.begin(), to_comma.end()), roots;
    for (int i = 0; i < coff.back(); ++i) roots.insert(static_cast<long>(cu.find(i)));
    if (hit.size() != to_comma.size() || hit != roots)
      throw InvariantError("fiber colimit disagrees with the comma formula at " + k.object_id(x));
  }
  return out;
}

SetFunctor right_kan(const Functor& pi, const SetFunctor& f) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  SetFunctor out;
  out.base = k;
  out.values.resize(k.object_count());
  std::vector<std::vector<int>> objs(k.object_count());
  std::vector<std::vector<std::vector<int>>> fams(k.object_count());
  std::vector<std::map<std::vector<int>, int>> index(k.object_count());
  for (int a = 0; a < e.object_count(); ++a) objs[pi.object(a)].push_back(a);
  auto family_id = [&](int x, const std::vector<int>& fam) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < fam.size(); ++i) parts.push_back(f.values[objs[x][i]][fam[i]]);
    return join_id(parts);
  };
  for (int x = 0; x < k.object_count(); ++x) {
    std::vector<int> vert;
    for (int m = 0; m < e.morphism_count(); ++m)
      if (pi.morphism(m) == k.identity(x)) vert.push_back(m);
    auto all = families(f, objs[x], vert);
    std::vector<std::pair<std::string, std::vector<int>>> named;
    for (auto& fam : all) named.push_back({family_id(x, fam), std::move(fam)});
    std::sort(named.begin(), named.end());
    for (auto& [id, fam] : named) {
      index[x][fam] = static_cast<int>(out.values[x].size());
      out.values[x].push_back(id);
      fams[x].push_back(std::move(fam));
    }
  }
  out.maps.resize(k.morphism_count());
  for (int g = 0; g < k.morphism_count(); ++g) {
    const int x = k.src(g), y = k.tgt(g);
    for (const auto& fam : fams[x]) {
      std::vector<int> image;
      for (int b : objs[y]) {
        int value = -1;
        for (int m : e.in(b)) {
          if (pi.morphism(m) != g) continue;
          const int src = e.src(m);
          const int i = static_cast<int>(std::find(objs[x].begin(), objs[x].end(), src) - objs[x].begin());
          const int w = f.act(m, fam[i]);
          if (value >= 0 && value != w) throw InvariantError("fiberwise limit transport is not well defined");
          value = w;
        }
        if (value < 0) throw InvariantError("fiberwise limit transport is not defined everywhere");
        image.push_back(value);
      }
      auto it = index[y].find(image);
      if (it == index[y].end()) throw InvariantError("transported family is not compatible");
      out.maps[g].push_back(it->second);
    }
  }
  require_valid(out, "right Kan extension");

  // x ↓ π: restricting a comma family to the objects (*, id, a) is a bijection.
  for (int x = 0; x < k.object_count(); ++x) {
    const auto pt = point(k, x);
    const auto cm = comma(pt, pi);
    const auto g = compose(f, cm.to_target);
    const auto& c = cm.category;
    std::vector<int> all_objs(c.object_count()), all_mors(c.morphism_count());
    std::iota(all_objs.begin(), all_objs.end(), 0);
    std::iota(all_mors.begin(), all_mors.end(), 0);
    std::vector<int> at;
    for (int a : objs[x])
      at.push_back(c.object_index(
          tuple_id({pt.source().object_id(0), k.morphism_id(k.identity(x)), e.object_id(a)})));
    std::set<std::vector<int>> image;
    const auto comma_families = families(g, all_objs, all_mors);
    for (const auto& fam : comma_families) {
      std::vector<int> r;
      for (int o : at) r.push_back(fam[o]);
      image.insert(std::move(r));
    }
    const std::set<std::vector<int>> fiber_families(fams[x].begin(), fams[x].end());
    if (image.size() != comma_families.size() || image != fiber_families)
      throw InvariantError("fiber limit disagrees with the comma formula at " + k.object_id(x));
  }
  return out;
}

}  // namespace

SetFunctor kan_extend_along_fibration(const Functor& pi, const SetFunctor& f, KanDirection direction) {
  require_valid(pi, "kan_extend_along_fibration");
  require_valid(f, "kan_extend_along_fibration");
  if (!(f.base == pi.source())) throw PreconditionError("Kan extension: the functor must live on the source of π", Witness{"shape_mismatch", {}, ""});
  if (direction == KanDirection::left) {
    if (auto v = is_left_final(pi); !v && !is_cocartesian_fibration(pi))
      refuse("left Kan extension along a fibration needs a left final or coCartesian functor", v);
    return left_kan(pi, f);
  }
  if (auto v = is_right_initial(pi); !v && !is_cartesian_fibration(pi))
    refuse("right Kan extension along a fibration needs a right initial or Cartesian functor", v);
  return right_kan(pi, f);
}

}  // namespace fibcat
