#include "fibcat/fibration.hpp"

#include <set>
#include <tuple>

#include "fibcat/finality.hpp"
#include "fibcat/homology.hpp"
#include "fibcat/ids.hpp"
#include "fibcat/union_find.hpp"

namespace fibcat {

namespace {

Verdict fail(std::string kind, std::vector<std::string> ids, std::string detail = {}) {
  return Verdict::no(Witness{std::move(kind), std::move(ids), std::move(detail)});
}

// Prefixes the witness of `v` with a context id.
Verdict within(const std::string& context, Verdict v) {
  if (v.holds || !v.witness) return v;
  v.witness->ids.insert(v.witness->ids.begin(), context);
  return v;
}

}  // namespace

// ---- morphism-level -------------------------------------------------------

Verdict is_cocartesian_morphism(const Functor& pi, int f) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  if (f < 0 || f >= e.morphism_count()) throw SchemaError("morphism not in the total category");
  const int e0 = e.src(f), e1 = e.tgt(f), pf = pi.morphism(f);
  for (int g : e.out(e0)) {
    const int e2 = e.tgt(g), pg = pi.morphism(g);
    for (int u : k.hom(pi.object(e1), pi.object(e2))) {
      if (k.compose(u, pf) != pg) continue;
      int count = 0;
      for (int h : e.hom(e1, e2))
        if (pi.morphism(h) == u && e.compose(h, f) == g) ++count;
      if (count != 1)
        return fail(count == 0 ? "no_factorization" : "multiple_factorizations",
                    {e.morphism_id(f), e.morphism_id(g), k.morphism_id(u)});
    }
  }
  return Verdict::yes();
}

Verdict is_cartesian_morphism(const Functor& pi, int f) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  if (f < 0 || f >= e.morphism_count()) throw SchemaError("morphism not in the total category");
  const int e0 = e.src(f), e1 = e.tgt(f), pf = pi.morphism(f);
  for (int g : e.in(e1)) {
    const int e2 = e.src(g), pg = pi.morphism(g);
    for (int u : k.hom(pi.object(e2), pi.object(e0))) {
      if (k.compose(pf, u) != pg) continue;
      int count = 0;
      for (int h : e.hom(e2, e0))
        if (pi.morphism(h) == u && e.compose(f, h) == g) ++count;
      if (count != 1)
        return fail(count == 0 ? "no_factorization" : "multiple_factorizations",
                    {e.morphism_id(f), e.morphism_id(g), k.morphism_id(u)});
    }
  }
  return Verdict::yes();
}

Verdict is_locally_cocartesian_morphism(const Functor& pi, int f) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  const int e0 = e.src(f), e1 = e.tgt(f), pf = pi.morphism(f);
  const int id = k.identity(pi.object(e1));
  for (int g : e.out(e0)) {
    if (pi.morphism(g) != pf) continue;
    int count = 0;
    for (int h : e.hom(e1, e.tgt(g)))
      if (pi.morphism(h) == id && e.compose(h, f) == g) ++count;
    if (count != 1)
      return fail(count == 0 ? "no_factorization" : "multiple_factorizations",
                  {e.morphism_id(f), e.morphism_id(g)});
  }
  return Verdict::yes();
}

Verdict is_locally_cartesian_morphism(const Functor& pi, int f) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  const int e0 = e.src(f), e1 = e.tgt(f), pf = pi.morphism(f);
  const int id = k.identity(pi.object(e0));
  for (int g : e.in(e1)) {
    if (pi.morphism(g) != pf) continue;
    int count = 0;
    for (int h : e.hom(e.src(g), e0))
      if (pi.morphism(h) == id && e.compose(f, h) == g) ++count;
    if (count != 1)
      return fail(count == 0 ? "no_factorization" : "multiple_factorizations",
                  {e.morphism_id(f), e.morphism_id(g)});
  }
  return Verdict::yes();
}

int cocartesian_lift(const Functor& pi, int e0, int u) {
  const auto& e = pi.source();
  if (pi.target().is_identity(u)) return e.identity(e0);
  for (int m : e.out(e0))
    if (pi.morphism(m) == u && is_cocartesian_morphism(pi, m)) return m;
  return -1;
}

int cartesian_lift(const Functor& pi, int e0, int u) {
  const auto& e = pi.source();
  if (pi.target().is_identity(u)) return e.identity(e0);
  for (int m : e.in(e0))
    if (pi.morphism(m) == u && is_cartesian_morphism(pi, m)) return m;
  return -1;
}

// ---- fibration classes ----------------------------------------------------

Verdict is_cocartesian_fibration(const Functor& pi) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  for (int x = 0; x < e.object_count(); ++x)
    for (int u : k.out(pi.object(x)))
      if (cocartesian_lift(pi, x, u) < 0) return fail("no_cocartesian_lift", {e.object_id(x), k.morphism_id(u)});
  return Verdict::yes();
}

Verdict is_cartesian_fibration(const Functor& pi) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  for (int x = 0; x < e.object_count(); ++x)
    for (int u : k.in(pi.object(x)))
      if (cartesian_lift(pi, x, u) < 0) return fail("no_cartesian_lift", {e.object_id(x), k.morphism_id(u)});
  return Verdict::yes();
}

Pullback base_change(const Functor& pi, const Functor& g) { return pullback(g, pi); }

bool has_nonidentity_isomorphisms(const FiniteCategory& c) {
  for (int m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m) && c.is_isomorphism(m)) return true;
  return false;
}

IsofibrationReplacement isofibration_replacement(const Functor& pi) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  CategoryBuilder b;
  std::vector<std::pair<int, int>> objs;  // (e, θ)
  std::map<std::pair<int, int>, int> obj_index;
  for (int x = 0; x < e.object_count(); ++x)
    for (int th : k.out(pi.object(x))) {
      if (!k.is_isomorphism(th)) continue;
      obj_index[{x, th}] = b.add_object(tuple_id({e.object_id(x), k.morphism_id(th)}));
      objs.emplace_back(x, th);
    }
  std::map<std::tuple<int, int, int>, int> mor_index;  // (α, source, target)
  std::vector<int> alpha;
  for (int i = 0; i < static_cast<int>(objs.size()); ++i)
    for (int j = 0; j < static_cast<int>(objs.size()); ++j)
      for (int a : e.hom(objs[i].first, objs[j].first)) {
        const int m = b.add_morphism(
            tuple_id({e.morphism_id(a), k.morphism_id(objs[i].second), k.morphism_id(objs[j].second)}), i, j);
        mor_index[{a, i, j}] = m;
        alpha.push_back(a);
        if (i == j && e.is_identity(a)) b.set_identity(i, m);
      }
  auto res = b.build([&](int g, int f) {
    auto it = mor_index.find({e.compose(alpha[g], alpha[f]), b.src(f), b.tgt(g)});
    return it == mor_index.end() ? -1 : it->second;
  });
  const auto& ep = res.category;
  std::vector<int> om(ep.object_count()), mm(ep.morphism_count());
  for (int i = 0; i < static_cast<int>(objs.size()); ++i) om[res.object_index[i]] = k.tgt(objs[i].second);
  for (const auto& [key, m] : mor_index) {
    const auto [a, i, j] = key;
    const int th = objs[i].second, th2 = objs[j].second;
    mm[res.morphism_index[m]] = k.compose(k.compose(th2, pi.morphism(a)), k.inverse(th));
  }
  Functor proj(ep, k, std::move(om), std::move(mm));
  std::vector<int> uo(e.object_count()), um(e.morphism_count());
  for (int x = 0; x < e.object_count(); ++x) uo[x] = res.object_index[obj_index.at({x, k.identity(pi.object(x))})];
  for (int a = 0; a < e.morphism_count(); ++a) {
    const int i = obj_index.at({e.src(a), k.identity(pi.object(e.src(a)))});
    const int j = obj_index.at({e.tgt(a), k.identity(pi.object(e.tgt(a)))});
    um[a] = res.morphism_index[mor_index.at({a, i, j})];
  }
  return {std::move(proj), Functor(e, ep, std::move(uo), std::move(um))};
}

Verdict is_locally_cocartesian(const Functor& pi) {
  const auto& k = pi.target();
  for (int u = 0; u < k.morphism_count(); ++u) {
    auto bc = base_change(pi, select_morphism(k, u));
    auto v = is_cocartesian_fibration(bc.first);
    if (!v) return within(k.morphism_id(u), v);
  }
  return Verdict::yes();
}

Verdict is_locally_cartesian(const Functor& pi) {
  const auto& k = pi.target();
  for (int u = 0; u < k.morphism_count(); ++u) {
    auto bc = base_change(pi, select_morphism(k, u));
    auto v = is_cartesian_fibration(bc.first);
    if (!v) return within(k.morphism_id(u), v);
  }
  return Verdict::yes();
}

Verdict is_conservative(const Functor& pi) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  for (int m = 0; m < e.morphism_count(); ++m)
    if (k.is_isomorphism(pi.morphism(m)) && !e.is_isomorphism(m))
      return fail("non_invertible_over_isomorphism", {e.morphism_id(m), k.morphism_id(pi.morphism(m))});
  return Verdict::yes();
}

Verdict is_discrete_opfibration(const Functor& pi) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  for (int x = 0; x < e.object_count(); ++x)
    for (int u : k.out(pi.object(x))) {
      int count = 0;
      for (int m : e.out(x))
        if (pi.morphism(m) == u) ++count;
      if (count != 1) return fail(count == 0 ? "no_lift" : "multiple_lifts", {e.object_id(x), k.morphism_id(u)});
    }
  return Verdict::yes();
}

Verdict is_discrete_fibration(const Functor& pi) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  for (int x = 0; x < e.object_count(); ++x)
    for (int u : k.in(pi.object(x))) {
      int count = 0;
      for (int m : e.in(x))
        if (pi.morphism(m) == u) ++count;
      if (count != 1) return fail(count == 0 ? "no_lift" : "multiple_lifts", {e.object_id(x), k.morphism_id(u)});
    }
  return Verdict::yes();
}

Verdict is_left_fibration(const Functor& pi) {
  if (auto v = is_conservative(pi); !v) return v;
  return is_cocartesian_fibration(pi);
}

Verdict is_right_fibration(const Functor& pi) {
  if (auto v = is_conservative(pi); !v) return v;
  return is_cartesian_fibration(pi);
}

// ---- exponentiability -----------------------------------------------------

namespace {

struct Factorizations {
  std::vector<std::pair<int, int>> objects;  // (a, b)
  std::vector<std::vector<int>> maps;        // for each pair index i*n+j, the morphisms t
};

// Objects and morphisms of the factorization category, without assembling it.
Factorizations factorizations(const Functor& pi, int u, int v, int h) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  if (k.tgt(u) != k.src(v)) throw PreconditionError("base morphisms are not composable",
                                                    Witness{"not_composable", {k.morphism_id(u), k.morphism_id(v)}, {}});
  if (pi.morphism(h) != k.compose(v, u))
    throw PreconditionError("lift is not over the composite",
                            Witness{"lift_not_over_composite", {e.morphism_id(h)}, {}});
  const int e0 = e.src(h), e2 = e.tgt(h), idy = k.identity(k.tgt(u));
  Factorizations f;
  for (int a : e.out(e0)) {
    if (pi.morphism(a) != u) continue;
    for (int b : e.hom(e.tgt(a), e2))
      if (pi.morphism(b) == v && e.compose(b, a) == h) f.objects.emplace_back(a, b);
  }
  const std::size_t n = f.objects.size();
  f.maps.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto [a, b] = f.objects[i];
      const auto [a2, b2] = f.objects[j];
      for (int t : e.hom(e.tgt(a), e.tgt(a2)))
        if (pi.morphism(t) == idy && e.compose(t, a) == a2 && e.compose(b2, t) == b) f.maps[i * n + j].push_back(t);
    }
  return f;
}

}  // namespace

FiniteCategory factorization_category(const Functor& pi, int u, int v, int h) {
  const auto& e = pi.source();
  auto f = factorizations(pi, u, v, h);
  const std::size_t n = f.objects.size();
  CategoryBuilder b;
  std::vector<std::string> ids;
  for (const auto& [a, bb] : f.objects) {
    ids.push_back(tuple_id({e.morphism_id(a), e.morphism_id(bb)}));
    b.add_object(ids.back());
  }
  std::map<std::tuple<std::size_t, std::size_t, int>, int> lookup;
  std::vector<int> mor_t;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (int t : f.maps[i * n + j]) {
        const int idx = b.add_morphism(tuple_id({ids[i], e.morphism_id(t), ids[j]}), static_cast<int>(i),
                                       static_cast<int>(j));
        lookup[{i, j, t}] = idx;
        mor_t.push_back(t);
        if (i == j && e.is_identity(t)) b.set_identity(static_cast<int>(i), idx);
      }
  return b
      .build([&](int g, int ff) {
        auto it = lookup.find({static_cast<std::size_t>(b.src(ff)), static_cast<std::size_t>(b.tgt(g)),
                               e.compose(mor_t[g], mor_t[ff])});
        return it == lookup.end() ? -1 : it->second;
      })
      .category;
}

namespace {

Verdict strict_exponentiable(const Functor& pi, int certify_dim) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  for (int u = 0; u < k.morphism_count(); ++u)
    for (int v : k.out(k.tgt(u))) {
      const int vu = k.compose(v, u);
      for (int h = 0; h < e.morphism_count(); ++h) {
        if (pi.morphism(h) != vu) continue;
        auto f = factorizations(pi, u, v, h);
        const std::vector<std::string> ids = {k.morphism_id(u), k.morphism_id(v), e.morphism_id(h)};
        if (f.objects.empty()) return fail("empty_factorization", ids);
        const std::size_t n = f.objects.size();
        UnionFind uf(static_cast<int>(n));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if (!f.maps[i * n + j].empty()) uf.unite(static_cast<int>(i), static_cast<int>(j));
        for (std::size_t i = 1; i < n; ++i)
          if (!uf.same(0, static_cast<int>(i))) return fail("disconnected_factorization", ids);
        if (certify_dim >= 0 && !reduced_homology_trivial(factorization_category(pi, u, v, h), certify_dim))
          return fail("factorization_homology", ids, "nontrivial reduced homology through degree " +
                                                         std::to_string(certify_dim));
      }
    }
  return Verdict::yes();
}

Verdict strict_left_final(const Functor& pi, int certify_dim) {
  if (auto v = strict_exponentiable(pi, certify_dim); !v) return v;
  const auto& k = pi.target();
  for (int u = 0; u < k.morphism_count(); ++u) {
    auto bc = base_change(pi, select_morphism(k, u));
    auto ft = fiber(bc.first, 1);
    auto fv = is_final(ft.inclusion, certify_dim);
    if (!fv) {
      auto w = *fv.witness;
      w.ids.insert(w.ids.begin(), k.morphism_id(u));
      w.kind = "target_fiber_not_final";
      return Verdict::no(w);
    }
  }
  return Verdict::yes();
}

Verdict strict_right_initial(const Functor& pi, int certify_dim) {
  if (auto v = strict_exponentiable(pi, certify_dim); !v) return v;
  const auto& k = pi.target();
  for (int u = 0; u < k.morphism_count(); ++u) {
    auto bc = base_change(pi, select_morphism(k, u));
    auto fs = fiber(bc.first, 0);
    auto fv = is_initial(fs.inclusion, certify_dim);
    if (!fv) {
      auto w = *fv.witness;
      w.ids.insert(w.ids.begin(), k.morphism_id(u));
      w.kind = "source_fiber_not_initial";
      return Verdict::no(w);
    }
  }
  return Verdict::yes();
}

const Functor& homotopy_form(const Functor& pi, std::optional<Functor>& store) {
  if (!has_nonidentity_isomorphisms(pi.target())) return pi;
  store = isofibration_replacement(pi).projection;
  return *store;
}

}  // namespace

Verdict is_exponentiable(const Functor& pi, int certify_dim) {
  std::optional<Functor> store;
  return strict_exponentiable(homotopy_form(pi, store), certify_dim);
}

Verdict is_left_final(const Functor& pi, int certify_dim) {
  std::optional<Functor> store;
  return strict_left_final(homotopy_form(pi, store), certify_dim);
}

Verdict is_right_initial(const Functor& pi, int certify_dim) {
  std::optional<Functor> store;
  return strict_right_initial(homotopy_form(pi, store), certify_dim);
}

// ---- adjoints -------------------------------------------------------------

std::optional<int> initial_object(const FiniteCategory& c) {
  for (int x = 0; x < c.object_count(); ++x) {
    bool ok = true;
    for (int y = 0; y < c.object_count() && ok; ++y) ok = c.hom(x, y).size() == 1;
    if (ok) return x;
  }
  return std::nullopt;
}

std::optional<int> final_object(const FiniteCategory& c) {
  for (int x = 0; x < c.object_count(); ++x) {
    bool ok = true;
    for (int y = 0; y < c.object_count() && ok; ++y) ok = c.hom(y, x).size() == 1;
    if (ok) return x;
  }
  return std::nullopt;
}

AdjointVerdict is_right_adjoint(const Functor& f) {
  const auto& c = f.source();
  const auto& d = f.target();
  AdjointVerdict out;
  out.adjoint_objects.assign(d.object_count(), -1);
  out.unit_or_counit.assign(d.object_count(), -1);
  for (int y = 0; y < d.object_count(); ++y) {
    // objects of y/F: (x, phi: y → F x)
    std::vector<std::pair<int, int>> objs;
    for (int x = 0; x < c.object_count(); ++x)
      for (int phi : d.hom(y, f.object(x))) objs.emplace_back(x, phi);
    bool found = false;
    for (const auto& [x0, phi0] : objs) {
      bool initial = true;
      for (const auto& [x, phi] : objs) {
        int count = 0;
        for (int a : c.hom(x0, x))
          if (d.compose(f.morphism(a), phi0) == phi) ++count;
        if (count != 1) {
          initial = false;
          break;
        }
      }
      if (initial) {
        out.adjoint_objects[y] = x0;
        out.unit_or_counit[y] = phi0;
        found = true;
        break;
      }
    }
    if (!found) {
      out.witness = Witness{"no_initial_object_in_comma", {d.object_id(y)}, {}};
      return out;
    }
  }
  out.holds = true;
  return out;
}

AdjointVerdict is_left_adjoint(const Functor& f) {
  const auto& c = f.source();
  const auto& d = f.target();
  AdjointVerdict out;
  out.adjoint_objects.assign(d.object_count(), -1);
  out.unit_or_counit.assign(d.object_count(), -1);
  for (int y = 0; y < d.object_count(); ++y) {
    // objects of F/y: (x, psi: F x → y)
    std::vector<std::pair<int, int>> objs;
    for (int x = 0; x < c.object_count(); ++x)
      for (int psi : d.hom(f.object(x), y)) objs.emplace_back(x, psi);
    bool found = false;
    for (const auto& [x0, psi0] : objs) {
      bool final = true;
      for (const auto& [x, psi] : objs) {
        int count = 0;
        for (int a : c.hom(x, x0))
          if (d.compose(psi0, f.morphism(a)) == psi) ++count;
        if (count != 1) {
          final = false;
          break;
        }
      }
      if (final) {
        out.adjoint_objects[y] = x0;
        out.unit_or_counit[y] = psi0;
        found = true;
        break;
      }
    }
    if (!found) {
      out.witness = Witness{"no_final_object_in_comma", {d.object_id(y)}, {}};
      return out;
    }
  }
  out.holds = true;
  return out;
}

bool is_equivalence(const Functor& f) { return is_fully_faithful(f) && is_essentially_surjective(f); }

// ---- sections -------------------------------------------------------------

SectionRestriction check_section_restriction(const Functor& pi, const Functor& sigma, const Functor& p,
                                             std::size_t cap) {
  auto big = section_category(p, pi, cap);
  auto small = section_category(compose(p, sigma), pi, cap);
  auto r = restriction(big, small, sigma);
  SectionRestriction out;
  out.sections = big.sections.size();
  out.restricted_sections = small.sections.size();
  std::vector<int> preimage(small.category.object_count(), -1);
  bool injective = true;
  for (int s = 0; s < big.category.object_count(); ++s) {
    const int t = r.object(s);
    if (preimage[t] >= 0) {
      if (injective)
        out.witness = Witness{"non_injective_on_sections",
                              {big.category.object_id(preimage[t]), big.category.object_id(s)}, {}};
      injective = false;
    } else {
      preimage[t] = s;
    }
  }
  bool surjective = true;
  for (int t = 0; t < small.category.object_count(); ++t)
    if (preimage[t] < 0) {
      if (injective && surjective)
        out.witness = Witness{"non_surjective_on_sections", {small.category.object_id(t)}, {}};
      surjective = false;
    }
  out.bijective_on_sections = injective && surjective;
  out.isomorphism = out.bijective_on_sections && is_isomorphism(r);
  if (out.bijective_on_sections && !out.isomorphism)
    out.witness = Witness{"not_isomorphism_on_transformations", {}, {}};
  return out;
}

// ---- profile --------------------------------------------------------------

std::string dual_key(const std::string& key) {
  static const std::map<std::string, std::string> pairs = {
      {"discrete_opfibration", "discrete_fibration"},
      {"discrete_fibration", "discrete_opfibration"},
      {"left_fibration", "right_fibration"},
      {"right_fibration", "left_fibration"},
      {"cocartesian", "cartesian"},
      {"cartesian", "cocartesian"},
      {"locally_cocartesian", "locally_cartesian"},
      {"locally_cartesian", "locally_cocartesian"},
      {"left_final", "right_initial"},
      {"right_initial", "left_final"}};
  auto it = pairs.find(key);
  return it == pairs.end() ? key : it->second;
}

std::optional<std::string> implication_violation(const FibrationProfile& p) {
  auto v = [&](const char* k) { return p[k]; };
  for (int side = 0; side < 2; ++side) {
    auto key = [&](const std::string& k) { return side == 0 ? k : dual_key(k); };
    auto val = [&](const std::string& k) { return v(key(k).c_str()); };
    if (val("discrete_opfibration") && !val("left_fibration"))
      return key("discrete_opfibration") + " but not " + key("left_fibration");
    if (val("left_fibration") && !val("cocartesian")) return key("left_fibration") + " but not " + key("cocartesian");
    if (val("left_fibration") != (val("conservative") && val("locally_cocartesian")))
      return key("left_fibration") + " disagrees with conservative and " + key("locally_cocartesian");
    if (val("cocartesian") != (val("locally_cocartesian") && val("exponentiable")))
      return key("cocartesian") + " disagrees with " + key("locally_cocartesian") + " and exponentiable";
    if (val("cocartesian") && !val("left_final")) return key("cocartesian") + " but not " + key("left_final");
    if (val("left_final") && !val("exponentiable")) return key("left_final") + " but not exponentiable";
  }
  return std::nullopt;
}

FibrationProfile classify(const Functor& pi, int certify_dim) {
  FibrationProfile p;
  p.certify_dim = certify_dim;
  p.verdicts["conservative"] = is_conservative(pi);
  p.verdicts["discrete_opfibration"] = is_discrete_opfibration(pi);
  p.verdicts["discrete_fibration"] = is_discrete_fibration(pi);
  p.verdicts["left_fibration"] = is_left_fibration(pi);
  p.verdicts["right_fibration"] = is_right_fibration(pi);
  p.verdicts["cocartesian"] = is_cocartesian_fibration(pi);
  p.verdicts["cartesian"] = is_cartesian_fibration(pi);
  p.verdicts["locally_cocartesian"] = is_locally_cocartesian(pi);
  p.verdicts["locally_cartesian"] = is_locally_cartesian(pi);
  p.verdicts["exponentiable"] = is_exponentiable(pi, certify_dim);
  p.verdicts["left_final"] = is_left_final(pi, certify_dim);
  p.verdicts["right_initial"] = is_right_initial(pi, certify_dim);
  if (auto bad = implication_violation(p)) throw InvariantError("fibration profile violates an implication: " + *bad);
  return p;
}

// ---- menus ----------------------------------------------------------------

bool MenuGroup::agree() const {
  for (const auto& c : conditions)
    if (c.second != conditions.front().second) return false;
  return true;
}

bool MenuReport::agree() const {
  for (const auto& g : groups)
    if (!g.agree()) return false;
  return true;
}

std::optional<std::string> MenuReport::disagreement() const {
  for (const auto& g : groups) {
    if (g.agree()) continue;
    std::string s = g.name + ":";
    for (const auto& [name, val] : g.conditions) s += " " + name + "=" + (val ? "true" : "false");
    return s;
  }
  return std::nullopt;
}

namespace {

// E_{|y} → E_{/y} = comma(π, ⟨y⟩), e ↦ (e, id_y).
Functor fiber_to_slice(const Functor& pi, int y) {
  const auto& k = pi.target();
  const auto& e = pi.source();
  auto fib = fiber(pi, y);
  auto cm = comma(pi, point(k, y));
  const std::string idy = k.morphism_id(k.identity(y));
  const auto& fc = fib.category;
  std::vector<int> om(fc.object_count()), mm(fc.morphism_count());
  auto obj_id = [&](int x) { return tuple_id({fc.object_id(x), idy, "*"}); };
  for (int x = 0; x < fc.object_count(); ++x) om[x] = cm.category.object_index(obj_id(x));
  for (int m = 0; m < fc.morphism_count(); ++m)
    mm[m] = cm.category.morphism_index(
        tuple_id({obj_id(fc.src(m)), fc.morphism_id(m), "*->*", obj_id(fc.tgt(m))}));
  (void)e;
  return Functor(fc, cm.category, std::move(om), std::move(mm));
}

// E_{|x} → E^{x/} = comma(⟨x⟩, π), e ↦ (id_x, e).
Functor fiber_to_coslice(const Functor& pi, int x) {
  const auto& k = pi.target();
  auto fib = fiber(pi, x);
  auto cm = comma(point(k, x), pi);
  const std::string idx = k.morphism_id(k.identity(x));
  const auto& fc = fib.category;
  std::vector<int> om(fc.object_count()), mm(fc.morphism_count());
  auto obj_id = [&](int e) { return tuple_id({"*", idx, fc.object_id(e)}); };
  for (int e = 0; e < fc.object_count(); ++e) om[e] = cm.category.object_index(obj_id(e));
  for (int m = 0; m < fc.morphism_count(); ++m)
    mm[m] = cm.category.morphism_index(
        tuple_id({obj_id(fc.src(m)), "*->*", fc.morphism_id(m), obj_id(fc.tgt(m))}));
  return Functor(fc, cm.category, std::move(om), std::move(mm));
}

// Restriction of sections over u: [1] → K to the endpoint `end` (0 = s, 1 = t).
Functor endpoint_restriction(const Functor& pi, int u, int end) {
  const auto& k = pi.target();
  auto p = select_morphism(k, u);
  auto sigma = point(interval(1), end);
  auto big = section_category(p, pi);
  auto small = section_category(compose(p, sigma), pi);
  return restriction(big, small, sigma);
}

bool lifts_exist(const Functor& pi) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  for (int x = 0; x < e.object_count(); ++x)
    for (int u : k.out(pi.object(x))) {
      bool found = false;
      for (int m : e.out(x))
        if (pi.morphism(m) == u) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  return true;
}

bool restriction_is_equivalence_for_cones(const Functor& pi) {
  const auto& k = pi.target();
  std::vector<FiniteCategory> shapes = {interval(1), poset({"0", "1", "2"}, {{"0", "1"}, {"0", "2"}}), interval(2)};
  for (const auto& shape : shapes) {
    auto sigma = point(shape, shape.object_index("0"));
    for (const auto& p : enumerate_functors(shape, k)) {
      auto big = section_category(p, pi);
      auto small = section_category(compose(p, sigma), pi);
      if (!is_equivalence(restriction(big, small, sigma))) return false;
    }
  }
  return true;
}

MenuGroup left_fibration_group(const Functor& pi, const std::string& name) {
  const auto& e = pi.source();
  const auto& k = pi.target();
  MenuGroup g{name, {}};
  const bool cons = is_conservative(pi).holds;
  g.conditions.emplace_back("a_cone_restrictions", restriction_is_equivalence_for_cones(pi));
  g.conditions.emplace_back("b_conservative_cocartesian", cons && is_cocartesian_fibration(pi).holds);
  g.conditions.emplace_back("c_conservative_locally_cocartesian", cons && is_locally_cocartesian(pi).holds);
  bool d = true;
  for (int u = 0; u < k.morphism_count() && d; ++u) d = is_equivalence(endpoint_restriction(pi, u, 0));
  g.conditions.emplace_back("d_source_restriction_equivalence", d);
  const bool lifts = lifts_exist(pi);
  bool ee = lifts;
  for (int u = 0; u < k.morphism_count() && ee; ++u) {
    auto bc = base_change(pi, select_morphism(k, u));
    for (int m = 0; m < e.morphism_count() && ee; ++m) {
      if (pi.morphism(m) != u) continue;
      const int bm = bc.category.morphism_index(tuple_id({"0->1", e.morphism_id(m)}));
      ee = is_cocartesian_morphism(bc.first, bm).holds;
    }
  }
  g.conditions.emplace_back("e_lifts_cocartesian_over_cell", ee);
  bool f = lifts;
  for (int m = 0; m < e.morphism_count() && f; ++m) f = is_cocartesian_morphism(pi, m).holds;
  g.conditions.emplace_back("f_all_morphisms_cocartesian", f);
  return g;
}

MenuGroup left_final_group(const Functor& pi, const std::string& name) {
  const auto& k = pi.target();
  MenuGroup g{name, {}};
  bool a = true, b = true, c = true;
  for (int u = 0; u < k.morphism_count(); ++u) {
    auto bc = base_change(pi, select_morphism(k, u));
    if (a) a = is_final(fiber(bc.first, 1).inclusion).holds;
    if (b) b = is_final(endpoint_restriction(pi, u, 0)).holds;
  }
  for (int y = 0; y < k.object_count() && c; ++y) c = is_final(fiber_to_slice(pi, y)).holds;
  g.conditions.emplace_back("a_target_fiber_final", a);
  g.conditions.emplace_back("b_source_restriction_final", b);
  g.conditions.emplace_back("c_fiber_to_overcategory_final", c);
  return g;
}

// A locally coCartesian lift of u out of x (least), or -1.
int local_lift(const Functor& pi, int x, int u) {
  const auto& e = pi.source();
  for (int m : e.out(x))
    if (pi.morphism(m) == u && is_locally_cocartesian_morphism(pi, m)) return m;
  return -1;
}

MenuGroup cocartesian_over_2_group(const Functor& pi, const std::string& name) {
  const auto& k = pi.target();
  MenuGroup g{name, {}};
  const bool loc = is_locally_cocartesian(pi).holds;
  g.conditions.emplace_back("a_cocartesian", is_cocartesian_fibration(pi).holds);
  g.conditions.emplace_back("b_locally_cocartesian_exponentiable", loc && is_exponentiable(pi).holds);
  auto i2 = interval(2);
  const int m01 = i2.morphism_index("0->1"), m12 = i2.morphism_index("1->2"), m02 = i2.morphism_index("0->2");
  bool c = true, d = true, ee = loc, f = loc;
  for (const auto& p : enumerate_functors(i2, k)) {
    auto bc = base_change(pi, p);
    const auto& q = bc.first;
    const auto& ec = bc.category;
    if (c) c = is_cocartesian_fibration(q).holds;
    if (d) d = is_locally_cocartesian(q).holds && is_exponentiable(q).holds;
    if (ee)
      for (int h = 0; h < ec.morphism_count() && ee; ++h)
        if (q.morphism(h) == m02) ee = !factorizations(q, m01, m12, h).objects.empty();
    if (f)
      for (int x = 0; x < ec.object_count() && f; ++x) {
        if (q.object(x) != i2.object_index("0")) continue;
        const int a = local_lift(q, x, m01);
        const int a2 = a < 0 ? -1 : local_lift(q, ec.tgt(a), m12);
        const int bar = local_lift(q, x, m02);
        if (a < 0 || a2 < 0 || bar < 0) {
          f = false;
          break;
        }
        const int ga = ec.compose(a2, a);
        int phi = -1;
        for (int t : ec.hom(ec.tgt(bar), ec.tgt(ga)))
          if (q.morphism(t) == i2.identity(i2.object_index("2")) && ec.compose(t, bar) == ga) phi = t;
        f = phi >= 0 && ec.is_isomorphism(phi);
      }
  }
  g.conditions.emplace_back("c_cocartesian_over_each_2_simplex", c);
  g.conditions.emplace_back("d_locally_cocartesian_exponentiable_over_each_2_simplex", d);
  g.conditions.emplace_back("e_locally_cocartesian_factorizations_nonempty", ee);
  g.conditions.emplace_back("f_locally_cocartesian_lifts_compose", f);
  return g;
}

}  // namespace

MenuReport menu_fiber_adjoints(const Functor& pi) {
  const auto& k = pi.target();
  MenuReport r;
  for (int u = 0; u < k.morphism_count(); ++u) {
    auto bc = base_change(pi, select_morphism(k, u));
    r.groups.push_back({"cocartesian@" + k.morphism_id(u),
                        {{"a_cocartesian_over_cell", is_cocartesian_fibration(bc.first).holds},
                         {"b_target_fiber_right_adjoint", is_right_adjoint(fiber(bc.first, 1).inclusion).holds}}});
    r.groups.push_back({"cartesian@" + k.morphism_id(u),
                        {{"a_cartesian_over_cell", is_cartesian_fibration(bc.first).holds},
                         {"b_source_fiber_left_adjoint", is_left_adjoint(fiber(bc.first, 0).inclusion).holds}}});
  }
  return r;
}

MenuReport menu_locally_cocartesian(const Functor& pi) {
  const auto& k = pi.target();
  MenuReport r;
  bool b = true, c = true;
  for (int y = 0; y < k.object_count() && b; ++y) b = is_right_adjoint(fiber_to_slice(pi, y)).holds;
  for (int u = 0; u < k.morphism_count() && c; ++u) c = is_right_adjoint(endpoint_restriction(pi, u, 0)).holds;
  r.groups.push_back({"locally_cocartesian",
                      {{"a_locally_cocartesian", is_locally_cocartesian(pi).holds},
                       {"b_fiber_to_overcategory_right_adjoint", b},
                       {"c_source_restriction_right_adjoint", c}}});
  b = true;
  c = true;
  for (int x = 0; x < k.object_count() && b; ++x) b = is_left_adjoint(fiber_to_coslice(pi, x)).holds;
  for (int u = 0; u < k.morphism_count() && c; ++u) c = is_left_adjoint(endpoint_restriction(pi, u, 1)).holds;
  r.groups.push_back({"locally_cartesian",
                      {{"a_locally_cartesian", is_locally_cartesian(pi).holds},
                       {"b_fiber_to_undercategory_left_adjoint", b},
                       {"c_target_restriction_left_adjoint", c}}});
  return r;
}

MenuReport menu_left_fibration(const Functor& pi) {
  MenuReport r;
  r.groups.push_back(left_fibration_group(pi, "left_fibration"));
  r.groups.push_back(left_fibration_group(opposite(pi), "right_fibration"));
  return r;
}

MenuReport menu_left_final(const Functor& pi) {
  MenuReport r;
  r.groups.push_back(left_final_group(pi, "left_final"));
  r.groups.push_back(left_final_group(opposite(pi), "right_initial"));
  return r;
}

MenuReport menu_cocartesian_over_2(const Functor& pi) {
  MenuReport r;
  r.groups.push_back(cocartesian_over_2_group(pi, "cocartesian"));
  r.groups.push_back(cocartesian_over_2_group(opposite(pi), "cartesian"));
  return r;
}

}  // namespace fibcat
