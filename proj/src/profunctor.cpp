#include "fibcat/profunctor.hpp"

#include <algorithm>
#include <set>

#include "fibcat/constructions.hpp"
#include "fibcat/ids.hpp"
#include "fibcat/union_find.hpp"

namespace fibcat {

std::size_t Profunctor::total_size() const {
  std::size_t n = 0;
  for (const auto& e : elements) n += e.size();
  return n;
}

int Profunctor::element_index(int a, int b, std::string_view id) const {
  const auto& v = at(a, b);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == id) return static_cast<int>(i);
  throw SchemaError("unknown element '" + std::string(id) + "' at (" + source.object_id(a) + ", " +
                    target.object_id(b) + ")");
}

Profunctor make_profunctor(const FiniteCategory& a, const FiniteCategory& b,
                           const std::function<std::vector<std::string>(int, int)>& elements,
                           const std::function<int(int, int, int)>& left,
                           const std::function<int(int, int, int)>& right) {
  Profunctor p;
  p.source = a;
  p.target = b;
  const int na = a.object_count(), nb = b.object_count();
  p.elements.resize(na * nb);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) p.elements[x * nb + y] = elements(x, y);
  p.left.resize(a.morphism_count() * nb);
  for (int al = 0; al < a.morphism_count(); ++al)
    for (int y = 0; y < nb; ++y)
      for (int e = 0; e < p.size(a.tgt(al), y); ++e) p.left[al * nb + y].push_back(left(al, y, e));
  p.right.resize(na * b.morphism_count());
  for (int x = 0; x < na; ++x)
    for (int be = 0; be < b.morphism_count(); ++be)
      for (int e = 0; e < p.size(x, b.src(be)); ++e) p.right[x * b.morphism_count() + be].push_back(right(x, be, e));
  return p;
}

ValidationReport validate_profunctor(const Profunctor& p) {
  ValidationReport rep;
  const auto& a = p.source;
  const auto& b = p.target;
  const int na = a.object_count(), nb = b.object_count();
  auto add = [&](std::string kind, std::vector<std::string> ids) {
    rep.violations.push_back({std::move(kind), std::move(ids), {}});
  };
  if (static_cast<int>(p.elements.size()) != na * nb || static_cast<int>(p.left.size()) != a.morphism_count() * nb ||
      static_cast<int>(p.right.size()) != na * b.morphism_count()) {
    add("profunctor_shape", {});
    return rep;
  }
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      auto ids = p.at(x, y);
      std::sort(ids.begin(), ids.end());
      if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        add("duplicate_element", {a.object_id(x), b.object_id(y)});
    }
  for (int al = 0; al < a.morphism_count(); ++al)
    for (int y = 0; y < nb; ++y) {
      const auto& m = p.left[al * nb + y];
      if (static_cast<int>(m.size()) != p.size(a.tgt(al), y)) {
        add("left_action_domain", {a.morphism_id(al), b.object_id(y)});
        return rep;
      }
      for (int v : m)
        if (v < 0 || v >= p.size(a.src(al), y)) {
          add("left_action_codomain", {a.morphism_id(al), b.object_id(y)});
          return rep;
        }
    }
  for (int x = 0; x < na; ++x)
    for (int be = 0; be < b.morphism_count(); ++be) {
      const auto& m = p.right[x * b.morphism_count() + be];
      if (static_cast<int>(m.size()) != p.size(x, b.src(be))) {
        add("right_action_domain", {a.object_id(x), b.morphism_id(be)});
        return rep;
      }
      for (int v : m)
        if (v < 0 || v >= p.size(x, b.tgt(be))) {
          add("right_action_codomain", {a.object_id(x), b.morphism_id(be)});
          return rep;
        }
    }
  auto elem = [&](int x, int y, int e) { return p.at(x, y)[e]; };
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y)
      for (int e = 0; e < p.size(x, y); ++e) {
        if (p.act_left(a.identity(x), y, e) != e) add("left_identity", {a.object_id(x), b.object_id(y), elem(x, y, e)});
        if (p.act_right(x, b.identity(y), e) != e)
          add("right_identity", {a.object_id(x), b.object_id(y), elem(x, y, e)});
      }
  // (x·α)·α' = x·(α∘α')
  for (int al = 0; al < a.morphism_count(); ++al)
    for (int al2 : a.in(a.src(al))) {
      const int comp = a.compose(al, al2);
      for (int y = 0; y < nb; ++y)
        for (int e = 0; e < p.size(a.tgt(al), y); ++e)
          if (p.act_left(al2, y, p.act_left(al, y, e)) != p.act_left(comp, y, e))
            add("left_composite", {a.morphism_id(al), a.morphism_id(al2), elem(a.tgt(al), y, e)});
    }
  for (int be = 0; be < b.morphism_count(); ++be)
    for (int be2 : b.out(b.tgt(be))) {
      const int comp = b.compose(be2, be);
      for (int x = 0; x < na; ++x)
        for (int e = 0; e < p.size(x, b.src(be)); ++e)
          if (p.act_right(x, be2, p.act_right(x, be, e)) != p.act_right(x, comp, e))
            add("right_composite", {b.morphism_id(be2), b.morphism_id(be), elem(x, b.src(be), e)});
    }
  for (int al = 0; al < a.morphism_count(); ++al)
    for (int be = 0; be < b.morphism_count(); ++be)
      for (int e = 0; e < p.size(a.tgt(al), b.src(be)); ++e) {
        const int one = p.act_right(a.src(al), be, p.act_left(al, b.src(be), e));
        const int two = p.act_left(al, b.tgt(be), p.act_right(a.tgt(al), be, e));
        if (one != two) add("actions_commute", {a.morphism_id(al), b.morphism_id(be), elem(a.tgt(al), b.src(be), e)});
      }
  return rep;
}

void require_valid(const Profunctor& p, std::string_view what) {
  auto rep = validate_profunctor(p);
  if (!rep.ok()) {
    std::string msg = std::string(what) + " is not a profunctor: " + rep.violations.front().kind;
    for (const auto& id : rep.violations.front().ids) msg += " " + id;
    throw ValidationError(msg, rep.violations);
  }
}

namespace {

int position(const std::vector<int>& v, int x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) throw InvariantError("element missing from its hom set");
  return static_cast<int>(it - v.begin());
}

}  // namespace

Profunctor hom_profunctor(const FiniteCategory& c) {
  const int n = c.object_count();
  std::vector<std::vector<int>> homs(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) homs[x * n + y] = c.hom(x, y);
  return make_profunctor(
      c, c,
      [&](int x, int y) {
        std::vector<std::string> ids;
        for (int m : homs[x * n + y]) ids.push_back(c.morphism_id(m));
        return ids;
      },
      [&](int al, int y, int e) {
        const int h = homs[c.tgt(al) * n + y][e];
        return position(homs[c.src(al) * n + y], c.compose(h, al));
      },
      [&](int x, int be, int e) {
        const int h = homs[x * n + c.src(be)][e];
        return position(homs[x * n + c.tgt(be)], c.compose(be, h));
      });
}

Profunctor empty_profunctor(const FiniteCategory& a, const FiniteCategory& b) {
  return make_profunctor(
      a, b, [](int, int) { return std::vector<std::string>{}; }, [](int, int, int) { return -1; },
      [](int, int, int) { return -1; });
}

Profunctor transpose(const Profunctor& p) {
  const auto bop = opposite(p.target);
  const auto aop = opposite(p.source);
  return make_profunctor(
      bop, aop, [&](int y, int x) { return p.at(x, y); },
      // β^op: y' → y in B^op is β: y → y' in B; it acts P(x, y) → P(x, y').
      [&](int be, int x, int e) { return p.act_right(x, be, e); },
      [&](int y, int al, int e) { return p.act_left(al, y, e); });
}

Profunctor restrict_profunctor(const Profunctor& p, const Functor& f, const Functor& g) {
  if (!(f.target() == p.source) || !(g.target() == p.target))
    throw PreconditionError("restriction functors do not land in the profunctor's categories",
                            Witness{"restriction_mismatch", {}, {}});
  return make_profunctor(
      f.source(), g.source(), [&](int x, int y) { return p.at(f.object(x), g.object(y)); },
      [&](int al, int y, int e) { return p.act_left(f.morphism(al), g.object(y), e); },
      [&](int x, int be, int e) { return p.act_right(f.object(x), g.morphism(be), e); });
}

SetFunctor as_set_functor(const Profunctor& p) {
  const auto aop = opposite(p.source);
  const auto d = product(aop, p.target);
  SetFunctor f;
  f.base = d;
  f.values.resize(d.object_count());
  f.maps.resize(d.morphism_count());
  for (int x = 0; x < p.source.object_count(); ++x)
    for (int y = 0; y < p.target.object_count(); ++y)
      f.values[d.object_index(tuple_id({p.source.object_id(x), p.target.object_id(y)}))] = p.at(x, y);
  for (int al = 0; al < p.source.morphism_count(); ++al)
    for (int be = 0; be < p.target.morphism_count(); ++be) {
      // (α^op, β): (tgt α, src β) → (src α, tgt β)
      const int m = d.morphism_index(tuple_id({p.source.morphism_id(al), p.target.morphism_id(be)}));
      auto& out = f.maps[m];
      for (int e = 0; e < p.size(p.source.tgt(al), p.target.src(be)); ++e)
        out.push_back(p.act_left(al, p.target.tgt(be), p.act_right(p.source.tgt(al), be, e)));
    }
  return f;
}

Profunctor from_set_functor(const FiniteCategory& a, const FiniteCategory& b, const SetFunctor& f) {
  const auto& d = f.base;
  auto obj = [&](int x, int y) { return d.object_index(tuple_id({a.object_id(x), b.object_id(y)})); };
  auto mor = [&](int al, int be) { return d.morphism_index(tuple_id({a.morphism_id(al), b.morphism_id(be)})); };
  return make_profunctor(
      a, b, [&](int x, int y) { return f.values[obj(x, y)]; },
      [&](int al, int y, int e) { return f.act(mor(al, b.identity(y)), e); },
      [&](int x, int be, int e) { return f.act(mor(a.identity(x), be), e); });
}

Verdict check_profunctor_iso(const Profunctor& p, const Profunctor& q, const ProfunctorIso& iso) {
  if (!(p.source == q.source) || !(p.target == q.target))
    return Verdict::no(Witness{"different_categories", {}, {}});
  const auto& a = p.source;
  const auto& b = p.target;
  const int na = a.object_count(), nb = b.object_count();
  if (static_cast<int>(iso.components.size()) != na * nb) return Verdict::no(Witness{"iso_shape", {}, {}});
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      const auto& c = iso.components[x * nb + y];
      if (static_cast<int>(c.size()) != p.size(x, y) || p.size(x, y) != q.size(x, y))
        return Verdict::no(Witness{"size_mismatch", {a.object_id(x), b.object_id(y)}, {}});
      std::vector<char> hit(q.size(x, y), 0);
      for (int v : c) {
        if (v < 0 || v >= q.size(x, y) || hit[v])
          return Verdict::no(Witness{"not_bijective", {a.object_id(x), b.object_id(y)}, {}});
        hit[v] = 1;
      }
    }
  for (int al = 0; al < a.morphism_count(); ++al)
    for (int y = 0; y < nb; ++y)
      for (int e = 0; e < p.size(a.tgt(al), y); ++e)
        if (iso.components[a.src(al) * nb + y][p.act_left(al, y, e)] !=
            q.act_left(al, y, iso.components[a.tgt(al) * nb + y][e]))
          return Verdict::no(Witness{"not_natural_left", {a.morphism_id(al), b.object_id(y), p.at(a.tgt(al), y)[e]}, {}});
  for (int x = 0; x < na; ++x)
    for (int be = 0; be < b.morphism_count(); ++be)
      for (int e = 0; e < p.size(x, b.src(be)); ++e)
        if (iso.components[x * nb + b.tgt(be)][p.act_right(x, be, e)] !=
            q.act_right(x, be, iso.components[x * nb + b.src(be)][e]))
          return Verdict::no(Witness{"not_natural_right", {a.object_id(x), b.morphism_id(be), p.at(x, b.src(be))[e]}, {}});
  return Verdict::yes();
}

std::optional<ProfunctorIso> iso_by_rename(const Profunctor& p, const Profunctor& q,
                                           const std::function<std::string(int, int, const std::string&)>& rename) {
  if (!(p.source == q.source) || !(p.target == q.target)) return std::nullopt;
  const int na = p.source.object_count(), nb = p.target.object_count();
  ProfunctorIso iso;
  iso.components.resize(na * nb);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      const auto& target = q.at(x, y);
      for (const auto& id : p.at(x, y)) {
        auto it = std::find(target.begin(), target.end(), rename(x, y, id));
        if (it == target.end()) return std::nullopt;
        iso.components[x * nb + y].push_back(static_cast<int>(it - target.begin()));
      }
    }
  if (!check_profunctor_iso(p, q, iso)) return std::nullopt;
  return iso;
}

std::optional<ProfunctorIso> find_profunctor_iso(const Profunctor& p, const Profunctor& q) {
  if (!(p.source == q.source) || !(p.target == q.target)) return std::nullopt;
  auto t = find_natural_isomorphism(as_set_functor(p), as_set_functor(q));
  if (!t) return std::nullopt;
  const auto d = product(opposite(p.source), p.target);
  const int na = p.source.object_count(), nb = p.target.object_count();
  ProfunctorIso iso;
  iso.components.resize(na * nb);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y)
      iso.components[x * nb + y] =
          t->components[d.object_index(tuple_id({p.source.object_id(x), p.target.object_id(y)}))];
  return iso;
}

ProfunctorIso compose(const ProfunctorIso& g, const ProfunctorIso& f) {
  ProfunctorIso out;
  out.components.resize(f.components.size());
  for (std::size_t i = 0; i < f.components.size(); ++i)
    for (int v : f.components[i]) out.components[i].push_back(g.components[i][v]);
  return out;
}

ProfunctorIso inverse(const ProfunctorIso& f) {
  ProfunctorIso out;
  out.components.resize(f.components.size());
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    out.components[i].assign(f.components[i].size(), -1);
    for (std::size_t e = 0; e < f.components[i].size(); ++e) out.components[i][f.components[i][e]] = static_cast<int>(e);
  }
  return out;
}

PairComparison reindex(PairComparison k, ProfunctorIso i, ProfunctorIso j, int middle_count, int target_count) {
  return [k = std::move(k), i = std::move(i), j = std::move(j), middle_count, target_count](int a, int b, int c, int p,
                                                                                           int q) {
    return k(a, b, c, i.components[a * middle_count + b][p], j.components[b * target_count + c][q]);
  };
}

PairComparison CoendComposite::comparison() const {
  return [this](int a, int b, int c, int p, int q) { return class_of(a, b, c, p, q); };
}

CoendComposite compose_prof(const Profunctor& p, const Profunctor& q) {
  if (!(p.target == q.source))
    throw PreconditionError("middle categories differ", Witness{"middle_mismatch", {}, {}});
  const auto& a = p.source;
  const auto& b = p.target;
  const auto& c = q.target;
  const int na = a.object_count(), nb = b.object_count(), nc = c.object_count();
  CoendComposite out;
  std::vector<std::vector<std::string>> elements(na * nc);
  out.representatives.resize(na * nc);
  for (int x = 0; x < na; ++x)
    for (int z = 0; z < nc; ++z) {
      // Pairs (y, p, q) numbered consecutively.
      std::vector<std::array<int, 3>> pairs;
      std::map<std::array<int, 3>, int> index;
      for (int y = 0; y < nb; ++y)
        for (int e = 0; e < p.size(x, y); ++e)
          for (int f = 0; f < q.size(y, z); ++f) {
            index[{y, e, f}] = static_cast<int>(pairs.size());
            pairs.push_back({y, e, f});
          }
      UnionFind uf(pairs.size());
      // (p·β, q') ~ (p, β·q') for β: y → y'.
      for (int be = 0; be < b.morphism_count(); ++be) {
        const int y = b.src(be), y2 = b.tgt(be);
        for (int e = 0; e < p.size(x, y); ++e)
          for (int f = 0; f < q.size(y2, z); ++f)
            uf.unite(index.at({y2, p.act_right(x, be, e), f}), index.at({y, e, q.act_left(be, z, f)}));
      }
      // Name each class by its least tuple id.
      std::map<std::size_t, std::string> name;
      std::map<std::size_t, std::array<int, 3>> rep;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [y, e, f] = pairs[i];
        auto id = tuple_id({b.object_id(y), p.at(x, y)[e], q.at(y, z)[f]});
        const auto r = uf.find(i);
        auto it = name.find(r);
        if (it == name.end() || id < it->second) {
          name[r] = id;
          rep[r] = pairs[i];
        }
      }
      std::vector<std::pair<std::string, std::size_t>> sorted;
      for (const auto& [r, id] : name) sorted.emplace_back(id, r);
      std::sort(sorted.begin(), sorted.end());
      std::map<std::size_t, int> label;
      for (std::size_t k = 0; k < sorted.size(); ++k) {
        label[sorted[k].second] = static_cast<int>(k);
        elements[x * nc + z].push_back(sorted[k].first);
        out.representatives[x * nc + z].push_back(rep[sorted[k].second]);
      }
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [y, e, f] = pairs[i];
        out.classes[{x, y, z, e, f}] = label[uf.find(i)];
      }
    }
  auto left = [&](int al, int z, int k) {
    const auto [y, e, f] = out.representatives[a.tgt(al) * nc + z][k];
    return out.class_of(a.src(al), y, z, p.act_left(al, y, e), f);
  };
  auto right = [&](int x, int ga, int k) {
    const auto [y, e, f] = out.representatives[x * nc + c.src(ga)][k];
    return out.class_of(x, y, c.tgt(ga), e, q.act_right(y, ga, f));
  };
  out.result = make_profunctor(a, c, [&](int x, int z) { return elements[x * nc + z]; }, left, right);
  // The actions must not depend on the chosen representatives.
  for (const auto& [key, k] : out.classes) {
    const auto [x, y, z, e, f] = key;
    for (int al : a.in(x))
      if (out.result.act_left(al, z, k) != out.class_of(a.src(al), y, z, p.act_left(al, y, e), f))
        throw InvariantError("coend left action is not well defined");
    for (int ga : c.out(z))
      if (out.result.act_right(x, ga, k) != out.class_of(x, y, c.tgt(ga), e, q.act_right(y, ga, f)))
        throw InvariantError("coend right action is not well defined");
  }
  return out;
}

ComparisonResult comparison_iso(const Profunctor& p, const Profunctor& q, const Profunctor& r1,
                                const PairComparison& k1, const Profunctor& r2, const PairComparison& k2) {
  ComparisonResult out;
  const auto& a = p.source;
  const auto& b = p.target;
  const auto& c = q.target;
  const int na = a.object_count(), nb = b.object_count(), nc = c.object_count();
  ProfunctorIso iso;
  iso.components.resize(na * nc);
  for (int x = 0; x < na; ++x)
    for (int z = 0; z < nc; ++z) {
      auto& comp = iso.components[x * nc + z];
      comp.assign(r1.size(x, z), -1);
      for (int y = 0; y < nb; ++y)
        for (int e = 0; e < p.size(x, y); ++e)
          for (int f = 0; f < q.size(y, z); ++f) {
            const int u = k1(x, y, z, e, f), v = k2(x, y, z, e, f);
            if (comp[u] >= 0 && comp[u] != v) {
              out.witness = Witness{"comparison_not_well_defined",
                                    {a.object_id(x), b.object_id(y), c.object_id(z), p.at(x, y)[e], q.at(y, z)[f]},
                                    {}};
              return out;
            }
            comp[u] = v;
          }
      for (int u = 0; u < r1.size(x, z); ++u)
        if (comp[u] < 0) {
          out.witness = Witness{"comparison_not_surjective", {a.object_id(x), c.object_id(z), r1.at(x, z)[u]}, {}};
          return out;
        }
    }
  if (auto v = check_profunctor_iso(r1, r2, iso); !v) {
    out.witness = v.witness;
    return out;
  }
  out.holds = true;
  out.iso = std::move(iso);
  return out;
}

PairComparison right_unitor(const Profunctor& p) {
  const auto& b = p.target;
  return [&p, b](int a, int y, int z, int e, int f) { return p.act_right(a, b.hom(y, z)[f], e); };
}

PairComparison left_unitor(const Profunctor& p) {
  const auto& a = p.source;
  return [&p, a](int x, int y, int z, int e, int f) { return p.act_left(a.hom(x, y)[e], z, f); };
}

}  // namespace fibcat
