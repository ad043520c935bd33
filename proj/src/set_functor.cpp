#include "fibcat/set_functor.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "fibcat/ids.hpp"
#include "fibcat/union_find.hpp"

namespace fibcat {

std::size_t SetFunctor::total_size() const {
  std::size_t n = 0;
  for (const auto& v : values) n += v.size();
  return n;
}

int SetFunctor::element_index(int x, std::string_view id) const {
  const auto& v = values[x];
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == id) return static_cast<int>(i);
  throw SchemaError("unknown element '" + std::string(id) + "' at object '" + base.object_id(x) + "'");
}

ValidationReport validate_set_functor(const SetFunctor& f) {
  ValidationReport rep;
  const auto& k = f.base;
  auto add = [&](std::string kind, std::vector<std::string> ids) {
    rep.violations.push_back({std::move(kind), std::move(ids), {}});
  };
  if (static_cast<int>(f.values.size()) != k.object_count() || static_cast<int>(f.maps.size()) != k.morphism_count()) {
    add("set_functor_shape", {});
    return rep;
  }
  for (int x = 0; x < k.object_count(); ++x) {
    auto ids = f.values[x];
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) add("duplicate_element", {k.object_id(x)});
  }
  for (int m = 0; m < k.morphism_count(); ++m) {
    if (static_cast<int>(f.maps[m].size()) != f.size(k.src(m))) {
      add("map_domain", {k.morphism_id(m)});
      return rep;
    }
    for (int e : f.maps[m])
      if (e < 0 || e >= f.size(k.tgt(m))) {
        add("map_codomain", {k.morphism_id(m)});
        return rep;
      }
  }
  for (int x = 0; x < k.object_count(); ++x) {
    const int id = k.identity(x);
    for (int e = 0; e < f.size(x); ++e)
      if (f.act(id, e) != e) add("identity_action", {k.object_id(x), f.values[x][e]});
  }
  for (int a = 0; a < k.morphism_count(); ++a)
    for (int b : k.out(k.tgt(a))) {
      const int ba = k.compose(b, a);
      for (int e = 0; e < f.size(k.src(a)); ++e)
        if (f.act(b, f.act(a, e)) != f.act(ba, e))
          add("composite_action", {k.morphism_id(b), k.morphism_id(a), f.values[k.src(a)][e]});
    }
  return rep;
}

void require_valid(const SetFunctor& f, std::string_view what) {
  auto rep = validate_set_functor(f);
  if (!rep.ok()) {
    std::string msg = std::string(what) + " is not a set-valued functor: " + rep.violations.front().kind;
    for (const auto& id : rep.violations.front().ids) msg += " " + id;
    throw ValidationError(msg, rep.violations);
  }
}

SetFunctor corepresentable(const FiniteCategory& k, int x) {
  SetFunctor f;
  f.base = k;
  f.values.resize(k.object_count());
  std::vector<std::vector<int>> homs(k.object_count());
  std::vector<int> pos(k.morphism_count(), -1);
  for (int y = 0; y < k.object_count(); ++y) {
    homs[y] = k.hom(x, y);
    for (std::size_t i = 0; i < homs[y].size(); ++i) {
      pos[homs[y][i]] = static_cast<int>(i);
      f.values[y].push_back(k.morphism_id(homs[y][i]));
    }
  }
  f.maps.resize(k.morphism_count());
  for (int m = 0; m < k.morphism_count(); ++m)
    for (int h : homs[k.src(m)]) f.maps[m].push_back(pos[k.compose(m, h)]);
  return f;
}

SetFunctor constant_set_functor(const FiniteCategory& k, const std::vector<std::string>& elements) {
  SetFunctor f;
  f.base = k;
  f.values.assign(k.object_count(), elements);
  std::vector<int> id(elements.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  f.maps.assign(k.morphism_count(), id);
  return f;
}

SetFunctor compose(const SetFunctor& f, const Functor& g) {
  SetFunctor out;
  out.base = g.source();
  for (int x = 0; x < g.source().object_count(); ++x) out.values.push_back(f.values[g.object(x)]);
  for (int m = 0; m < g.source().morphism_count(); ++m) out.maps.push_back(f.maps[g.morphism(m)]);
  return out;
}

bool is_natural(const SetFunctor& f, const SetFunctor& g, const SetTransformation& t) {
  const auto& k = f.base;
  if (static_cast<int>(t.components.size()) != k.object_count()) return false;
  for (int x = 0; x < k.object_count(); ++x) {
    if (static_cast<int>(t.components[x].size()) != f.size(x)) return false;
    for (int v : t.components[x])
      if (v < 0 || v >= g.size(x)) return false;
  }
  for (int m = 0; m < k.morphism_count(); ++m)
    for (int e = 0; e < f.size(k.src(m)); ++e)
      if (t.components[k.tgt(m)][f.act(m, e)] != g.act(m, t.components[k.src(m)][e])) return false;
  return true;
}

bool is_natural_isomorphism(const SetFunctor& f, const SetFunctor& g, const SetTransformation& t) {
  if (!is_natural(f, g, t)) return false;
  for (int x = 0; x < f.base.object_count(); ++x) {
    if (f.size(x) != g.size(x)) return false;
    std::vector<char> hit(g.size(x), 0);
    for (int v : t.components[x]) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
  }
  return true;
}

std::optional<SetTransformation> identity_on_ids(const SetFunctor& f, const SetFunctor& g) {
  SetTransformation t;
  for (int x = 0; x < f.base.object_count(); ++x) {
    if (f.size(x) != g.size(x)) return std::nullopt;
    std::vector<int> c;
    for (const auto& id : f.values[x]) {
      auto it = std::find(g.values[x].begin(), g.values[x].end(), id);
      if (it == g.values[x].end()) return std::nullopt;
      c.push_back(static_cast<int>(it - g.values[x].begin()));
    }
    t.components.push_back(std::move(c));
  }
  if (!is_natural_isomorphism(f, g, t)) return std::nullopt;
  return t;
}

std::optional<SetTransformation> find_natural_isomorphism(const SetFunctor& f, const SetFunctor& g) {
  const auto& k = f.base;
  for (int x = 0; x < k.object_count(); ++x)
    if (f.size(x) != g.size(x)) return std::nullopt;
  std::vector<std::pair<int, int>> slots;
  for (int x = 0; x < k.object_count(); ++x)
    for (int e = 0; e < f.size(x); ++e) slots.emplace_back(x, e);
  SetTransformation t;
  t.components.resize(k.object_count());
  std::vector<std::vector<char>> used(k.object_count());
  for (int x = 0; x < k.object_count(); ++x) {
    t.components[x].assign(f.size(x), -1);
    used[x].assign(g.size(x), 0);
  }
  // Every morphism touching a fully assigned pair is checked as soon as both ends are known.
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == slots.size()) return true;
    const auto [x, e] = slots[i];
    for (int v = 0; v < g.size(x); ++v) {
      if (used[x][v]) continue;
      t.components[x][e] = v;
      bool ok = true;
      for (int m : k.out(x)) {
        const int img = t.components[k.tgt(m)][f.act(m, e)];
        if (img >= 0 && img != g.act(m, v)) ok = false;
      }
      for (int m : k.in(x))
        for (int e0 = 0; e0 < f.size(k.src(m)) && ok; ++e0) {
          if (f.act(m, e0) != e) continue;
          const int img = t.components[k.src(m)][e0];
          if (img >= 0 && g.act(m, img) != v) ok = false;
        }
      if (ok) {
        used[x][v] = 1;
        if (go(i + 1)) return true;
        used[x][v] = 0;
      }
      t.components[x][e] = -1;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return t;
}

namespace {

std::vector<int> element_offsets(const SetFunctor& f) {
  std::vector<int> off(f.base.object_count() + 1, 0);
  for (int x = 0; x < f.base.object_count(); ++x) off[x + 1] = off[x] + f.size(x);
  return off;
}

}  // namespace

std::vector<std::string> colimit(const SetFunctor& f) {
  const auto& k = f.base;
  auto off = element_offsets(f);
  UnionFind uf(off.back());
  for (int m = 0; m < k.morphism_count(); ++m)
    for (int e = 0; e < f.size(k.src(m)); ++e) uf.unite(off[k.src(m)] + e, off[k.tgt(m)] + f.act(m, e));
  std::vector<std::string> out;
  for (int x = 0; x < k.object_count(); ++x)
    for (int e = 0; e < f.size(x); ++e)
      if (uf.find(off[x] + e) == static_cast<std::size_t>(off[x] + e))
        out.push_back(tuple_id({k.object_id(x), f.values[x][e]}));
  return out;
}

std::size_t colimit_size(const SetFunctor& f) { return colimit(f).size(); }

std::size_t limit_size(const SetFunctor& f) {
  const auto& k = f.base;
  const int n = k.object_count();
  std::vector<int> choice(n, -1);
  std::size_t count = 0;
  std::function<void(int)> go = [&](int x) {
    if (x == n) {
      ++count;
      return;
    }
    for (int e = 0; e < f.size(x); ++e) {
      choice[x] = e;
      bool ok = true;
      for (int m : k.out(x))
        if (k.tgt(m) <= x && choice[k.tgt(m)] != f.act(m, e)) ok = false;
      for (int m : k.in(x))
        if (k.src(m) < x && f.act(m, choice[k.src(m)]) != e) ok = false;
      if (ok) go(x + 1);
    }
    choice[x] = -1;
  };
  go(0);
  return count;
}

}  // namespace fibcat
