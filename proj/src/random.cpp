#include "fibcat/random.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "fibcat/catalog.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/correspondence.hpp"
#include "fibcat/enumerate.hpp"
#include "fibcat/ids.hpp"
#include "fibcat/union_find.hpp"

namespace fibcat {

int Rng::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

bool Rng::coin(double p) { return std::bernoulli_distribution(p)(engine_); }

FiniteCategory random_poset(Rng& rng, int n, double density) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.coin(density)) rel.emplace_back(ids[i], ids[j]);
  return poset(ids, rel);
}

namespace {

FiniteCategory catalog_piece(Rng& rng) {
  switch (rng.uniform(0, 8)) {
    case 0:
      return terminal();
    case 1:
      return interval(rng.uniform(1, 3));
    case 2:
      return ret_category();
    case 3:
      return idem_category();
    case 4:
      return walking_isomorphism();
    case 5:
      return cyclic_group_2();
    case 6:
      return monoid({"1", "g", "h"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    case 7:
      return monoid({"1", "e"}, {{0, 1}, {1, 1}});
    default:
      return discrete({"u", "v"});
  }
}

FiniteCategory small_piece(Rng& rng, int depth) {
  const int family = depth > 1 ? rng.uniform(0, 1) : rng.uniform(0, 5);
  switch (family) {
    case 0:
      return random_poset(rng, rng.uniform(1, 4));
    case 1:
      return catalog_piece(rng);
    case 2:
      return coproduct(small_piece(rng, depth + 1), small_piece(rng, depth + 1));
    case 3:
      return product(small_piece(rng, depth + 1), small_piece(rng, depth + 1));
    case 4:
      return opposite(small_piece(rng, depth + 1));
    default: {
      auto c = small_piece(rng, depth + 1);
      std::vector<int> keep;
      for (int x = 0; x < c.object_count(); ++x)
        if (rng.coin(0.7)) keep.push_back(x);
      if (keep.empty()) keep.push_back(0);
      return full_subcategory(c, keep).category;
    }
  }
}

}  // namespace

FiniteCategory random_category(Rng& rng, const CategoryBounds& bounds) {
  for (;;) {
    auto c = small_piece(rng, 0);
    if (c.object_count() >= 1 && c.object_count() <= bounds.max_objects && c.morphism_count() <= bounds.max_morphisms)
      return c;
  }
}

SetFunctor random_set_functor(Rng& rng, const FiniteCategory& k, int max_elements) {
  // Generators x_i, elements (i, m: x_i → y), merged and closed under the action.
  struct Elem {
    int gen, m;
  };
  std::vector<Elem> elems;
  std::vector<int> gens;
  const int wanted = rng.uniform(0, 3);
  for (int i = 0; i < wanted; ++i) {
    const int x = rng.uniform(0, k.object_count() - 1);
    if (static_cast<int>(elems.size() + k.out(x).size()) > max_elements) break;
    gens.push_back(x);
    for (int m : k.out(x)) elems.push_back({i, m});
  }
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) index[{elems[i].gen, elems[i].m}] = i;
  UnionFind uf(elems.size());
  const int merges = elems.empty() ? 0 : rng.uniform(0, 3);
  for (int t = 0; t < merges; ++t) {
    const int i = rng.uniform(0, static_cast<int>(elems.size()) - 1);
    std::vector<int> same;
    for (int j = 0; j < static_cast<int>(elems.size()); ++j)
      if (k.tgt(elems[j].m) == k.tgt(elems[i].m)) same.push_back(j);
    uf.unite(i, rng.pick(same));
  }
  // Congruence closure: equal elements have equal images.
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < static_cast<int>(elems.size()); ++i)
      for (int j = i + 1; j < static_cast<int>(elems.size()); ++j) {
        if (uf.find(i) != uf.find(j)) continue;
        for (int g : k.out(k.tgt(elems[i].m))) {
          const int a = index.at({elems[i].gen, k.compose(g, elems[i].m)});
          const int b = index.at({elems[j].gen, k.compose(g, elems[j].m)});
          if (uf.unite(a, b)) changed = true;
        }
      }
  }
  SetFunctor f;
  f.base = k;
  f.values.resize(k.object_count());
  auto elem_id = [&](int i) { return tuple_id({"g" + std::to_string(elems[i].gen), k.morphism_id(elems[i].m)}); };
  // Class name: least member id.
  std::map<std::size_t, std::string> name;
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) {
    auto id = elem_id(i);
    auto [it, fresh] = name.emplace(uf.find(i), id);
    if (!fresh && id < it->second) it->second = id;
  }
  for (const auto& [root, id] : name) f.values[k.tgt(elems[root].m)].push_back(id);
  for (auto& v : f.values) std::sort(v.begin(), v.end());
  auto position = [&](int i) {
    const auto& v = f.values[k.tgt(elems[i].m)];
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), name.at(uf.find(i))) - v.begin());
  };
  f.maps.resize(k.morphism_count());
  for (int g = 0; g < k.morphism_count(); ++g) {
    f.maps[g].assign(f.size(k.src(g)), -1);
    for (int i = 0; i < static_cast<int>(elems.size()); ++i)
      if (k.tgt(elems[i].m) == k.src(g)) f.maps[g][position(i)] = position(index.at({elems[i].gen, k.compose(g, elems[i].m)}));
  }
  require_valid(f, "random set functor");
  return f;
}

Profunctor random_profunctor(Rng& rng, const FiniteCategory& a, const FiniteCategory& b, int max_elements) {
  const auto d = product(opposite(a), b);
  auto p = from_set_functor(a, b, random_set_functor(rng, d, max_elements));
  require_valid(p, "random profunctor");
  return p;
}

std::optional<Functor> random_functor(Rng& rng, const FiniteCategory& source, const FiniteCategory& target) {
  auto all = enumerate_functors(source, target);
  if (all.empty()) return std::nullopt;
  return rng.pick(all);
}

Functor random_functor_over_interval(Rng& rng, int n, int max_morphisms) {
  const auto base = interval(n);
  const CategoryBounds fiber_bounds{2, 4};
  for (;;) {
    std::optional<Functor> pi;
    const int family = rng.uniform(0, 2);
    if (family == 0) {
      auto e = random_category(rng, CategoryBounds{4, max_morphisms});
      pi = random_functor(rng, e, base);
    } else if (n == 1) {
      auto a = random_category(rng, fiber_bounds);
      auto b = random_category(rng, fiber_bounds);
      pi = collage(random_profunctor(rng, a, b, 4)).projection;
    } else if (n == 2) {
      auto a = random_category(rng, fiber_bounds);
      auto b = random_category(rng, fiber_bounds);
      auto c = random_category(rng, fiber_bounds);
      pi = glue_over_triangle(collage(random_profunctor(rng, a, b, 3)), collage(random_profunctor(rng, b, c, 3)))
               .projection;
    } else {
      auto e = random_category(rng, CategoryBounds{4, max_morphisms});
      pi = random_functor(rng, e, base);
    }
    if (pi && pi->source().morphism_count() <= max_morphisms) return *pi;
  }
}

}  // namespace fibcat
