#include "fibcat/constructions.hpp"

#include <map>
#include <set>
#include <unordered_map>

#include "fibcat/enumerate.hpp"
#include "fibcat/ids.hpp"

namespace fibcat {

namespace {

// Reorders builder-indexed images into a functor on the built category.
Functor from_builder(const CategoryBuilder::Result& r, const FiniteCategory& target,
                     const std::vector<int>& obj_images, const std::vector<int>& mor_images) {
  std::vector<int> om(obj_images.size()), mm(mor_images.size());
  for (std::size_t i = 0; i < obj_images.size(); ++i) om[r.object_index[i]] = obj_images[i];
  for (std::size_t i = 0; i < mor_images.size(); ++i) mm[r.morphism_index[i]] = mor_images[i];
  return Functor(r.category, target, std::move(om), std::move(mm));
}

struct ProductIndex {
  std::vector<std::vector<int>> obj, mor;
};

ProductIndex product_index(const FiniteCategory& c, const FiniteCategory& d, const FiniteCategory& prod) {
  ProductIndex p;
  p.obj.assign(c.object_count(), std::vector<int>(d.object_count(), -1));
  p.mor.assign(c.morphism_count(), std::vector<int>(d.morphism_count(), -1));
  for (int i = 0; i < c.object_count(); ++i)
    for (int j = 0; j < d.object_count(); ++j)
      p.obj[i][j] = prod.object_index(tuple_id({c.object_id(i), d.object_id(j)}));
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < d.morphism_count(); ++g)
      p.mor[f][g] = prod.morphism_index(tuple_id({c.morphism_id(f), d.morphism_id(g)}));
  return p;
}

}  // namespace

FiniteCategory poset(const std::vector<std::string>& elements,
                     const std::vector<std::pair<std::string, std::string>>& relations) {
  const int n = static_cast<int>(elements.size());
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < n; ++i)
    if (!idx.emplace(elements[i], i).second) throw SchemaError("duplicate element '" + elements[i] + "'");
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) le[i][i] = 1;
  for (const auto& [a, b] : relations) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end()) throw SchemaError("relation on unknown element");
    le[ia->second][ib->second] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (le[i][k])
        for (int j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = 1;
  CategoryBuilder b;
  for (const auto& e : elements) b.add_object(e);
  std::vector<std::vector<int>> mor(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le[i][j]) mor[i][j] = b.add_morphism(elements[i] + "->" + elements[j], i, j);
  for (int i = 0; i < n; ++i) b.set_identity(i, mor[i][i]);
  return b.build([&](int g, int f) { return mor[b.src(f)][b.tgt(g)]; }).category;
}

FiniteCategory interval(int n) {
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 0; i <= n; ++i) {
    el.push_back(std::to_string(i));
    if (i > 0) rel.emplace_back(std::to_string(i - 1), std::to_string(i));
  }
  return poset(el, rel);
}

FiniteCategory sub_interval(const std::vector<int>& points) {
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t i = 0; i < points.size(); ++i) {
    el.push_back(std::to_string(points[i]));
    if (i > 0) {
      if (points[i - 1] >= points[i]) throw SchemaError("interval points must increase");
      rel.emplace_back(std::to_string(points[i - 1]), std::to_string(points[i]));
    }
  }
  return poset(el, rel);
}

Functor interval_inclusion(int n, const std::vector<int>& points) {
  std::map<std::string, std::string> om;
  for (int p : points) {
    if (p < 0 || p > n) throw SchemaError("interval point out of range");
    om[std::to_string(p)] = std::to_string(p);
  }
  return Functor::from_ids(sub_interval(points), interval(n), om);
}

FiniteCategory terminal() { return poset({"*"}, {}); }

FiniteCategory empty_category() { return FiniteCategory(); }

FiniteCategory discrete(const std::vector<std::string>& objects) { return poset(objects, {}); }

FiniteCategory monoid(const std::vector<std::string>& elements, const std::vector<std::vector<int>>& mult) {
  if (elements.empty()) throw SchemaError("a monoid needs a unit");
  CategoryBuilder b;
  b.add_object("*");
  for (const auto& e : elements) b.add_morphism(e, 0, 0);
  b.set_identity(0, 0);
  return b.build([&](int g, int f) { return mult.at(g).at(f); }).category;
}

FiniteCategory opposite(const FiniteCategory& c) {
  CategoryBuilder b;
  for (int x = 0; x < c.object_count(); ++x) b.add_object(c.object_id(x));
  for (int m = 0; m < c.morphism_count(); ++m) b.add_morphism(c.morphism_id(m), c.tgt(m), c.src(m));
  for (int x = 0; x < c.object_count(); ++x)
    if (c.identity(x) >= 0) b.set_identity(x, c.identity(x));
  return b.build([&](int g, int f) { return c.compose(f, g); }).category;
}

FiniteCategory product(const FiniteCategory& c, const FiniteCategory& d) {
  const int nd = d.object_count(), md = d.morphism_count();
  CategoryBuilder b;
  for (int i = 0; i < c.object_count(); ++i)
    for (int j = 0; j < nd; ++j) b.add_object(tuple_id({c.object_id(i), d.object_id(j)}));
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < md; ++g)
      b.add_morphism(tuple_id({c.morphism_id(f), d.morphism_id(g)}), c.src(f) * nd + d.src(g),
                     c.tgt(f) * nd + d.tgt(g));
  for (int i = 0; i < c.object_count(); ++i)
    for (int j = 0; j < nd; ++j)
      if (c.identity(i) >= 0 && d.identity(j) >= 0) b.set_identity(i * nd + j, c.identity(i) * md + d.identity(j));
  return b
      .build([&](int g, int f) {
        const int a = c.compose(g / md, f / md), e = d.compose(g % md, f % md);
        return a < 0 || e < 0 ? -1 : a * md + e;
      })
      .category;
}

std::pair<Functor, Functor> product_projections(const FiniteCategory& c, const FiniteCategory& d,
                                                const FiniteCategory& prod) {
  auto p = product_index(c, d, prod);
  std::vector<int> o1(prod.object_count()), o2(prod.object_count());
  std::vector<int> m1(prod.morphism_count()), m2(prod.morphism_count());
  for (int i = 0; i < c.object_count(); ++i)
    for (int j = 0; j < d.object_count(); ++j) {
      o1[p.obj[i][j]] = i;
      o2[p.obj[i][j]] = j;
    }
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < d.morphism_count(); ++g) {
      m1[p.mor[f][g]] = f;
      m2[p.mor[f][g]] = g;
    }
  return {Functor(prod, c, std::move(o1), std::move(m1)), Functor(prod, d, std::move(o2), std::move(m2))};
}

Functor product(const Functor& f, const Functor& g) {
  auto src = product(f.source(), g.source());
  auto tgt = product(f.target(), g.target());
  auto ps = product_index(f.source(), g.source(), src);
  auto pt = product_index(f.target(), g.target(), tgt);
  std::vector<int> om(src.object_count()), mm(src.morphism_count());
  for (int i = 0; i < f.source().object_count(); ++i)
    for (int j = 0; j < g.source().object_count(); ++j) om[ps.obj[i][j]] = pt.obj[f.object(i)][g.object(j)];
  for (int a = 0; a < f.source().morphism_count(); ++a)
    for (int b = 0; b < g.source().morphism_count(); ++b)
      mm[ps.mor[a][b]] = pt.mor[f.morphism(a)][g.morphism(b)];
  return Functor(src, tgt, std::move(om), std::move(mm));
}

FiniteCategory coproduct(const FiniteCategory& c, const FiniteCategory& d) {
  const int nc = c.object_count(), mc = c.morphism_count();
  CategoryBuilder b;
  for (int i = 0; i < nc; ++i) b.add_object(tuple_id({"0", c.object_id(i)}));
  for (int j = 0; j < d.object_count(); ++j) b.add_object(tuple_id({"1", d.object_id(j)}));
  for (int m = 0; m < mc; ++m) b.add_morphism(tuple_id({"0", c.morphism_id(m)}), c.src(m), c.tgt(m));
  for (int m = 0; m < d.morphism_count(); ++m)
    b.add_morphism(tuple_id({"1", d.morphism_id(m)}), nc + d.src(m), nc + d.tgt(m));
  for (int i = 0; i < nc; ++i)
    if (c.identity(i) >= 0) b.set_identity(i, c.identity(i));
  for (int j = 0; j < d.object_count(); ++j)
    if (d.identity(j) >= 0) b.set_identity(nc + j, mc + d.identity(j));
  return b
      .build([&](int g, int f) {
        if (g < mc && f < mc) return c.compose(g, f);
        if (g >= mc && f >= mc) {
          const int r = d.compose(g - mc, f - mc);
          return r < 0 ? -1 : mc + r;
        }
        return -1;
      })
      .category;
}

Pullback pullback(const Functor& f, const Functor& g) {
  if (!(f.target() == g.target())) throw SchemaError("pullback of functors with different targets");
  const auto& a = f.source();
  const auto& bb = g.source();
  CategoryBuilder b;
  std::vector<int> o1, o2, m1, m2;
  std::map<std::pair<int, int>, int> obj, mor;
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < bb.object_count(); ++y)
      if (f.object(x) == g.object(y)) {
        obj[{x, y}] = b.add_object(tuple_id({a.object_id(x), bb.object_id(y)}));
        o1.push_back(x);
        o2.push_back(y);
      }
  for (int u = 0; u < a.morphism_count(); ++u)
    for (int v = 0; v < bb.morphism_count(); ++v)
      if (f.morphism(u) == g.morphism(v)) {
        mor[{u, v}] = b.add_morphism(tuple_id({a.morphism_id(u), bb.morphism_id(v)}),
                                     obj.at({a.src(u), bb.src(v)}), obj.at({a.tgt(u), bb.tgt(v)}));
        m1.push_back(u);
        m2.push_back(v);
      }
  for (const auto& [xy, i] : obj) {
    const int ia = a.identity(xy.first), ib = bb.identity(xy.second);
    if (ia >= 0 && ib >= 0) b.set_identity(i, mor.at({ia, ib}));
  }
  auto r = b.build([&](int gg, int ff) {
    auto it = mor.find({a.compose(m1[gg], m1[ff]), bb.compose(m2[gg], m2[ff])});
    return it == mor.end() ? -1 : it->second;
  });
  return {r.category, from_builder(r, a, o1, m1), from_builder(r, bb, o2, m2)};
}

Subcategory subcategory(const FiniteCategory& c, const std::vector<int>& objects,
                        const std::vector<int>& morphisms) {
  CategoryBuilder b;
  std::vector<int> obj_pos(c.object_count(), -1), mor_pos(c.morphism_count(), -1);
  std::vector<int> om, mm;
  for (int x : objects) {
    if (obj_pos[x] >= 0) continue;
    obj_pos[x] = b.add_object(c.object_id(x));
    om.push_back(x);
  }
  for (int m : morphisms) {
    if (mor_pos[m] >= 0) continue;
    if (obj_pos[c.src(m)] < 0 || obj_pos[c.tgt(m)] < 0)
      throw SchemaError("subcategory morphism '" + c.morphism_id(m) + "' leaves the object set");
    mor_pos[m] = b.add_morphism(c.morphism_id(m), obj_pos[c.src(m)], obj_pos[c.tgt(m)]);
    mm.push_back(m);
  }
  for (int x : om) {
    const int id = c.identity(x);
    if (id < 0 || mor_pos[id] < 0)
      throw SchemaError("subcategory lacks the identity of '" + c.object_id(x) + "'");
    b.set_identity(obj_pos[x], mor_pos[id]);
  }
  auto r = b.build([&](int g, int f) {
    const int gf = c.compose(mm[g], mm[f]);
    if (gf < 0 || mor_pos[gf] < 0)
      throw SchemaError("subcategory is not closed under composition at '" + c.morphism_id(mm[g]) + "' after '" +
                        c.morphism_id(mm[f]) + "'");
    return mor_pos[gf];
  });
  return {r.category, from_builder(r, c, om, mm)};
}

Subcategory full_subcategory(const FiniteCategory& c, const std::vector<int>& objects) {
  std::vector<char> in(c.object_count(), 0);
  for (int x : objects) in[x] = 1;
  std::vector<int> mors;
  for (int m = 0; m < c.morphism_count(); ++m)
    if (in[c.src(m)] && in[c.tgt(m)]) mors.push_back(m);
  return subcategory(c, objects, mors);
}

Subcategory fiber(const Functor& pi, int x) {
  const auto& k = pi.target();
  return preimage(pi, {x}, {k.identity(x)});
}

Subcategory preimage(const Functor& pi, const std::vector<int>& base_objects,
                     const std::vector<int>& base_morphisms) {
  const auto& e = pi.source();
  std::set<int> bo(base_objects.begin(), base_objects.end()), bm(base_morphisms.begin(), base_morphisms.end());
  std::vector<int> objs, mors;
  for (int x = 0; x < e.object_count(); ++x)
    if (bo.count(pi.object(x))) objs.push_back(x);
  for (int m = 0; m < e.morphism_count(); ++m)
    if (bm.count(pi.morphism(m)) && bo.count(pi.object(e.src(m))) && bo.count(pi.object(e.tgt(m))))
      mors.push_back(m);
  return subcategory(e, objs, mors);
}

Comma comma(const Functor& f, const Functor& g) {
  if (!(f.target() == g.target())) throw SchemaError("comma of functors with different targets");
  const auto& a = f.source();
  const auto& bb = g.source();
  const auto& c = f.target();
  struct Obj {
    int a, phi, b;
  };
  std::vector<Obj> objs;
  std::map<std::tuple<int, int, int>, int> obj_lookup;
  CategoryBuilder b;
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < bb.object_count(); ++y)
      for (int phi : c.hom(f.object(x), g.object(y))) {
        obj_lookup[{x, phi, y}] = b.add_object(tuple_id({a.object_id(x), c.morphism_id(phi), bb.object_id(y)}));
        objs.push_back({x, phi, y});
      }
  struct Mor {
    int alpha, beta;
  };
  std::vector<Mor> mors;
  std::map<std::tuple<int, int, int, int>, int> mor_lookup;  // (src, alpha, beta, tgt)
  for (int s = 0; s < static_cast<int>(objs.size()); ++s)
    for (int t = 0; t < static_cast<int>(objs.size()); ++t)
      for (int al : a.hom(objs[s].a, objs[t].a))
        for (int be : bb.hom(objs[s].b, objs[t].b)) {
          if (c.compose(g.morphism(be), objs[s].phi) != c.compose(objs[t].phi, f.morphism(al))) continue;
          const auto& os = objs[s];
          const auto& ot = objs[t];
          const int i = b.add_morphism(
              tuple_id({tuple_id({a.object_id(os.a), c.morphism_id(os.phi), bb.object_id(os.b)}), a.morphism_id(al),
                        bb.morphism_id(be),
                        tuple_id({a.object_id(ot.a), c.morphism_id(ot.phi), bb.object_id(ot.b)})}),
              s, t);
          mor_lookup[{s, al, be, t}] = i;
          mors.push_back({al, be});
          if (s == t && al == a.identity(os.a) && be == bb.identity(os.b)) b.set_identity(s, i);
        }
  std::vector<int> oa, ob, ma, mb;
  for (const auto& o : objs) {
    oa.push_back(o.a);
    ob.push_back(o.b);
  }
  for (const auto& m : mors) {
    ma.push_back(m.alpha);
    mb.push_back(m.beta);
  }
  auto r = b.build([&](int gg, int ff) {
    auto it = mor_lookup.find({b.src(ff), a.compose(ma[gg], ma[ff]), bb.compose(mb[gg], mb[ff]), b.tgt(gg)});
    return it == mor_lookup.end() ? -1 : it->second;
  });
  return {r.category, from_builder(r, a, oa, ma), from_builder(r, bb, ob, mb)};
}

Slice slice(const FiniteCategory& c, int x) {
  auto in = c.in(x);
  std::vector<int> objs(in.begin(), in.end());
  CategoryBuilder b;
  std::unordered_map<int, int> pos;
  for (int u : objs) pos[u] = b.add_object(c.morphism_id(u));
  std::vector<int> om, mm;
  for (int u : objs) om.push_back(c.src(u));
  std::map<std::tuple<int, int, int>, int> lookup;
  for (int u : objs)
    for (int v : objs)
      for (int h : c.hom(c.src(u), c.src(v))) {
        if (c.compose(v, h) != u) continue;
        const int i = b.add_morphism(tuple_id({c.morphism_id(u), c.morphism_id(h), c.morphism_id(v)}), pos[u], pos[v]);
        lookup[{u, h, v}] = i;
        mm.push_back(h);
        if (u == v && h == c.identity(c.src(u))) b.set_identity(pos[u], i);
      }
  auto r = b.build([&](int g, int f) {
    auto it = lookup.find({objs[b.src(f)], c.compose(mm[g], mm[f]), objs[b.tgt(g)]});
    return it == lookup.end() ? -1 : it->second;
  });
  return {r.category, from_builder(r, c, om, mm)};
}

Slice coslice(const FiniteCategory& c, int x) {
  auto out = c.out(x);
  std::vector<int> objs(out.begin(), out.end());
  CategoryBuilder b;
  std::unordered_map<int, int> pos;
  for (int u : objs) pos[u] = b.add_object(c.morphism_id(u));
  std::vector<int> om, mm;
  for (int u : objs) om.push_back(c.tgt(u));
  std::map<std::tuple<int, int, int>, int> lookup;
  for (int u : objs)
    for (int v : objs)
      for (int h : c.hom(c.tgt(u), c.tgt(v))) {
        if (c.compose(h, u) != v) continue;
        const int i = b.add_morphism(tuple_id({c.morphism_id(u), c.morphism_id(h), c.morphism_id(v)}), pos[u], pos[v]);
        lookup[{u, h, v}] = i;
        mm.push_back(h);
        if (u == v && h == c.identity(c.tgt(u))) b.set_identity(pos[u], i);
      }
  auto r = b.build([&](int g, int f) {
    auto it = lookup.find({objs[b.src(f)], c.compose(mm[g], mm[f]), objs[b.tgt(g)]});
    return it == lookup.end() ? -1 : it->second;
  });
  return {r.category, from_builder(r, c, om, mm)};
}

ArrowCategory arrow_category(const FiniteCategory& c) {
  CategoryBuilder b;
  const int m = c.morphism_count();
  for (int f = 0; f < m; ++f) b.add_object(c.morphism_id(f));
  std::vector<int> os, ot, ms, mt;
  for (int f = 0; f < m; ++f) {
    os.push_back(c.src(f));
    ot.push_back(c.tgt(f));
  }
  std::map<std::tuple<int, int, int, int>, int> lookup;
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g)
      for (int a : c.hom(c.src(f), c.src(g)))
        for (int bb : c.hom(c.tgt(f), c.tgt(g))) {
          if (c.compose(bb, f) != c.compose(g, a)) continue;
          const int i = b.add_morphism(
              tuple_id({c.morphism_id(f), c.morphism_id(a), c.morphism_id(bb), c.morphism_id(g)}), f, g);
          lookup[{f, a, bb, g}] = i;
          ms.push_back(a);
          mt.push_back(bb);
          if (f == g && a == c.identity(c.src(f)) && bb == c.identity(c.tgt(f))) b.set_identity(f, i);
        }
  auto r = b.build([&](int g, int f) {
    auto it = lookup.find({b.src(f), c.compose(ms[g], ms[f]), c.compose(mt[g], mt[f]), b.tgt(g)});
    return it == lookup.end() ? -1 : it->second;
  });
  return {r.category, from_builder(r, c, os, ms), from_builder(r, c, ot, mt)};
}

TwistedArrows twisted_arrows(const FiniteCategory& c) {
  CategoryBuilder b;
  const int m = c.morphism_count();
  for (int f = 0; f < m; ++f) b.add_object(c.morphism_id(f));
  std::vector<int> ma, mb;
  std::map<std::tuple<int, int, int>, int> lookup;
  for (int f = 0; f < m; ++f)
    for (int a : c.in(c.src(f)))
      for (int bb : c.out(c.tgt(f))) {
        const int g = c.compose(bb, c.compose(f, a));
        if (g < 0) continue;
        const int i = b.add_morphism(tuple_id({c.morphism_id(f), c.morphism_id(a), c.morphism_id(bb)}), f, g);
        lookup[{f, a, bb}] = i;
        ma.push_back(a);
        mb.push_back(bb);
        if (a == c.identity(c.src(f)) && bb == c.identity(c.tgt(f))) b.set_identity(f, i);
      }
  auto r = b.build([&](int g, int f) {
    auto it = lookup.find({b.src(f), c.compose(ma[f], ma[g]), c.compose(mb[g], mb[f])});
    return it == lookup.end() ? -1 : it->second;
  });
  auto cop = opposite(c);
  auto prod = product(cop, c);
  auto p = product_index(cop, c, prod);
  std::vector<int> om(r.category.object_count()), mm(r.category.morphism_count());
  for (int f = 0; f < m; ++f) om[r.object_index[f]] = p.obj[c.src(f)][c.tgt(f)];
  for (std::size_t i = 0; i < ma.size(); ++i) mm[r.morphism_index[i]] = p.mor[ma[i]][mb[i]];
  return {r.category, Functor(r.category, prod, std::move(om), std::move(mm))};
}

FiniteCategory relabel(const FiniteCategory& c, const std::function<std::string(const std::string&)>& object_id,
                       const std::function<std::string(const std::string&)>& morphism_id) {
  CategoryBuilder b;
  for (int x = 0; x < c.object_count(); ++x) b.add_object(object_id(c.object_id(x)));
  for (int m = 0; m < c.morphism_count(); ++m) b.add_morphism(morphism_id(c.morphism_id(m)), c.src(m), c.tgt(m));
  for (int x = 0; x < c.object_count(); ++x)
    if (c.identity(x) >= 0) b.set_identity(x, c.identity(x));
  return b.build([&](int g, int f) { return c.compose(g, f); }).category;
}

std::optional<Functor> find_isomorphism(const FiniteCategory& c, const FiniteCategory& d) {
  if (c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count()) return std::nullopt;
  std::optional<Functor> found;
  FunctorSearch s;
  s.injective = true;
  for_each_functor(c, d, s, [&](const Functor& f) {
    found = f;
    return false;
  });
  return found;
}

std::optional<Functor> find_isomorphism_over(const Functor& p, const Functor& q) {
  const auto& c = p.source();
  const auto& d = q.source();
  if (c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count()) return std::nullopt;
  if (!(p.target() == q.target())) return std::nullopt;
  std::optional<Functor> found;
  FunctorSearch s;
  s.source_over = &p;
  s.target_over = &q;
  s.injective = true;
  for_each_functor(c, d, s, [&](const Functor& f) {
    found = f;
    return false;
  });
  return found;
}

}  // namespace fibcat
