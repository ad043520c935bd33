#include "fibcat/correspondence.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "fibcat/catalog.hpp"
#include "fibcat/fibration.hpp"
#include "fibcat/ids.hpp"
#include "fibcat/union_find.hpp"

namespace fibcat {

namespace {

// Preimages under an injective functor, -1 off the image.
struct Inverse {
  std::vector<int> obj, mor;
};

Inverse invert(const Functor& f) {
  Inverse inv;
  inv.obj.assign(f.target().object_count(), -1);
  inv.mor.assign(f.target().morphism_count(), -1);
  for (int x = 0; x < f.source().object_count(); ++x) inv.obj[f.object(x)] = x;
  for (int m = 0; m < f.source().morphism_count(); ++m) inv.mor[f.morphism(m)] = m;
  return inv;
}

Functor interval_map(const FiniteCategory& source, const FiniteCategory& target, const std::vector<int>& level) {
  std::vector<int> objects(source.object_count()), morphisms(source.morphism_count());
  for (int x = 0; x < source.object_count(); ++x) objects[x] = level[x];
  for (int m = 0; m < source.morphism_count(); ++m)
    morphisms[m] = target.hom(level[source.src(m)], level[source.tgt(m)]).at(0);
  return Functor(source, target, std::move(objects), std::move(morphisms));
}

int position_of(const std::vector<int>& v, int x) {
  auto it = std::find(v.begin(), v.end(), x);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

Witness corr_witness(std::string kind, std::vector<std::string> ids = {}) {
  return Witness{std::move(kind), std::move(ids), {}};
}

}  // namespace

ValidationReport validate_correspondence(const Correspondence& c) {
  ValidationReport rep;
  auto add = [&](std::string kind, std::vector<std::string> ids = {}) {
    rep.violations.push_back(corr_witness(std::move(kind), std::move(ids)));
  };
  if (!(c.projection.source() == c.total) || !(c.projection.target() == interval(1))) {
    add("projection_shape");
    return rep;
  }
  if (!validate_functor(c.projection).ok()) add("projection_not_functor");
  const Functor* incs[2] = {&c.include_s, &c.include_t};
  for (int side = 0; side < 2; ++side) {
    const Functor& inc = *incs[side];
    const char* name = side == 0 ? "source_inclusion" : "target_inclusion";
    if (!(inc.target() == c.total)) {
      add(std::string(name) + "_shape");
      continue;
    }
    if (!validate_functor(inc).ok()) {
      add(std::string(name) + "_not_functor");
      continue;
    }
    std::vector<int> hit_obj(c.total.object_count(), 0), hit_mor(c.total.morphism_count(), 0);
    for (int x = 0; x < inc.source().object_count(); ++x) {
      const int y = inc.object(x);
      if (c.projection.object(y) != side) add(std::string(name) + "_wrong_fiber", {inc.source().object_id(x)});
      if (hit_obj[y]++) add(std::string(name) + "_not_injective", {c.total.object_id(y)});
    }
    for (int m = 0; m < inc.source().morphism_count(); ++m)
      if (hit_mor[inc.morphism(m)]++) add(std::string(name) + "_not_injective", {c.total.morphism_id(inc.morphism(m))});
    for (int y = 0; y < c.total.object_count(); ++y)
      if (c.projection.object(y) == side && !hit_obj[y]) add(std::string(name) + "_misses", {c.total.object_id(y)});
    for (int m = 0; m < c.total.morphism_count(); ++m)
      if (c.projection.object(c.total.src(m)) == side && c.projection.object(c.total.tgt(m)) == side && !hit_mor[m])
        add(std::string(name) + "_misses", {c.total.morphism_id(m)});
  }
  return rep;
}

void require_valid(const Correspondence& c, std::string_view what) {
  require_valid(c.total, what);
  auto rep = validate_correspondence(c);
  if (!rep.ok()) {
    std::string msg = std::string(what) + " is not a correspondence: " + rep.violations.front().kind;
    for (const auto& id : rep.violations.front().ids) msg += " " + id;
    throw ValidationError(msg, rep.violations);
  }
}

Correspondence correspondence_from_projection(const Functor& pi) {
  if (!(pi.target() == interval(1)))
    throw PreconditionError("a correspondence is a functor to [1]", corr_witness("projection_shape"));
  auto s = fiber(pi, 0);
  auto t = fiber(pi, 1);
  return Correspondence{pi.source(), pi, s.inclusion, t.inclusion};
}

Correspondence identity_correspondence(const FiniteCategory& c) {
  const auto one = interval(1);
  const auto total = product(c, one);
  auto [to_c, to_one] = product_projections(c, one, total);
  auto include = [&](int level) {
    std::vector<int> objects, morphisms;
    for (int x = 0; x < c.object_count(); ++x)
      objects.push_back(total.object_index(tuple_id({c.object_id(x), one.object_id(level)})));
    for (int m = 0; m < c.morphism_count(); ++m)
      morphisms.push_back(total.morphism_index(tuple_id({c.morphism_id(m), one.morphism_id(one.identity(level))})));
    return Functor(c, total, std::move(objects), std::move(morphisms));
  };
  return Correspondence{total, to_one, include(0), include(1)};
}

Correspondence collage(const Profunctor& p) {
  const auto& a = p.source;
  const auto& b = p.target;
  const int na = a.object_count(), nb = b.object_count();
  CategoryBuilder builder;
  for (int x = 0; x < na; ++x) builder.add_object(tuple_id({"0", a.object_id(x)}));
  for (int y = 0; y < nb; ++y) builder.add_object(tuple_id({"1", b.object_id(y)}));
  // Builder morphisms: A, then B, then the elements.
  const int ma = a.morphism_count(), mb = b.morphism_count();
  for (int m = 0; m < ma; ++m) builder.add_morphism(tuple_id({"0", a.morphism_id(m)}), a.src(m), a.tgt(m));
  for (int m = 0; m < mb; ++m) builder.add_morphism(tuple_id({"1", b.morphism_id(m)}), na + b.src(m), na + b.tgt(m));
  std::vector<int> offset(na * nb + 1, ma + mb);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      offset[x * nb + y + 1] = offset[x * nb + y] + p.size(x, y);
      for (const auto& e : p.at(x, y)) builder.add_morphism(tuple_id({a.object_id(x), e, b.object_id(y)}), x, na + y);
    }
  for (int x = 0; x < na; ++x) builder.set_identity(x, a.identity(x));
  for (int y = 0; y < nb; ++y) builder.set_identity(na + y, ma + b.identity(y));
  auto cross = [&](int m, int& x, int& y, int& e) {
    const int k = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), m) - offset.begin()) - 1;
    x = k / nb;
    y = k % nb;
    e = m - offset[k];
  };
  auto built = builder.build([&](int g, int f) {
    if (g < ma && f < ma) return a.compose(g, f);
    if (g >= ma && g < ma + mb && f >= ma && f < ma + mb) return ma + b.compose(g - ma, f - ma);
    if (f < ma && g >= ma + mb) {
      int x, y, e;
      cross(g, x, y, e);
      return offset[a.src(f) * nb + y] + p.act_left(f, y, e);
    }
    if (f >= ma + mb && g >= ma && g < ma + mb) {
      int x, y, e;
      cross(f, x, y, e);
      return offset[x * nb + b.tgt(g - ma)] + p.act_right(x, g - ma, e);
    }
    return -1;
  });
  const auto& total = built.category;
  std::vector<int> level(total.object_count());
  for (int x = 0; x < na + nb; ++x) level[built.object_index[x]] = x < na ? 0 : 1;
  auto include = [&](const FiniteCategory& c, int obj_base, int mor_base) {
    std::vector<int> objects, morphisms;
    for (int x = 0; x < c.object_count(); ++x) objects.push_back(built.object_index[obj_base + x]);
    for (int m = 0; m < c.morphism_count(); ++m) morphisms.push_back(built.morphism_index[mor_base + m]);
    return Functor(c, total, std::move(objects), std::move(morphisms));
  };
  return Correspondence{total, interval_map(total, interval(1), level), include(a, 0, 0), include(b, na, ma)};
}

Profunctor corr_to_profunctor(const Correspondence& c) {
  const auto& e = c.total;
  const auto& a = c.source();
  const auto& b = c.target();
  const int na = a.object_count(), nb = b.object_count();
  std::vector<std::vector<int>> homs(na * nb);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) homs[x * nb + y] = e.hom(c.include_s.object(x), c.include_t.object(y));
  return make_profunctor(
      a, b,
      [&](int x, int y) {
        std::vector<std::string> ids;
        for (int h : homs[x * nb + y]) ids.push_back(e.morphism_id(h));
        return ids;
      },
      [&](int al, int y, int k) {
        const int h = homs[a.tgt(al) * nb + y][k];
        return position_of(homs[a.src(al) * nb + y], e.compose(h, c.include_s.morphism(al)));
      },
      [&](int x, int be, int k) {
        const int h = homs[x * nb + b.src(be)][k];
        return position_of(homs[x * nb + b.tgt(be)], e.compose(c.include_t.morphism(be), h));
      });
}

Correspondence opposite(const Correspondence& c) {
  const auto total = opposite(c.total);
  std::vector<int> level(total.object_count());
  for (int x = 0; x < total.object_count(); ++x) level[x] = 1 - c.projection.object(x);
  auto flip = [&](const Functor& inc) {
    const auto src = opposite(inc.source());
    return Functor(src, total, {inc.object_map().begin(), inc.object_map().end()},
                   {inc.morphism_map().begin(), inc.morphism_map().end()});
  };
  return Correspondence{total, interval_map(total, interval(1), level), flip(c.include_t), flip(c.include_s)};
}

Correspondence product_corr(const Correspondence& c, const Correspondence& d) {
  auto pb = pullback(c.projection, d.projection);
  const auto& total = pb.category;
  auto include = [&](const Functor& f, const Functor& g) {
    const auto src = product(f.source(), g.source());
    std::vector<int> objects(src.object_count(), -1), morphisms(src.morphism_count(), -1);
    for (int x = 0; x < f.source().object_count(); ++x)
      for (int y = 0; y < g.source().object_count(); ++y)
        objects[src.object_index(tuple_id({f.source().object_id(x), g.source().object_id(y)}))] = total.object_index(
            tuple_id({f.target().object_id(f.object(x)), g.target().object_id(g.object(y))}));
    for (int m = 0; m < f.source().morphism_count(); ++m)
      for (int n = 0; n < g.source().morphism_count(); ++n)
        morphisms[src.morphism_index(tuple_id({f.source().morphism_id(m), g.source().morphism_id(n)}))] =
            total.morphism_index(
                tuple_id({f.target().morphism_id(f.morphism(m)), g.target().morphism_id(g.morphism(n))}));
    return Functor(src, total, std::move(objects), std::move(morphisms));
  };
  return Correspondence{total, compose(c.projection, pb.first), include(c.include_s, d.include_s),
                        include(c.include_t, d.include_t)};
}

// ---- two-sided discrete fibrations ----------------------------------------

namespace {

struct Lifts {
  std::vector<int> oa, ob;  // object → A, B object
  std::vector<int> ma, mb;  // morphism → A, B morphism
  std::map<std::pair<int, int>, int> blift;  // (x, β) → the morphism out of x over (id, β)
  std::map<std::pair<int, int>, int> alift;  // (x, α) → the morphism into x over (α, id)
  std::vector<std::vector<int>> fibers;      // [a * |B| + b]: objects over (a, b), ascending
};

Verdict compute_lifts(const Bifibration& x, Lifts& out) {
  const auto& a = x.source;
  const auto& b = x.target;
  const auto& t = x.total;
  const auto prod = product(a, b);
  if (!(x.projection.source() == t) || !(x.projection.target() == prod))
    return Verdict::no(corr_witness("projection_shape"));
  if (!validate_functor(x.projection).ok()) return Verdict::no(corr_witness("projection_not_functor"));
  auto [pa, pb] = product_projections(a, b, prod);
  const int nb = b.object_count();
  out = Lifts{};
  out.fibers.resize(a.object_count() * nb);
  for (int o = 0; o < t.object_count(); ++o) {
    out.oa.push_back(pa.object(x.projection.object(o)));
    out.ob.push_back(pb.object(x.projection.object(o)));
    out.fibers[out.oa[o] * nb + out.ob[o]].push_back(o);
  }
  for (int m = 0; m < t.morphism_count(); ++m) {
    out.ma.push_back(pa.morphism(x.projection.morphism(m)));
    out.mb.push_back(pb.morphism(x.projection.morphism(m)));
  }
  for (int o = 0; o < t.object_count(); ++o) {
    const int ida = a.identity(out.oa[o]), idb = b.identity(out.ob[o]);
    for (int be : b.out(out.ob[o])) {
      int found = -1, count = 0;
      for (int m : t.out(o))
        if (out.ma[m] == ida && out.mb[m] == be) found = m, ++count;
      if (count != 1)
        return Verdict::no(corr_witness(count == 0 ? "missing_target_lift" : "ambiguous_target_lift",
                                        {t.object_id(o), b.morphism_id(be)}));
      out.blift[{o, be}] = found;
    }
    for (int al : a.in(out.oa[o])) {
      int found = -1, count = 0;
      for (int m : t.in(o))
        if (out.ma[m] == al && out.mb[m] == idb) found = m, ++count;
      if (count != 1)
        return Verdict::no(corr_witness(count == 0 ? "missing_source_lift" : "ambiguous_source_lift",
                                        {t.object_id(o), a.morphism_id(al)}));
      out.alift[{o, al}] = found;
    }
  }
  for (int m = 0; m < t.morphism_count(); ++m) {
    const int r = out.blift.at({t.src(m), out.mb[m]});
    const int l = out.alift.at({t.tgt(m), out.ma[m]});
    if (t.tgt(r) != t.src(l) || t.compose(l, r) != m) return Verdict::no(corr_witness("not_factored", {t.morphism_id(m)}));
  }
  return Verdict::yes();
}

Lifts require_lifts(const Bifibration& x, std::string_view what) {
  Lifts lifts;
  auto v = compute_lifts(x, lifts);
  if (!v) {
    std::string msg = std::string(what) + " is not a two-sided discrete fibration: " + v.witness->kind;
    for (const auto& id : v.witness->ids) msg += " " + id;
    throw ValidationError(msg, {*v.witness});
  }
  return lifts;
}

}  // namespace

Verdict check_two_sided_discrete(const Bifibration& x) {
  Lifts lifts;
  return compute_lifts(x, lifts);
}

void require_two_sided_discrete(const Bifibration& x, std::string_view what) { require_lifts(x, what); }

Bifibration corr_to_bifib(const Correspondence& c) {
  const auto& e = c.total;
  const auto& a = c.source();
  const auto& b = c.target();
  const auto prod = product(a, b);
  CategoryBuilder builder;
  std::vector<int> cross;  // builder object → morphism of E
  std::vector<int> oa, ob;
  std::map<int, int> object_of;
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < b.object_count(); ++y)
      for (int h : e.hom(c.include_s.object(x), c.include_t.object(y))) {
        object_of[h] = builder.add_object(e.morphism_id(h));
        cross.push_back(h);
        oa.push_back(x);
        ob.push_back(y);
      }
  struct Square {
    int s, al, be, t;
  };
  std::vector<Square> squares;
  std::map<std::array<int, 4>, int> lookup;
  for (int s = 0; s < static_cast<int>(cross.size()); ++s)
    for (int al : a.out(oa[s]))
      for (int be : b.out(ob[s])) {
        const int lhs = e.compose(c.include_t.morphism(be), cross[s]);
        for (int h2 : e.hom(c.include_s.object(a.tgt(al)), c.include_t.object(b.tgt(be)))) {
          if (e.compose(h2, c.include_s.morphism(al)) != lhs) continue;
          const int t = object_of.at(h2);
          const int m = builder.add_morphism(
              tuple_id({e.morphism_id(cross[s]), a.morphism_id(al), b.morphism_id(be), e.morphism_id(h2)}), s, t);
          squares.push_back({s, al, be, t});
          lookup[{s, al, be, t}] = m;
          if (s == t && al == a.identity(oa[s]) && be == b.identity(ob[s])) builder.set_identity(s, m);
        }
      }
  auto built = builder.build([&](int g, int f) {
    const auto& sf = squares[f];
    const auto& sg = squares[g];
    auto it = lookup.find({sf.s, a.compose(sg.al, sf.al), b.compose(sg.be, sf.be), sg.t});
    return it == lookup.end() ? -1 : it->second;
  });
  std::vector<int> objects(built.category.object_count()), morphisms(built.category.morphism_count());
  for (int s = 0; s < static_cast<int>(cross.size()); ++s)
    objects[built.object_index[s]] = prod.object_index(tuple_id({a.object_id(oa[s]), b.object_id(ob[s])}));
  for (int m = 0; m < static_cast<int>(squares.size()); ++m)
    morphisms[built.morphism_index[m]] =
        prod.morphism_index(tuple_id({a.morphism_id(squares[m].al), b.morphism_id(squares[m].be)}));
  return Bifibration{built.category, Functor(built.category, prod, std::move(objects), std::move(morphisms)), a, b};
}

Profunctor bifib_to_profunctor(const Bifibration& x) {
  const auto lifts = require_lifts(x, "bifibration");
  const auto& t = x.total;
  const int nb = x.target.object_count();
  std::vector<int> pos(t.object_count());
  for (const auto& f : lifts.fibers)
    for (std::size_t i = 0; i < f.size(); ++i) pos[f[i]] = static_cast<int>(i);
  return make_profunctor(
      x.source, x.target,
      [&](int a, int b) {
        std::vector<std::string> ids;
        for (int o : lifts.fibers[a * nb + b]) ids.push_back(t.object_id(o));
        return ids;
      },
      [&](int al, int b, int e) {
        const int o = lifts.fibers[x.source.tgt(al) * nb + b][e];
        return pos[t.src(lifts.alift.at({o, al}))];
      },
      [&](int a, int be, int e) {
        const int o = lifts.fibers[a * nb + x.target.src(be)][e];
        return pos[t.tgt(lifts.blift.at({o, be}))];
      });
}

Bifibration profunctor_to_bifib(const Profunctor& p) {
  const auto& a = p.source;
  const auto& b = p.target;
  const int nb = b.object_count();
  const auto prod = product(a, b);
  CategoryBuilder builder;
  struct Obj {
    int a, b, e;
  };
  std::vector<Obj> objs;
  std::vector<int> first(a.object_count() * nb);
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < nb; ++y) {
      first[x * nb + y] = static_cast<int>(objs.size());
      for (int e = 0; e < p.size(x, y); ++e) {
        builder.add_object(tuple_id({a.object_id(x), p.at(x, y)[e], b.object_id(y)}));
        objs.push_back({x, y, e});
      }
    }
  struct Mor {
    int s, al, be, t;
  };
  std::vector<Mor> mors;
  std::map<std::array<int, 4>, int> lookup;
  for (int s = 0; s < static_cast<int>(objs.size()); ++s) {
    const auto [x, y, e] = objs[s];
    for (int al : a.out(x))
      for (int be : b.out(y)) {
        const int x2 = a.tgt(al), y2 = b.tgt(be);
        const int pushed = p.act_right(x, be, e);
        for (int e2 = 0; e2 < p.size(x2, y2); ++e2) {
          if (p.act_left(al, y2, e2) != pushed) continue;
          const int t = first[x2 * nb + y2] + e2;
          const auto id = tuple_id({tuple_id({a.object_id(x), p.at(x, y)[e], b.object_id(y)}), a.morphism_id(al),
                                    b.morphism_id(be), tuple_id({a.object_id(x2), p.at(x2, y2)[e2], b.object_id(y2)})});
          const int m = builder.add_morphism(id, s, t);
          mors.push_back({s, al, be, t});
          lookup[{s, al, be, t}] = m;
          if (s == t && al == a.identity(x) && be == b.identity(y)) builder.set_identity(s, m);
        }
      }
  }
  auto built = builder.build([&](int g, int f) {
    auto it = lookup.find({mors[f].s, a.compose(mors[g].al, mors[f].al), b.compose(mors[g].be, mors[f].be), mors[g].t});
    return it == lookup.end() ? -1 : it->second;
  });
  std::vector<int> objects(built.category.object_count()), morphisms(built.category.morphism_count());
  for (int s = 0; s < static_cast<int>(objs.size()); ++s)
    objects[built.object_index[s]] = prod.object_index(tuple_id({a.object_id(objs[s].a), b.object_id(objs[s].b)}));
  for (int m = 0; m < static_cast<int>(mors.size()); ++m)
    morphisms[built.morphism_index[m]] =
        prod.morphism_index(tuple_id({a.morphism_id(mors[m].al), b.morphism_id(mors[m].be)}));
  return Bifibration{built.category, Functor(built.category, prod, std::move(objects), std::move(morphisms)), a, b};
}

Correspondence bifib_to_corr(const Bifibration& x) { return collage(bifib_to_profunctor(x)); }

// ---- comparisons ----------------------------------------------------------

std::optional<Functor> correspondence_iso(const Correspondence& c, const Correspondence& d, const ProfunctorIso& iso) {
  if (!(c.source() == d.source()) || !(c.target() == d.target())) return std::nullopt;
  const auto pc = corr_to_profunctor(c);
  const auto pd = corr_to_profunctor(d);
  if (!check_profunctor_iso(pc, pd, iso)) return std::nullopt;
  const auto is = invert(c.include_s);
  const auto it = invert(c.include_t);
  const auto& e = c.total;
  const int nb = c.target().object_count();
  std::vector<int> objects(e.object_count(), -1), morphisms(e.morphism_count(), -1);
  for (int x = 0; x < e.object_count(); ++x)
    objects[x] = is.obj[x] >= 0 ? d.include_s.object(is.obj[x]) : d.include_t.object(it.obj[x]);
  for (int m = 0; m < e.morphism_count(); ++m) {
    if (is.mor[m] >= 0) {
      morphisms[m] = d.include_s.morphism(is.mor[m]);
    } else if (it.mor[m] >= 0) {
      morphisms[m] = d.include_t.morphism(it.mor[m]);
    } else {
      const int x = is.obj[e.src(m)], y = it.obj[e.tgt(m)];
      if (x < 0 || y < 0) return std::nullopt;
      const int k = iso.components[x * nb + y][pc.element_index(x, y, e.morphism_id(m))];
      morphisms[m] = d.total.morphism_index(pd.at(x, y)[k]);
    }
  }
  Functor f(e, d.total, std::move(objects), std::move(morphisms));
  if (!validate_functor(f).ok() || !is_isomorphism(f)) return std::nullopt;
  if (!(compose(d.projection, f) == c.projection)) return std::nullopt;
  if (!(compose(f, c.include_s) == d.include_s) || !(compose(f, c.include_t) == d.include_t)) return std::nullopt;
  return f;
}

std::optional<Functor> bifibration_iso(const Bifibration& x, const Bifibration& y, const ProfunctorIso& iso) {
  if (!(x.source == y.source) || !(x.target == y.target)) return std::nullopt;
  const auto px = bifib_to_profunctor(x);
  const auto py = bifib_to_profunctor(y);
  if (!check_profunctor_iso(px, py, iso)) return std::nullopt;
  const auto lx = require_lifts(x, "bifibration");
  const int nb = x.target.object_count();
  const auto& t = x.total;
  std::vector<int> objects(t.object_count()), morphisms(t.morphism_count(), -1);
  for (int o = 0; o < t.object_count(); ++o) {
    const int a = lx.oa[o], b = lx.ob[o];
    const int k = iso.components[a * nb + b][px.element_index(a, b, t.object_id(o))];
    objects[o] = y.total.object_index(py.at(a, b)[k]);
  }
  for (int m = 0; m < t.morphism_count(); ++m) {
    const int over = x.projection.morphism(m);
    for (int n : y.total.out(objects[t.src(m)]))
      if (y.total.tgt(n) == objects[t.tgt(m)] && y.projection.morphism(n) == over) {
        morphisms[m] = n;
        break;
      }
    if (morphisms[m] < 0) return std::nullopt;
  }
  Functor f(t, y.total, std::move(objects), std::move(morphisms));
  if (!validate_functor(f).ok() || !is_isomorphism(f)) return std::nullopt;
  if (!(compose(y.projection, f) == x.projection)) return std::nullopt;
  return f;
}

// ---- round trips ------------------------------------------------------------

namespace {

using Rename = std::function<std::string(int, int, const std::string&)>;

Rename wrap_once(const FiniteCategory& a, const FiniteCategory& b) {
  return [a, b](int x, int y, const std::string& id) { return tuple_id({a.object_id(x), id, b.object_id(y)}); };
}

Rename wrap_twice(const FiniteCategory& a, const FiniteCategory& b) {
  return [a, b](int x, int y, const std::string& id) {
    return tuple_id({a.object_id(x), tuple_id({a.object_id(x), id, b.object_id(y)}), b.object_id(y)});
  };
}

RoundTrip profunctor_trip(std::string name, const Profunctor& p, const Profunctor& q, const Rename& rename) {
  RoundTrip r{std::move(name), false, {}};
  if (!validate_profunctor(q).ok()) {
    r.detail = "result is not a profunctor";
  } else if (!iso_by_rename(p, q, rename)) {
    r.detail = "canonical comparison is not an isomorphism";
  } else {
    r.ok = true;
  }
  return r;
}

RoundTrip correspondence_trip(std::string name, const Correspondence& c, const Correspondence& d, const Rename& rename) {
  RoundTrip r{std::move(name), false, {}};
  if (!validate_category(d.total).ok() || !validate_correspondence(d).ok()) {
    r.detail = "result is not a correspondence";
    return r;
  }
  auto iso = iso_by_rename(corr_to_profunctor(c), corr_to_profunctor(d), rename);
  if (!iso) {
    r.detail = "canonical comparison of cross homs is not an isomorphism";
  } else if (!correspondence_iso(c, d, *iso)) {
    r.detail = "induced functor is not an isomorphism over [1]";
  } else {
    r.ok = true;
  }
  return r;
}

RoundTrip bifibration_trip(std::string name, const Bifibration& x, const Bifibration& y, const Rename& rename) {
  RoundTrip r{std::move(name), false, {}};
  if (!validate_category(y.total).ok() || !check_two_sided_discrete(y)) {
    r.detail = "result is not a two-sided discrete fibration";
    return r;
  }
  auto iso = iso_by_rename(bifib_to_profunctor(x), bifib_to_profunctor(y), rename);
  if (!iso) {
    r.detail = "canonical comparison of fibers is not an isomorphism";
  } else if (!bifibration_iso(x, y, *iso)) {
    r.detail = "induced functor is not an isomorphism over A x B";
  } else {
    r.ok = true;
  }
  return r;
}

}  // namespace

std::vector<RoundTrip> roundtrips_from_profunctor(const Profunctor& p) {
  require_valid(p, "profunctor");
  const auto& a = p.source;
  const auto& b = p.target;
  return {profunctor_trip("P->C->X->P", p, bifib_to_profunctor(corr_to_bifib(collage(p))), wrap_once(a, b)),
          profunctor_trip("P->X->C->P", p, corr_to_profunctor(bifib_to_corr(profunctor_to_bifib(p))), wrap_twice(a, b))};
}

std::vector<RoundTrip> roundtrips_from_correspondence(const Correspondence& c) {
  require_valid(c, "correspondence");
  const auto& a = c.source();
  const auto& b = c.target();
  return {correspondence_trip("C->P->X->C", c, bifib_to_corr(profunctor_to_bifib(corr_to_profunctor(c))),
                              wrap_twice(a, b)),
          correspondence_trip("C->X->P->C", c, collage(bifib_to_profunctor(corr_to_bifib(c))), wrap_once(a, b))};
}

std::vector<RoundTrip> roundtrips_from_bifibration(const Bifibration& x) {
  require_valid(x.total, "bifibration");
  require_two_sided_discrete(x, "bifibration");
  const auto& a = x.source;
  const auto& b = x.target;
  return {bifibration_trip("X->P->C->X", x, corr_to_bifib(collage(bifib_to_profunctor(x))), wrap_once(a, b)),
          bifibration_trip("X->C->P->X", x, profunctor_to_bifib(corr_to_profunctor(bifib_to_corr(x))),
                           wrap_twice(a, b))};
}

std::vector<RoundTrip> all_roundtrips(const Profunctor& p) {
  auto out = roundtrips_from_profunctor(p);
  for (auto& r : roundtrips_from_correspondence(collage(p))) out.push_back(std::move(r));
  for (auto& r : roundtrips_from_bifibration(profunctor_to_bifib(p))) out.push_back(std::move(r));
  return out;
}

// ---- composition ------------------------------------------------------------

Glued glue_over_triangle(const Correspondence& c01, const Correspondence& c12) {
  if (!(c01.target() == c12.source()))
    throw PreconditionError("the middle fibers differ", corr_witness("fiber_mismatch"));
  const auto& e01 = c01.total;
  const auto& e12 = c12.total;
  const auto& a = c01.source();
  const auto& b = c01.target();
  const auto& c = c12.target();
  const auto s01 = invert(c01.include_s), t01 = invert(c01.include_t);
  const auto s12 = invert(c12.include_s), t12 = invert(c12.include_t);
  const int nb = b.object_count();

  // Pairs (h, k) through a middle object, and their classes.
  struct Pair {
    int a, b, c, h, k;
  };
  std::vector<Pair> pairs;
  std::map<std::pair<int, int>, int> pair_of;
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < nb; ++y)
      for (int h : e01.hom(c01.include_s.object(x), c01.include_t.object(y)))
        for (int z = 0; z < c.object_count(); ++z)
          for (int k : e12.hom(c12.include_s.object(y), c12.include_t.object(z))) {
            pair_of[{h, k}] = static_cast<int>(pairs.size());
            pairs.push_back({x, y, z, h, k});
          }
  UnionFind uf(pairs.size());
  for (int be = 0; be < b.morphism_count(); ++be) {
    const int y = b.src(be), y2 = b.tgt(be);
    for (int x = 0; x < a.object_count(); ++x)
      for (int h : e01.hom(c01.include_s.object(x), c01.include_t.object(y)))
        for (int z = 0; z < c.object_count(); ++z)
          for (int k : e12.hom(c12.include_s.object(y2), c12.include_t.object(z)))
            uf.unite(pair_of.at({e01.compose(c01.include_t.morphism(be), h), k}),
                     pair_of.at({h, e12.compose(k, c12.include_s.morphism(be))}));
  }
  auto pair_id = [&](const Pair& p) {
    return tuple_id({"02", b.object_id(p.b), e01.morphism_id(p.h), e12.morphism_id(p.k)});
  };
  std::map<std::size_t, int> rep;  // root → least pair
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    auto [it, fresh] = rep.emplace(uf.find(i), i);
    if (!fresh && pair_id(pairs[i]) < pair_id(pairs[it->second])) it->second = i;
  }
  std::vector<int> class_rep;
  std::map<std::size_t, int> class_index;
  for (const auto& [root, i] : rep) {
    class_index[root] = static_cast<int>(class_rep.size());
    class_rep.push_back(i);
  }
  auto class_of = [&](int h, int k) { return class_index.at(uf.find(pair_of.at({h, k}))); };

  CategoryBuilder builder;
  std::vector<int> obj01(e01.object_count()), obj12(e12.object_count());
  std::vector<int> level;
  for (int x = 0; x < e01.object_count(); ++x) {
    const bool in_a = s01.obj[x] >= 0;
    obj01[x] = builder.add_object(in_a ? tuple_id({"0", a.object_id(s01.obj[x])}) : tuple_id({"1", b.object_id(t01.obj[x])}));
    level.push_back(in_a ? 0 : 1);
  }
  for (int y = 0; y < e12.object_count(); ++y) {
    if (s12.obj[y] >= 0) {
      obj12[y] = obj01[c01.include_t.object(s12.obj[y])];
    } else {
      obj12[y] = builder.add_object(tuple_id({"2", c.object_id(t12.obj[y])}));
      level.push_back(2);
    }
  }
  enum Kind { kE01, kE12, kClass };
  struct GM {
    Kind kind;
    int m;
  };
  std::vector<GM> gms;
  std::vector<int> mor01(e01.morphism_count()), mor12(e12.morphism_count());
  for (int m = 0; m < e01.morphism_count(); ++m) {
    std::string id = s01.mor[m] >= 0   ? tuple_id({"0", a.morphism_id(s01.mor[m])})
                     : t01.mor[m] >= 0 ? tuple_id({"1", b.morphism_id(t01.mor[m])})
                                       : tuple_id({"01", e01.morphism_id(m)});
    mor01[m] = builder.add_morphism(std::move(id), obj01[e01.src(m)], obj01[e01.tgt(m)]);
    gms.push_back({kE01, m});
  }
  for (int m = 0; m < e12.morphism_count(); ++m) {
    if (s12.mor[m] >= 0) {
      mor12[m] = mor01[c01.include_t.morphism(s12.mor[m])];
      continue;
    }
    std::string id = t12.mor[m] >= 0 ? tuple_id({"2", c.morphism_id(t12.mor[m])}) : tuple_id({"12", e12.morphism_id(m)});
    mor12[m] = builder.add_morphism(std::move(id), obj12[e12.src(m)], obj12[e12.tgt(m)]);
    gms.push_back({kE12, m});
  }
  std::vector<int> class_mor;
  for (int i = 0; i < static_cast<int>(class_rep.size()); ++i) {
    const auto& p = pairs[class_rep[i]];
    class_mor.push_back(builder.add_morphism(pair_id(p), obj01[c01.include_s.object(p.a)], obj12[c12.include_t.object(p.c)]));
    gms.push_back({kClass, i});
  }
  for (int x = 0; x < e01.object_count(); ++x) builder.set_identity(obj01[x], mor01[e01.identity(x)]);
  for (int y = 0; y < e12.object_count(); ++y)
    if (s12.obj[y] < 0) builder.set_identity(obj12[y], mor12[e12.identity(y)]);

  // Composites with a class, read through a representative.
  auto pre = [&](int cls, int al) {  // class ∘ (0,α)
    const auto& p = pairs[class_rep[cls]];
    return class_of(e01.compose(p.h, al), p.k);
  };
  auto post = [&](int ga, int cls) {  // (2,γ) ∘ class
    const auto& p = pairs[class_rep[cls]];
    return class_of(p.h, e12.compose(ga, p.k));
  };
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    const auto& p = pairs[i];
    const int cls = class_of(p.h, p.k);
    for (int al : e01.in(c01.include_s.object(p.a)))
      if (pre(cls, al) != class_of(e01.compose(p.h, al), p.k))
        throw InvariantError("glued composite is not well defined on classes");
    for (int ga : e12.out(c12.include_t.object(p.c)))
      if (post(ga, cls) != class_of(p.h, e12.compose(ga, p.k)))
        throw InvariantError("glued composite is not well defined on classes");
  }
  auto is_middle01 = [&](int m) { return t01.mor[m] >= 0; };
  auto built = builder.build([&](int g, int f) {
    const auto& gf = gms[f];
    const auto& gg = gms[g];
    if (gf.kind == kE01 && gg.kind == kE01) return mor01[e01.compose(gg.m, gf.m)];
    if (gf.kind == kE12 && gg.kind == kE12) return mor12[e12.compose(gg.m, gf.m)];
    if (gf.kind == kE01 && gg.kind == kE12) {
      if (is_middle01(gf.m)) return mor12[e12.compose(gg.m, c12.include_s.morphism(t01.mor[gf.m]))];
      return class_mor[class_of(gf.m, gg.m)];
    }
    if (gf.kind == kE01 && gg.kind == kClass) return class_mor[pre(gg.m, gf.m)];
    if (gf.kind == kClass && gg.kind == kE12) return class_mor[post(gg.m, gf.m)];
    return -1;
  });
  const auto& total = built.category;
  if (!validate_category(total).ok()) throw InvariantError("glued category fails the category axioms");
  std::vector<int> lv(total.object_count());
  for (int x = 0; x < static_cast<int>(level.size()); ++x) lv[built.object_index[x]] = level[x];
  auto from = [&](const FiniteCategory& e, const std::vector<int>& objs, const std::vector<int>& mors) {
    std::vector<int> o, m;
    for (int x : objs) o.push_back(built.object_index[x]);
    for (int x : mors) m.push_back(built.morphism_index[x]);
    return Functor(e, total, std::move(o), std::move(m));
  };
  return Glued{total, interval_map(total, interval(2), lv), from(e01, obj01, mor01), from(e12, obj12, mor12)};
}

CorrComposite compose_corr(const Correspondence& c01, const Correspondence& c12) {
  CorrComposite out;
  out.first = c01;
  out.second = c12;
  out.glued = glue_over_triangle(c01, c12);
  const auto inc = interval_inclusion(2, {0, 2});
  out.base_change = pullback(inc, out.glued.projection);
  const auto& total = out.base_change.category;
  const auto back = invert(out.base_change.second);
  const auto one = interval(1);
  std::vector<int> level(total.object_count());
  for (int x = 0; x < total.object_count(); ++x) level[x] = out.base_change.first.object(x) == 0 ? 0 : 1;
  auto include = [&](const Functor& inner, const Functor& into) {
    std::vector<int> o, m;
    for (int x = 0; x < inner.source().object_count(); ++x) o.push_back(back.obj[into.object(inner.object(x))]);
    for (int k = 0; k < inner.source().morphism_count(); ++k) m.push_back(back.mor[into.morphism(inner.morphism(k))]);
    return Functor(inner.source(), total, std::move(o), std::move(m));
  };
  out.result = Correspondence{total, interval_map(total, one, level), include(c01.include_s, out.glued.from01),
                              include(c12.include_t, out.glued.from12)};
  const auto& e01 = c01.total;
  const auto& e12 = c12.total;
  const auto& g = out.glued.total;
  for (int x = 0; x < c01.source().object_count(); ++x)
    for (int y = 0; y < c01.target().object_count(); ++y)
      for (int h : e01.hom(c01.include_s.object(x), c01.include_t.object(y)))
        for (int z = 0; z < c12.target().object_count(); ++z) {
          const auto homs = total.hom(out.result.include_s.object(x), out.result.include_t.object(z));
          for (int k : e12.hom(c12.include_s.object(y), c12.include_t.object(z))) {
            const int composite = g.compose(out.glued.from12.morphism(k), out.glued.from01.morphism(h));
            out.pair_index[{h, k}] = position_of(homs, back.mor[composite]);
          }
        }
  return out;
}

PairComparison CorrComposite::comparison() const {
  return [c01 = first, c12 = second, index = pair_index](int a, int b, int c, int p, int q) {
    const int h = c01.total.hom(c01.include_s.object(a), c01.include_t.object(b))[p];
    const int k = c12.total.hom(c12.include_s.object(b), c12.include_t.object(c))[q];
    return index.at({h, k});
  };
}

BifibComposite compose_bifib(const Bifibration& x01, const Bifibration& x12) {
  if (!(x01.target == x12.source))
    throw PreconditionError("the middle categories differ", corr_witness("fiber_mismatch"));
  const auto l01 = require_lifts(x01, "first bifibration");
  const auto l12 = require_lifts(x12, "second bifibration");
  const auto& a = x01.source;
  const auto& b = x01.target;
  const auto& c = x12.target;
  const int nc = c.object_count();
  BifibComposite out;
  out.first = x01;
  out.second = x12;
  const auto to_b01 = product_projections(a, b, x01.projection.target()).second;
  const auto to_b12 = product_projections(b, c, x12.projection.target()).first;
  out.over_middle = pullback(compose(to_b01, x01.projection), compose(to_b12, x12.projection));
  const auto& w = out.over_middle.category;
  const auto& f1 = out.over_middle.first;
  const auto& f2 = out.over_middle.second;
  // W: morphisms over identities of A and C.
  UnionFind uf(w.object_count());
  for (int m = 0; m < w.morphism_count(); ++m) {
    const int m1 = f1.morphism(m), m2 = f2.morphism(m);
    if (a.is_identity(l01.ma[m1]) && c.is_identity(l12.mb[m2])) uf.unite(w.src(m), w.tgt(m));
  }
  auto oa = [&](int o) { return l01.oa[f1.object(o)]; };
  auto oc = [&](int o) { return l12.ob[f2.object(o)]; };
  // Class ids: least object id of the class; objects are sorted by id, so the root.
  std::vector<std::vector<std::string>> elements(a.object_count() * nc);
  std::vector<std::vector<int>> members(a.object_count() * nc);
  out.class_of.assign(w.object_count(), -1);
  for (int o = 0; o < w.object_count(); ++o)
    if (uf.find(o) == static_cast<std::size_t>(o)) {
      auto& el = elements[oa(o) * nc + oc(o)];
      out.class_of[o] = static_cast<int>(el.size());
      el.push_back(w.object_id(o));
      members[oa(o) * nc + oc(o)].push_back(o);
    }
  for (int o = 0; o < w.object_count(); ++o) out.class_of[o] = out.class_of[uf.find(o)];
  auto object_of = [&](int o1, int o2) {
    return w.object_index(tuple_id({x01.total.object_id(o1), x12.total.object_id(o2)}));
  };
  auto left = [&](int al, int o) {
    const int o1 = x01.total.src(l01.alift.at({f1.object(o), al}));
    return out.class_of[object_of(o1, f2.object(o))];
  };
  auto right = [&](int o, int ga) {
    const int o2 = x12.total.tgt(l12.blift.at({f2.object(o), ga}));
    return out.class_of[object_of(f1.object(o), o2)];
  };
  out.profunctor = make_profunctor(
      a, c, [&](int x, int z) { return elements[x * nc + z]; },
      [&](int al, int z, int k) { return left(al, members[a.tgt(al) * nc + z][k]); },
      [&](int x, int ga, int k) { return right(members[x * nc + c.src(ga)][k], ga); });
  for (int o = 0; o < w.object_count(); ++o) {
    for (int al : a.in(oa(o)))
      if (left(al, o) != out.profunctor.act_left(al, oc(o), out.class_of[o]))
        throw InvariantError("component left action is not well defined");
    for (int ga : c.out(oc(o)))
      if (right(o, ga) != out.profunctor.act_right(oa(o), ga, out.class_of[o]))
        throw InvariantError("component right action is not well defined");
  }
  require_valid(out.profunctor, "component profunctor");
  out.result = profunctor_to_bifib(out.profunctor);
  if (!check_two_sided_discrete(out.result)) throw InvariantError("composite is not a two-sided discrete fibration");
  const auto pr = bifib_to_profunctor(out.result);
  out.result_index.resize(w.object_count());
  for (int o = 0; o < w.object_count(); ++o) {
    const int x = oa(o), z = oc(o);
    out.result_index[o] =
        pr.element_index(x, z, tuple_id({a.object_id(x), elements[x * nc + z][out.class_of[o]], c.object_id(z)}));
  }
  return out;
}

PairComparison BifibComposite::comparison() const {
  Lifts l01, l12;
  compute_lifts(first, l01);
  compute_lifts(second, l12);
  const int nb = first.target.object_count(), nc = second.target.object_count();
  return [f1 = std::move(l01.fibers), f2 = std::move(l12.fibers), w = over_middle.category, x01 = first.total,
          x12 = second.total, index = result_index, nb, nc](int a, int b, int c, int p, int q) {
    const int o1 = f1[a * nb + b][p], o2 = f2[b * nc + c][q];
    return index[w.object_index(tuple_id({x01.object_id(o1), x12.object_id(o2)}))];
  };
}

RouteCoherence check_route_coherence(const Profunctor& p, const Profunctor& q) {
  const auto coend = compose_prof(p, q);
  const auto k2 = coend.comparison();
  const int nb = p.target.object_count(), nc = q.target.object_count();
  RouteCoherence out;

  const auto c01 = collage(p), c12 = collage(q);
  const auto cc = compose_corr(c01, c12);
  auto i01 = iso_by_rename(p, corr_to_profunctor(c01), wrap_once(p.source, p.target));
  auto i12 = iso_by_rename(q, corr_to_profunctor(c12), wrap_once(q.source, q.target));
  if (!i01 || !i12) throw InvariantError("collage cross homs do not match the profunctor");
  out.corr_vs_coend = comparison_iso(p, q, corr_to_profunctor(cc.result), reindex(cc.comparison(), *i01, *i12, nb, nc),
                                     coend.result, k2);

  const auto x01 = profunctor_to_bifib(p), x12 = profunctor_to_bifib(q);
  const auto bc = compose_bifib(x01, x12);
  auto j01 = iso_by_rename(p, bifib_to_profunctor(x01), wrap_once(p.source, p.target));
  auto j12 = iso_by_rename(q, bifib_to_profunctor(x12), wrap_once(q.source, q.target));
  if (!j01 || !j12) throw InvariantError("bifibration fibers do not match the profunctor");
  out.bifib_vs_coend = comparison_iso(p, q, bifib_to_profunctor(bc.result),
                                      reindex(bc.comparison(), *j01, *j12, nb, nc), coend.result, k2);
  return out;
}

PairComparison composite_in(const FiniteCategory& ambient, const Profunctor& p, const Profunctor& q,
                            const Profunctor& r) {
  return [ambient, p, q, r](int a, int b, int c, int x, int y) {
    const int f = ambient.morphism_index(p.at(a, b)[x]);
    const int g = ambient.morphism_index(q.at(b, c)[y]);
    return r.element_index(a, c, ambient.morphism_id(ambient.compose(g, f)));
  };
}

IdemRetBimodules idem_ret_bimodules() {
  const auto iota = idem_inclusion();
  const auto ret = iota.target();
  const auto hom = hom_profunctor(ret);
  return {restrict_profunctor(hom, iota, identity_functor(ret)), restrict_profunctor(hom, identity_functor(ret), iota)};
}

namespace {

// P ⊗ Q ≅ Hom_C through composition in the ambient category, both by the
// coend and by composing collages; returns whether the glued composite is the
// identity correspondence of C.
bool corr_route_is_identity(const FiniteCategory& ambient, const Profunctor& p, const Profunctor& q,
                            const Profunctor& hom) {
  const auto c01 = collage(p), c12 = collage(q);
  const auto cc = compose_corr(c01, c12);
  auto i01 = iso_by_rename(p, corr_to_profunctor(c01), wrap_once(p.source, p.target));
  auto i12 = iso_by_rename(q, corr_to_profunctor(c12), wrap_once(q.source, q.target));
  if (!i01 || !i12) return false;
  const auto r1 = corr_to_profunctor(cc.result);
  auto cmp = comparison_iso(p, q, r1,
                            reindex(cc.comparison(), *i01, *i12, p.target.object_count(), q.target.object_count()),
                            hom, composite_in(ambient, p, q, hom));
  if (!cmp.holds) return false;
  const auto id = identity_correspondence(hom.source);
  const auto one = interval(1);
  const auto& cross = one.morphism_id(one.hom(0, 1)[0]);
  auto to_id = iso_by_rename(hom, corr_to_profunctor(id),
                             [&](int, int, const std::string& f) { return tuple_id({f, cross}); });
  if (!to_id) return false;
  return correspondence_iso(cc.result, id, compose(*to_id, *cmp.iso)).has_value();
}

}  // namespace

IdemRetReport idem_ret_report() {
  const auto [m, n] = idem_ret_bimodules();
  const auto ret = m.target;
  const auto idem = m.source;
  IdemRetReport out;
  const auto mn = compose_prof(m, n);
  const auto hom_idem = hom_profunctor(idem);
  out.coend_idem = comparison_iso(m, n, mn.result, mn.comparison(), hom_idem, composite_in(ret, m, n, hom_idem));
  const auto nm = compose_prof(n, m);
  const auto hom_ret = hom_profunctor(ret);
  out.coend_ret = comparison_iso(n, m, nm.result, nm.comparison(), hom_ret, composite_in(ret, n, m, hom_ret));
  out.corr_idem = corr_route_is_identity(ret, m, n, hom_idem);
  out.corr_ret = corr_route_is_identity(ret, n, m, hom_ret);
  return out;
}

// ---- finality ---------------------------------------------------------------

CorrFinality is_left_final_corr(const Correspondence& c, int certify_dim) {
  CorrFinality out;
  out.inclusion = is_final(c.include_t, certify_dim);
  const auto x = corr_to_bifib(c);
  const auto ev_s = compose(product_projections(x.source, x.target, x.projection.target()).first, x.projection);
  out.sections_final = is_final(ev_s, certify_dim).holds;
  const auto menu = menu_left_final(c.projection);
  out.formulations_agree = menu.agree() && out.sections_final == out.inclusion.holds &&
                           is_left_final(c.projection, certify_dim).holds == out.inclusion.holds;
  return out;
}

CorrFinality is_right_initial_corr(const Correspondence& c, int certify_dim) {
  CorrFinality out;
  out.inclusion = is_initial(c.include_s, certify_dim);
  const auto x = corr_to_bifib(c);
  const auto ev_t = compose(product_projections(x.source, x.target, x.projection.target()).second, x.projection);
  out.sections_final = is_initial(ev_t, certify_dim).holds;
  const auto menu = menu_left_final(c.projection);
  out.formulations_agree = menu.agree() && out.sections_final == out.inclusion.holds &&
                           is_right_initial(c.projection, certify_dim).holds == out.inclusion.holds;
  return out;
}

}  // namespace fibcat
