#include "fibcat/functor.hpp"

#include <set>

#include "fibcat/constructions.hpp"

namespace fibcat {

Functor::Functor(FiniteCategory source, FiniteCategory target, std::vector<int> objects,
                 std::vector<int> morphisms)
    : source_(std::move(source)),
      target_(std::move(target)),
      objects_(std::move(objects)),
      morphisms_(std::move(morphisms)) {
  if (static_cast<int>(objects_.size()) != source_.object_count() ||
      static_cast<int>(morphisms_.size()) != source_.morphism_count())
    throw SchemaError("functor maps do not cover the source category");
}

Functor Functor::from_ids(FiniteCategory source, FiniteCategory target,
                          const std::map<std::string, std::string>& objects,
                          const std::map<std::string, std::string>& morphisms) {
  std::vector<int> om(source.object_count(), -1), mm(source.morphism_count(), -1);
  for (const auto& [a, b] : objects) om[source.object_index(a)] = target.object_index(b);
  for (int x = 0; x < source.object_count(); ++x)
    if (om[x] < 0) throw SchemaError("functor has no image for object '" + source.object_id(x) + "'");
  if (morphisms.empty() && target.is_thin()) {
    for (int m = 0; m < source.morphism_count(); ++m) {
      auto h = target.hom(om[source.src(m)], om[source.tgt(m)]);
      if (h.empty())
        throw SchemaError("no morphism in the target for '" + source.morphism_id(m) + "'");
      mm[m] = h.front();
    }
  } else {
    for (const auto& [a, b] : morphisms) mm[source.morphism_index(a)] = target.morphism_index(b);
    for (int m = 0; m < source.morphism_count(); ++m)
      if (mm[m] < 0)
        throw SchemaError("functor has no image for morphism '" + source.morphism_id(m) + "'");
  }
  return Functor(std::move(source), std::move(target), std::move(om), std::move(mm));
}

ValidationReport validate_functor(const Functor& f) {
  ValidationReport rep;
  const auto& c = f.source();
  const auto& d = f.target();
  auto add = [&](std::string kind, std::vector<std::string> ids) {
    rep.violations.push_back({std::move(kind), std::move(ids), {}});
  };
  for (int m = 0; m < c.morphism_count(); ++m) {
    const int fm = f.morphism(m);
    if (d.src(fm) != f.object(c.src(m)) || d.tgt(fm) != f.object(c.tgt(m)))
      add("functor_typing", {c.morphism_id(m), d.morphism_id(fm)});
  }
  for (int x = 0; x < c.object_count(); ++x) {
    if (c.identity(x) >= 0 && f.morphism(c.identity(x)) != d.identity(f.object(x)))
      add("functor_identity", {c.object_id(x)});
  }
  for (int a = 0; a < c.morphism_count(); ++a) {
    for (int b : c.out(c.tgt(a))) {
      const int ba = c.compose(b, a);
      if (ba < 0) continue;
      if (d.compose(f.morphism(b), f.morphism(a)) != f.morphism(ba))
        add("functor_composite", {c.morphism_id(b), c.morphism_id(a)});
    }
  }
  return rep;
}

void require_valid(const Functor& f, std::string_view what) {
  auto rep = validate_functor(f);
  if (!rep.ok()) {
    std::string msg = std::string(what) + " is not a functor: " + rep.violations.front().kind;
    for (const auto& id : rep.violations.front().ids) msg += " " + id;
    throw ValidationError(msg, rep.violations);
  }
}

Functor identity_functor(const FiniteCategory& c) {
  std::vector<int> om(c.object_count()), mm(c.morphism_count());
  for (int i = 0; i < c.object_count(); ++i) om[i] = i;
  for (int i = 0; i < c.morphism_count(); ++i) mm[i] = i;
  return Functor(c, c, std::move(om), std::move(mm));
}

Functor compose(const Functor& g, const Functor& f) {
  if (!(f.target() == g.source())) throw SchemaError("functors are not composable");
  std::vector<int> om(f.source().object_count()), mm(f.source().morphism_count());
  for (std::size_t i = 0; i < om.size(); ++i) om[i] = g.object(f.object(static_cast<int>(i)));
  for (std::size_t i = 0; i < mm.size(); ++i) mm[i] = g.morphism(f.morphism(static_cast<int>(i)));
  return Functor(f.source(), g.target(), std::move(om), std::move(mm));
}

Functor opposite(const Functor& f) {
  return Functor(opposite(f.source()), opposite(f.target()),
                 std::vector<int>(f.object_map().begin(), f.object_map().end()),
                 std::vector<int>(f.morphism_map().begin(), f.morphism_map().end()));
}

Functor point(const FiniteCategory& c, int x) {
  return Functor(terminal(), c, {x}, {c.identity(x)});
}

Functor to_terminal(const FiniteCategory& c) {
  return Functor(c, terminal(), std::vector<int>(c.object_count(), 0),
                 std::vector<int>(c.morphism_count(), 0));
}

Functor select_morphism(const FiniteCategory& c, int m) {
  auto i1 = interval(1);
  // [1]: objects 0,1; morphisms "0->0","0->1","1->1" (indices 0,1,2)
  return Functor(i1, c, {c.src(m), c.tgt(m)},
                 {c.identity(c.src(m)), m, c.identity(c.tgt(m))});
}

Functor select_pair(const FiniteCategory& c, int f, int g) {
  auto i2 = interval(2);
  std::vector<int> om = {c.src(f), c.tgt(f), c.tgt(g)};
  std::vector<int> mm(i2.morphism_count());
  for (int m = 0; m < i2.morphism_count(); ++m) {
    const int a = i2.src(m), b = i2.tgt(m);
    if (a == b) mm[m] = c.identity(om[a]);
    else if (a == 0 && b == 1) mm[m] = f;
    else if (a == 1 && b == 2) mm[m] = g;
    else mm[m] = c.compose(g, f);
  }
  return Functor(i2, c, std::move(om), std::move(mm));
}

bool is_isomorphism(const Functor& f) {
  const auto& c = f.source();
  const auto& d = f.target();
  if (c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count()) return false;
  std::set<int> objs(f.object_map().begin(), f.object_map().end());
  std::set<int> mors(f.morphism_map().begin(), f.morphism_map().end());
  return static_cast<int>(objs.size()) == d.object_count() &&
         static_cast<int>(mors.size()) == d.morphism_count();
}

bool is_fully_faithful(const Functor& f) {
  const auto& c = f.source();
  const auto& d = f.target();
  for (int a = 0; a < c.object_count(); ++a) {
    for (int b = 0; b < c.object_count(); ++b) {
      auto h = c.hom(a, b);
      auto k = d.hom(f.object(a), f.object(b));
      if (h.size() != k.size()) return false;
      std::set<int> img;
      for (int m : h) img.insert(f.morphism(m));
      if (img.size() != h.size()) return false;
    }
  }
  return true;
}

bool is_essentially_surjective(const Functor& f) {
  const auto& d = f.target();
  std::vector<char> hit(d.object_count(), 0);
  for (int x : f.object_map()) hit[x] = 1;
  for (int y = 0; y < d.object_count(); ++y) {
    if (hit[y]) continue;
    bool found = false;
    for (int x = 0; x < f.source().object_count() && !found; ++x)
      for (int m : d.hom(f.object(x), y))
        if (d.is_isomorphism(m)) {
          found = true;
          break;
        }
    if (!found) return false;
  }
  return true;
}

}  // namespace fibcat
