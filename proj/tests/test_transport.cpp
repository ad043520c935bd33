#include "doctest.h"

#include <set>

#include "fibcat/catalog.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/correspondence.hpp"
#include "fibcat/enumerate.hpp"
#include "fibcat/fibration.hpp"
#include "fibcat/random.hpp"
#include "fibcat/transport.hpp"

using namespace fibcat;

namespace {

Functor projection_to(const FiniteCategory& c, const FiniteCategory& k) {
  const auto p = product(c, k);
  return product_projections(c, k, p).second;
}

SetFunctor two_point_functor() {
  // [1] → FinSet: 0 ↦ {a}, 1 ↦ {b, c}, a ↦ b.
  SetFunctor f;
  f.base = interval(1);
  f.values = {{"a"}, {"b", "c"}};
  const int id0 = f.base.morphism_index("0->0"), id1 = f.base.morphism_index("1->1");
  const int u = f.base.morphism_index("0->1");
  f.maps.resize(3);
  f.maps[id0] = {0};
  f.maps[id1] = {0, 1};
  f.maps[u] = {0};
  return f;
}

// A strict functor [n] → Cat from a chain of random functors.
CatValuedFunctor random_chain(Rng& rng, int n) {
  const auto k = interval(n);
  std::vector<FiniteCategory> cats;
  std::vector<Functor> steps;
  while (static_cast<int>(cats.size()) <= n) {
    auto c = random_category(rng, {3, 6});
    if (!cats.empty()) {
      auto f = random_functor(rng, cats.back(), c);
      if (!f) continue;
      steps.push_back(*f);
    }
    cats.push_back(c);
  }
  CatValuedFunctor f{k, cats, std::vector<Functor>(k.morphism_count())};
  for (int m = 0; m < k.morphism_count(); ++m) {
    const int i = k.src(m), j = k.tgt(m);
    Functor g = identity_functor(cats[i]);
    for (int s = i; s < j; ++s) g = compose(steps[s], g);
    f.maps[m] = g;
  }
  return f;
}

Functor random_left_final(Rng& rng, int n) {
  for (;;) {
    auto pi = random_functor_over_interval(rng, n, 10);
    if (is_left_final(pi)) return pi;
  }
}

}  // namespace

TEST_CASE("coCartesian replacement of the endpoints of [1]") {
  const auto k = interval(1);
  auto at_t = cocart_replacement(point(k, 1));
  CHECK(at_t.projection.source().object_count() == 1);
  CHECK(at_t.projection.object(0) == 1);
  auto at_s = cocart_replacement(point(k, 0));
  REQUIRE(at_s.projection.source().object_count() == 2);
  std::set<int> hit;
  for (int o = 0; o < 2; ++o) hit.insert(at_s.projection.object(o));
  CHECK(hit == std::set<int>{0, 1});
  // A point is coCartesian over [1] only when nothing leaves it.
  CHECK(at_t.adjoint.has_value());
  CHECK_FALSE(at_s.adjoint.has_value());
  auto cart = cart_replacement(point(k, 1));
  CHECK(cart.projection.source().object_count() == 2);
}

TEST_CASE("coCartesian replacement of a coCartesian fibration has a left adjoint retraction") {
  auto pi = projection_to(interval(2), interval(1));
  auto r = cocart_replacement(pi);
  REQUIRE(r.adjoint);
  CHECK(compose(*r.adjoint, r.unit) == identity_functor(pi.source()));
  CHECK(is_right_adjoint(r.unit).holds);
  // Not an equivalence: Ar([1]) over [1] is bigger than [1].
  auto id = cocart_replacement(identity_functor(interval(1)));
  CHECK(id.projection.source().object_count() == 3);
  CHECK_FALSE(is_equivalence(id.unit));
}

TEST_CASE("replacements are (co)Cartesian on random functors") {
  Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    auto pi = random_functor_over_interval(rng, 1 + i % 2, 10);
    auto r = cocart_replacement(pi);
    CHECK(is_cocartesian_fibration(r.projection));
    CHECK(is_fully_faithful(r.unit));
    CHECK(r.adjoint.has_value() == static_cast<bool>(is_cocartesian_fibration(pi)));
    auto c = cart_replacement(pi);
    CHECK(is_cartesian_fibration(c.projection));
    CHECK(is_fully_faithful(c.unit));
    if (c.adjoint) CHECK(is_left_adjoint(c.unit).holds);
  }
}

TEST_CASE("the Grothendieck construction of a two-point functor") {
  auto p = unstraighten(two_point_functor());
  const auto& t = p.source();
  CHECK(t.object_count() == 3);
  CHECK(t.morphism_count() == 4);
  const int a = t.object_index("(0,a)"), b = t.object_index("(1,b)");
  CHECK(t.hom(a, b).size() == 1);
  CHECK(t.hom(a, t.object_index("(1,c)")).empty());
  CHECK(is_discrete_opfibration(p));
  CHECK(check_discrete_roundtrip(two_point_functor()));
}

TEST_CASE("discrete straightening round trips") {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    auto k = random_category(rng, {3, 8});
    auto f = random_set_functor(rng, k, 6);
    CHECK(check_discrete_roundtrip(f));
    auto p = unstraighten(f);
    CHECK(check_discrete_roundtrip(p));
    auto q = unstraighten_contravariant(random_set_functor(rng, opposite(k), 5));
    CHECK(is_discrete_fibration(q));
    auto back = straighten_discrete_fib(q);
    CHECK(back.base == opposite(k));
  }
  CHECK_THROWS_AS(straighten_discrete_opfib(to_terminal(interval(1))), PreconditionError);
}

TEST_CASE("set functor enumeration matches hand counts") {
  // Functors [1] → FinSet with sizes ≤ 2: pairs (m, n) with n^m maps.
  std::size_t expected = 0;
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n) {
      std::size_t maps = 1;
      for (int i = 0; i < m; ++i) maps *= n;
      expected += maps;
    }
  CHECK(enumerate_set_functors(interval(1), 2).size() == expected);
  // Z/2-sets of size ≤ 2: involutions, 1 + 1 + 2.
  CHECK(enumerate_set_functors(cyclic_group_2(), 2).size() == 4);
  for (const auto& f : enumerate_set_functors(ret_category(), 2)) CHECK(validate_set_functor(f).ok());
}

TEST_CASE("left fibration replacement values") {
  const auto k = interval(1);
  auto r = lfib_replacement(point(k, 0));
  CHECK(r.values.size(0) == 1);
  CHECK(r.values.size(1) == 1);
  auto two = coproduct(k, k);
  auto pi = Functor::from_ids(two, k, {{"(0,0)", "0"}, {"(0,1)", "1"}, {"(1,0)", "0"}, {"(1,1)", "1"}});
  auto rr = lfib_replacement(pi);
  CHECK(rr.values.size(0) == 2);
  CHECK(rr.values.size(1) == 2);
  // A discrete opfibration is its own replacement.
  auto p = unstraighten(two_point_functor());
  auto same = lfib_replacement(p);
  CHECK(find_natural_isomorphism(same.values, straighten_discrete_opfib(p)).has_value());
  CHECK(is_isomorphism(same.unit));
  auto right = rfib_replacement(point(k, 1));
  CHECK(right.values.size(0) == 1);
  CHECK(right.values.size(1) == 1);
  CHECK(is_discrete_fibration(right.fibration));
}

TEST_CASE("fibration replacements satisfy their universal property") {
  Rng rng(31);
  for (int i = 0; i < 25; ++i) {
    auto k = random_category(rng, {3, 6});
    auto j = random_category(rng, {3, 6});
    auto pi = random_functor(rng, j, k);
    if (!pi) continue;
    auto r = lfib_replacement(*pi);
    auto l = rfib_replacement(*pi);
    for (const auto& f : enumerate_set_functors(k, 2)) {
      auto z = unstraighten(f);
      auto res = check_replacement_universal_property(r, *pi, z);
      CHECK_MESSAGE(res.holds, (res.witness ? res.witness->kind : std::string()));
    }
    for (const auto& f : enumerate_set_functors(opposite(k), 1)) {
      auto z = unstraighten_contravariant(f);
      CHECK(check_replacement_universal_property(l, *pi, z).holds);
    }
  }
}

TEST_CASE("relative classifying space examples") {
  auto pi = projection_to(interval(1), interval(2));
  auto r = relative_classifying_space(pi);
  CHECK(is_discrete_opfibration(r.projection));
  CHECK(r.projection.source().object_count() == 3);
  auto id = relative_classifying_space(identity_functor(ret_category()));
  CHECK(find_isomorphism_over(id.projection, identity_functor(ret_category())).has_value());
  // A two-object connected fiber collapses to a point.
  auto c = relative_classifying_space(to_terminal(interval(1)));
  CHECK(c.projection.source().object_count() == 1);
  // Two cross morphisms out of a point: neither left final nor right initial.
  Profunctor p = make_profunctor(
      terminal(), terminal(), [](int, int) { return std::vector<std::string>{"u", "v"}; },
      [](int, int, int e) { return e; }, [](int, int, int e) { return e; });
  CHECK_THROWS_AS(relative_classifying_space(collage(p).projection), PreconditionError);
}

TEST_CASE("relative classifying space commutes with base change and products") {
  Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    auto pi = random_left_final(rng, 1 + i % 2);
    const auto& k = pi.target();
    auto r = relative_classifying_space(pi);
    for (int x = 0; x < k.object_count(); ++x) {
      auto fib = fiber(pi, x).category;
      const auto labels = pi0_map(identity_functor(fib));
      const std::set<int> comps(labels.begin(), labels.end());
      CHECK(fiber(r.projection, x).category.object_count() == static_cast<int>(comps.size()));
    }
    auto j = random_category(rng, {3, 6});
    auto g = random_functor(rng, j, k);
    if (g) {
      auto bc = base_change(pi, *g);
      auto lhs = relative_classifying_space(bc.first);
      auto rhs = pullback(*g, r.projection);
      CHECK(find_isomorphism_over(lhs.projection, rhs.first).has_value());
    }
    auto other = random_left_final(rng, 1 + i % 2);
    auto both = pullback(pi, other);
    auto prod = compose(pi, both.first);
    auto rp = relative_classifying_space(prod);
    auto ro = relative_classifying_space(other);
    auto fp = pullback(r.projection, ro.projection);
    CHECK(find_isomorphism_over(rp.projection, compose(r.projection, fp.first)).has_value());
  }
}

TEST_CASE("category-valued unstraightening") {
  const auto c = interval(1);
  const auto k = ret_category();
  auto p = unstraighten_cat(constant_cat_functor(k, c));
  CHECK(find_isomorphism_over(p, projection_to(c, k)).has_value());
  Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    auto f = random_chain(rng, 1 + i % 3);
    auto pi = unstraighten_cat(f);
    CHECK(is_cocartesian_fibration(pi));
    CHECK(check_cat_roundtrip(f));
  }
  CHECK(check_cat_roundtrip(constant_cat_functor(cyclic_group_2(), walking_isomorphism())));
}

TEST_CASE("a non-split cleavage is reported with its comparisons") {
  auto pi = projection_to(walking_isomorphism(), interval(2));
  auto s = straighten_cocart(pi);
  CHECK_FALSE(s.cleavage.split);
  CHECK_FALSE(s.functor.has_value());
  for (const auto& l : s.cleavage.lifts) CHECK(is_cocartesian_morphism(pi, l.lift));
  int nontrivial = 0;
  for (const auto& c : s.cleavage.comparisons) {
    CHECK(pi.source().is_isomorphism(c.morphism));
    if (!pi.source().is_identity(c.morphism)) ++nontrivial;
  }
  CHECK(nontrivial > 0);
  CHECK_THROWS_AS(straighten_cocart(point(interval(1), 0)), PreconditionError);
  auto split = straighten_cocart(projection_to(interval(1), interval(2)));
  CHECK(split.cleavage.split);
  REQUIRE(split.functor);
  CHECK(validate_cat_functor(*split.functor).ok());
}

TEST_CASE("maximal sub-fibrations") {
  auto pi = projection_to(interval(1), interval(1));
  auto sub = maximal_left_subfibration(pi);
  // (γ, f) with γ invertible: identities of [1] times the 3 morphisms of [1].
  CHECK(sub.projection.source().morphism_count() == 6);
  CHECK(is_left_fibration(sub.projection));
  auto ar = arrow_category(interval(2));
  auto m = maximal_left_subfibration(ar.ev_t);
  auto top = fiber(m.projection, 2).category;
  CHECK(top.object_count() == 3);
  CHECK(top.morphism_count() == 3);
  auto d = unstraighten(two_point_functor());
  CHECK(maximal_left_subfibration(d).projection.source().morphism_count() == d.source().morphism_count());
  auto r = maximal_right_subfibration(ar.ev_s);
  CHECK(fiber(r.projection, 0).category.morphism_count() == 3);
  CHECK_THROWS_AS(maximal_left_subfibration(point(interval(1), 0)), PreconditionError);
}

TEST_CASE("pushforward along identities and to a point") {
  const auto k = interval(2);
  auto zeta = projection_to(interval(1), k);
  auto pf = pushforward_exponentiable(identity_functor(k), zeta);
  CHECK(find_isomorphism_over(pf.projection, zeta).has_value());
  auto e = ret_category();
  auto pi = to_terminal(e);
  auto z = identity_functor(e);
  auto glob = pushforward_exponentiable(pi, z);
  CHECK(glob.projection.source().object_count() == 1);
  auto zz = projection_to(interval(1), e);
  auto sec = pushforward_exponentiable(pi, zz);
  CHECK(static_cast<std::size_t>(sec.projection.source().object_count()) ==
        enumerate_functors_over(identity_functor(e), zz).size());
  auto bad = interval_inclusion(2, {0, 2});
  CHECK_THROWS_AS(pushforward_exponentiable(bad, identity_functor(bad.source())), PreconditionError);
}

TEST_CASE("pushforward adjunction on random exponentiable functors") {
  Rng rng(13);
  std::vector<FiniteCategory> shapes = {terminal(), interval(1), discrete({"u", "v"}), interval(2),
                                        poset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}), walking_isomorphism()};
  int done = 0;
  while (done < 12) {
    auto pi = random_functor_over_interval(rng, 1 + done % 2, 8);
    if (!is_exponentiable(pi)) continue;
    auto zeta = projection_to(rng.coin() ? interval(1) : discrete({"u", "v"}), pi.source());
    auto pf = pushforward_exponentiable(pi, zeta);
    // Sections over K are global sections.
    auto glob = check_pushforward_adjunction(pf, pi, zeta, identity_functor(pi.target()));
    CHECK(glob.holds);
    for (const auto& j : shapes) {
      auto p = random_functor(rng, j, pi.target());
      if (!p) continue;
      auto res = check_pushforward_adjunction(pf, pi, zeta, *p);
      CHECK_MESSAGE(res.holds, (res.witness ? res.witness->kind : std::string()));
      CHECK(res.over_k == res.over_e);
    }
    ++done;
  }
}

TEST_CASE("Kan extension along fibrations") {
  Rng rng(27);
  auto k = interval(1);
  auto f = random_set_functor(rng, k, 4);
  auto same = kan_extend_along_fibration(identity_functor(k), f, KanDirection::left);
  CHECK(find_natural_isomorphism(same, f).has_value());
  auto right = kan_extend_along_fibration(identity_functor(k), f, KanDirection::right);
  CHECK(find_natural_isomorphism(right, f).has_value());
  // Connected fibers and a constant singleton.
  auto pi = projection_to(interval(1), interval(2));
  auto one = kan_extend_along_fibration(pi, constant_set_functor(pi.source(), {"*"}), KanDirection::left);
  for (int x = 0; x < 3; ++x) CHECK(one.size(x) == 1);
  // A two-component fiber.
  auto two = to_terminal(discrete({"u", "v"}));
  auto g = constant_set_functor(two.source(), {"*"});
  auto lan = kan_extend_along_fibration(two, g, KanDirection::left);
  CHECK(lan.size(0) == 2);
  CHECK(lan.size(0) == static_cast<int>(colimit_size(g)));
  auto ran = kan_extend_along_fibration(two, g, KanDirection::right);
  CHECK(ran.size(0) == 1);
  auto bad = interval_inclusion(2, {0, 2});
  CHECK_THROWS_AS(kan_extend_along_fibration(bad, constant_set_functor(bad.source(), {"*"}), KanDirection::left),
                  PreconditionError);
}

TEST_CASE("fiberwise Kan extensions agree with the comma oracle") {
  Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    auto pi = random_functor_over_interval(rng, 1 + i % 2, 10);
    const auto& k = pi.target();
    auto f = random_set_functor(rng, pi.source(), 5);
    if (is_left_final(pi)) {
      auto lan = kan_extend_along_fibration(pi, f, KanDirection::left);
      for (int x = 0; x < k.object_count(); ++x) {
        auto c = comma(pi, point(k, x));
        CHECK(static_cast<std::size_t>(lan.size(x)) == colimit_size(compose(f, c.to_source)));
      }
    }
    if (is_right_initial(pi)) {
      auto ran = kan_extend_along_fibration(pi, f, KanDirection::right);
      for (int x = 0; x < k.object_count(); ++x) {
        auto c = comma(point(k, x), pi);
        CHECK(static_cast<std::size_t>(ran.size(x)) == limit_size(compose(f, c.to_target)));
      }
    }
  }
}
