#include "doctest.h"

#include <set>

#include "fibcat/catalog.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/enumerate.hpp"

using namespace fibcat;

namespace {

bool valid(const FiniteCategory& c) { return validate_category(c).ok(); }

int non_identity_count(const FiniteCategory& c) {
  int n = 0;
  for (int m = 0; m < c.morphism_count(); ++m) n += !c.is_identity(m);
  return n;
}

}  // namespace

TEST_CASE("interval has n+1 objects and one morphism per pair i <= j") {
  for (int n = 0; n <= 5; ++n) {
    auto c = interval(n);
    CHECK(valid(c));
    CHECK(c.object_count() == n + 1);
    CHECK(c.morphism_count() == (n + 1) * (n + 2) / 2);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        CHECK(c.hom(c.object_index(std::to_string(i)), c.object_index(std::to_string(j))).size() ==
              (i <= j ? 1u : 0u));
  }
}

TEST_CASE("validator reports a planted associativity defect") {
  // a∘a = b, b∘a = 1, a∘b = a: (a∘a)∘a = 1 but a∘(a∘a) = a
  auto c = monoid({"1", "a", "b"}, {{0, 1, 2}, {1, 2, 1}, {2, 0, 0}});
  auto rep = validate_category(c);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& w : rep.violations)
    if (w.kind == "associativity" && w.ids == std::vector<std::string>{"a", "a", "a"}) found = true;
  CHECK(found);
}

TEST_CASE("validator flags missing composites, units and stray entries") {
  CategoryTable t = interval(2).to_table();
  t.compose.pop_back();
  auto rep = validate_category(FiniteCategory::from_table(t));
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().kind == "missing_composite");

  t = interval(1).to_table();
  t.compose.push_back({"0->1", "0->1", "0->1"});
  auto stray = validate_category(FiniteCategory::from_table(t));
  REQUIRE_FALSE(stray.ok());
  CHECK(stray.violations.front().kind == "stray_composite");

  t = interval(1).to_table();
  t.identities.erase("1");
  CHECK_FALSE(validate_category(FiniteCategory::from_table(t)).ok());
}

TEST_CASE("schema errors on duplicate and dangling ids") {
  CategoryTable t;
  t.objects = {"a", "a"};
  CHECK_THROWS_AS(FiniteCategory::from_table(t), SchemaError);
  t.objects = {"a"};
  t.morphisms = {{"f", "a", "b"}};
  CHECK_THROWS_AS(FiniteCategory::from_table(t), SchemaError);
}

TEST_CASE("Ret has five morphisms and validates") {
  auto r = ret_category();
  CHECK(valid(r));
  CHECK(r.morphism_count() == 5);
  const int s = r.morphism_index("s"), rr = r.morphism_index("r");
  CHECK(r.compose(rr, s) == r.morphism_index("id_x"));
  CHECK(r.compose(s, rr) == r.morphism_index("e"));
  auto idem = idem_category();
  CHECK(valid(idem));
  CHECK(idem.morphism_count() == 2);
  CHECK(valid(walking_isomorphism()));
  CHECK(valid(cyclic_group_2()));
}

TEST_CASE("opposite, product and terminal") {
  for (int n = 0; n <= 4; ++n) {
    auto op = opposite(interval(n));
    CHECK(valid(op));
    CHECK(find_isomorphism(op, interval(n)).has_value());
  }
  for (const auto& c : {ret_category(), walking_isomorphism(), interval(3), cyclic_group_2()})
    CHECK(opposite(opposite(c)) == c);
  auto sq = product(interval(1), interval(1));
  CHECK(valid(sq));
  CHECK(sq.object_count() == 4);
  CHECK(sq.morphism_count() == 9);
  CHECK(sq.is_thin());
  auto t = terminal();
  CHECK(t.object_count() == 1);
  CHECK(t.morphism_count() == 1);
  auto [p1, p2] = product_projections(ret_category(), interval(1), product(ret_category(), interval(1)));
  CHECK(validate_functor(p1).ok());
  CHECK(validate_functor(p2).ok());
}

TEST_CASE("strict pullbacks") {
  auto c = ret_category();
  auto id = identity_functor(c);
  auto pb = pullback(id, id);
  CHECK(valid(pb.category));
  CHECK(find_isomorphism(pb.category, c).has_value());

  auto ar = arrow_category(interval(1));
  auto f1 = fiber(ar.ev_t, 1);
  CHECK(f1.category.object_count() == 2);
  CHECK(non_identity_count(f1.category) == 1);

  auto i02 = interval_inclusion(2, {0, 2});
  auto p1 = interval_inclusion(2, {1});
  auto bc = pullback(p1, i02);
  CHECK(bc.category.object_count() == 0);
}

TEST_CASE("pullback universal property against small test categories") {
  auto a = interval(1);
  auto b = walking_isomorphism();
  auto c = terminal();
  auto f = to_terminal(a);
  auto g = to_terminal(b);
  auto i2 = interval(2);
  auto f2 = interval_inclusion(2, {0, 2});
  auto g2 = interval_inclusion(2, {1, 2});
  for (const auto& [ff, gg] : {std::pair{f, g}, std::pair{f2, g2}}) {
    auto pb = pullback(ff, gg);
    for (const auto& test : {terminal(), interval(1), interval(2), walking_isomorphism(), discrete({"p", "q"})}) {
      std::size_t cones = 0;
      for (const auto& x : enumerate_functors(test, ff.source()))
        for (const auto& y : enumerate_functors(test, gg.source()))
          if (compose(ff, x) == compose(gg, y)) ++cones;
      std::set<std::pair<std::vector<int>, std::vector<int>>> images;
      auto maps = enumerate_functors(test, pb.category);
      for (const auto& h : maps) {
        auto x = compose(pb.first, h);
        auto y = compose(pb.second, h);
        CHECK(compose(ff, x) == compose(gg, y));
        std::vector<int> key(x.object_map().begin(), x.object_map().end());
        key.insert(key.end(), x.morphism_map().begin(), x.morphism_map().end());
        std::vector<int> key2(y.object_map().begin(), y.object_map().end());
        key2.insert(key2.end(), y.morphism_map().begin(), y.morphism_map().end());
        images.emplace(key, key2);
      }
      CHECK(maps.size() == cones);
      CHECK(images.size() == cones);
    }
  }
  (void)c;
}

TEST_CASE("slices, coslices and commas") {
  auto i2 = interval(2);
  auto s = slice(i2, i2.object_index("2"));
  CHECK(valid(s.category));
  CHECK(find_isomorphism(s.category, i2).has_value());
  auto cs = coslice(i2, i2.object_index("1"));
  CHECK(cs.category.object_count() == 2);
  CHECK(find_isomorphism(cs.category, interval(1)).has_value());
  auto i1 = interval(1);
  auto cm = comma(point(i1, 1), identity_functor(i1));
  CHECK(cm.category.object_count() == 1);
  CHECK(valid(cm.category));
}

TEST_CASE("opposite of a slice is the coslice of the opposite") {
  for (const auto& c : {ret_category(), interval(3), walking_isomorphism(), product(interval(1), interval(2))}) {
    for (int x = 0; x < c.object_count(); ++x) {
      auto lhs = opposite(slice(c, x).category);
      auto rhs = coslice(opposite(c), x).category;
      CHECK(find_isomorphism(lhs, rhs).has_value());
    }
  }
}

TEST_CASE("arrow and twisted arrow categories") {
  auto a0 = arrow_category(terminal());
  CHECK(a0.category.object_count() == 1);
  CHECK(a0.category.morphism_count() == 1);
  auto a1 = arrow_category(interval(1));
  CHECK(valid(a1.category));
  CHECK(a1.category.object_count() == 3);
  CHECK(non_identity_count(a1.category) == 3);
  CHECK(validate_functor(a1.ev_s).ok());
  CHECK(validate_functor(a1.ev_t).ok());

  auto tw = twisted_arrows(interval(1));
  CHECK(valid(tw.category));
  CHECK(tw.category.object_count() == 3);
  CHECK(non_identity_count(tw.category) == 2);
  const int mid = tw.category.object_index("0->1");
  for (int m = 0; m < tw.category.morphism_count(); ++m)
    if (!tw.category.is_identity(m)) CHECK(tw.category.tgt(m) == mid);
  CHECK(validate_functor(tw.projection).ok());
  CHECK(valid(twisted_arrows(ret_category()).category));
}

TEST_CASE("functor enumeration matches direct counts") {
  // Functors [1] → [n] are pairs i ≤ j.
  for (int n = 0; n <= 4; ++n) CHECK(enumerate_functors(interval(1), interval(n)).size() == std::size_t((n + 1) * (n + 2) / 2));
  // Monotone maps [2] → [2]: multisets of size 3 from 3 elements.
  CHECK(enumerate_functors(interval(2), interval(2)).size() == 10u);
  CHECK(enumerate_functors(cyclic_group_2(), cyclic_group_2()).size() == 2u);
  // Ret → Ret: identity, and constant-ish maps onto idempotent splittings.
  for (const auto& f : enumerate_functors(ret_category(), ret_category())) CHECK(validate_functor(f).ok());
  CHECK_THROWS_AS(enumerate_functors(interval(4), interval(4), 10), EnumerationCapExceeded);
}

TEST_CASE("section categories over a base") {
  // Sections of ev_t: Ar([1]) → [1] over id: functors [1] → Ar([1]) over [1].
  auto ar = arrow_category(interval(1));
  auto sc = section_category(identity_functor(interval(1)), ar.ev_t);
  CHECK(valid(sc.category));
  for (const auto& s : sc.sections) CHECK(compose(ar.ev_t, s) == identity_functor(interval(1)));
}

TEST_CASE("relabel and subcategory errors") {
  auto c = relabel(interval(1), [](const std::string& s) { return "o" + s; },
                   [](const std::string& s) { return "m" + s; });
  CHECK(valid(c));
  CHECK(c.find_object("o0").has_value());
  auto i2 = interval(2);
  CHECK_THROWS_AS(subcategory(i2, {0, 1, 2}, {i2.morphism_index("0->1"), i2.morphism_index("1->2")}), SchemaError);
}

TEST_CASE("coproduct") {
  auto c = coproduct(interval(1), walking_isomorphism());
  CHECK(valid(c));
  CHECK(c.object_count() == 4);
  CHECK(c.morphism_count() == 7);
}
