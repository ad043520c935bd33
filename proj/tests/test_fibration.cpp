#include "doctest.h"

#include "fibcat/catalog.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/enumerate.hpp"
#include "fibcat/fibration.hpp"

using namespace fibcat;

namespace {

Functor poset_map(const FiniteCategory& s, const FiniteCategory& t, const std::map<std::string, std::string>& objs) {
  return Functor::from_ids(s, t, objs);
}

// a, b over 0 and c over 1 with a → c, b → c.
Functor two_into_one() {
  auto e = poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
  return poset_map(e, interval(1), {{"a", "0"}, {"b", "0"}, {"c", "1"}});
}

Functor product_projection(const FiniteCategory& c, const FiniteCategory& k) {
  return product_projections(c, k, product(c, k)).second;
}

std::vector<Functor> sample_functors() {
  std::vector<Functor> out;
  out.push_back(arrow_category(interval(1)).ev_t);
  out.push_back(arrow_category(interval(2)).ev_t);
  out.push_back(arrow_category(interval(2)).ev_s);
  out.push_back(interval_inclusion(2, {0, 2}));
  out.push_back(interval_inclusion(2, {1, 2}));
  out.push_back(interval_inclusion(3, {1, 3}));
  out.push_back(product_projection(interval(1), interval(1)));
  out.push_back(product_projection(ret_category(), interval(2)));
  out.push_back(two_into_one());
  out.push_back(identity_functor(ret_category()));
  out.push_back(to_terminal(interval(2)));
  out.push_back(idem_inclusion());
  for (const auto& f : enumerate_functors(interval(2), interval(1))) out.push_back(f);
  for (const auto& f : enumerate_functors(ret_category(), interval(1))) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("coCartesian morphisms in simple projections") {
  auto c = interval(1);
  auto prod = product(c, interval(1));
  auto pr = product_projections(c, interval(1), prod).second;
  for (int m = 0; m < prod.morphism_count(); ++m) {
    const int cm = product_projections(c, interval(1), prod).first.morphism(m);
    if (c.is_identity(cm)) CHECK(is_cocartesian_morphism(pr, m));
  }
  auto ar = arrow_category(interval(2));
  const auto& a = ar.category;
  for (int m = 0; m < a.morphism_count(); ++m)
    if (interval(2).is_identity(ar.ev_s.morphism(m))) CHECK(is_cocartesian_morphism(ar.ev_t, m));
}

TEST_CASE("ev_t on Ar([2]) is coCartesian, exponentiable and left final but not left") {
  auto ar = arrow_category(interval(2));
  auto p = classify(ar.ev_t);
  CHECK(p["cocartesian"]);
  CHECK_FALSE(p["left_fibration"]);
  CHECK(p["exponentiable"]);
  CHECK(p["left_final"]);
  CHECK(p["locally_cocartesian"]);
}

TEST_CASE("{0<2} into [2] is neither exponentiable nor locally coCartesian") {
  auto pi = interval_inclusion(2, {0, 2});
  auto v = is_exponentiable(pi);
  REQUIRE_FALSE(v);
  CHECK(v.witness->kind == "empty_factorization");
  CHECK(v.witness->ids == std::vector<std::string>{"0->1", "1->2", "0->2"});
  auto loc = is_locally_cocartesian(pi);
  REQUIRE_FALSE(loc);
  CHECK(loc.witness->ids == std::vector<std::string>{"0->1", "(0,0)", "0->1"});
  CHECK_FALSE(is_cocartesian_fibration(pi));
  auto k = interval(2);
  auto fc = factorization_category(pi, k.morphism_index("0->1"), k.morphism_index("1->2"),
                                   pi.source().morphism_index("0->2"));
  CHECK(fc.object_count() == 0);
}

TEST_CASE("factorization_category rejects bad inputs") {
  auto pi = identity_functor(interval(2));
  auto k = interval(2);
  CHECK_THROWS_AS(factorization_category(pi, k.morphism_index("1->2"), k.morphism_index("1->2"), 0),
                  PreconditionError);
  CHECK_THROWS_AS(
      factorization_category(pi, k.morphism_index("0->1"), k.morphism_index("1->2"), k.morphism_index("0->1")),
      PreconditionError);
}

TEST_CASE("exponentiable families") {
  // Every functor to [1].
  for (const auto& src : {interval(2), ret_category(), product(interval(1), interval(1)), walking_isomorphism()})
    for (const auto& f : enumerate_functors(src, interval(1))) CHECK(is_exponentiable(f));
  // Convex inclusions {i < ... < j} into [n].
  for (int n = 0; n <= 5; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        std::vector<int> pts;
        for (int t = i; t <= j; ++t) pts.push_back(t);
        CHECK(is_exponentiable(interval_inclusion(n, pts)));
      }
  CHECK(is_exponentiable(interval_inclusion(4, {1, 2, 3})));
  // Over groupoids.
  for (const auto& g : {walking_isomorphism(), cyclic_group_2()})
    for (const auto& src : {interval(1), ret_category(), walking_isomorphism(), cyclic_group_2()})
      for (const auto& f : enumerate_functors(src, g)) CHECK(is_exponentiable(f));
}

TEST_CASE("discreteness and conservativity") {
  auto ar = arrow_category(interval(1));
  CHECK_FALSE(is_discrete_opfibration(ar.ev_t));
  CHECK_FALSE(is_conservative(ar.ev_s));
  for (const auto& c : {interval(2), ret_category(), walking_isomorphism()}) {
    CHECK(is_discrete_opfibration(identity_functor(c)));
    CHECK(is_discrete_fibration(identity_functor(c)));
  }
  CHECK(is_discrete_opfibration(two_into_one()));
  CHECK(is_conservative(two_into_one()));
  CHECK(is_left_fibration(two_into_one()));
  CHECK_FALSE(is_discrete_fibration(two_into_one()));
}

TEST_CASE("product projection is everything but discrete") {
  auto p = classify(product_projection(interval(1), interval(1)));
  for (const auto& key : {"cocartesian", "cartesian", "locally_cocartesian", "locally_cartesian", "exponentiable",
                          "left_final", "right_initial"})
    CHECK(p[key]);
  for (const auto& key :
       {"conservative", "discrete_opfibration", "discrete_fibration", "left_fibration", "right_fibration"})
    CHECK_FALSE(p[key]);
  auto q = classify(product_projection(discrete({"a", "b"}), interval(2)));
  for (const auto& key : profile_keys()) CHECK(q[key]);
}

TEST_CASE("functors to the terminal category are coCartesian") {
  for (const auto& c : {interval(2), ret_category(), cyclic_group_2()}) {
    CHECK(is_cocartesian_fibration(to_terminal(c)));
    CHECK(is_cartesian_fibration(to_terminal(c)));
  }
}

TEST_CASE("initial and final objects, adjoints") {
  for (int n = 0; n <= 4; ++n) {
    CHECK(initial_object(interval(n)) == 0);
    CHECK(final_object(interval(n)) == n);
  }
  CHECK_FALSE(initial_object(discrete({"a", "b"})).has_value());
  auto inc = interval_inclusion(2, {1, 2});
  auto r = is_right_adjoint(inc);
  CHECK(r);
  CHECK(inc.source().object_id(r.adjoint_objects[0]) == "1");
  auto l = is_left_adjoint(inc);
  CHECK_FALSE(l);
  CHECK(l.witness->ids == std::vector<std::string>{"0"});
  CHECK(is_equivalence(identity_functor(ret_category())));
  CHECK_FALSE(is_equivalence(idem_inclusion()));
}

TEST_CASE("section restriction") {
  auto pi = two_into_one();
  auto k = interval(1);
  auto id = identity_functor(k);
  auto s = point(k, 0);
  auto t = point(k, 1);
  auto at_s = check_section_restriction(pi, s, id);
  CHECK(at_s.bijective_on_sections);
  CHECK(at_s.isomorphism);
  CHECK(check_section_restriction(pi, id, id).isomorphism);
  auto at_t = check_section_restriction(pi, t, id);
  CHECK_FALSE(at_t.bijective_on_sections);
  CHECK(at_t.sections == 2);
  CHECK(at_t.restricted_sections == 1);
  CHECK(at_t.witness->kind == "non_injective_on_sections");
}

TEST_CASE("classification is dual under opposites") {
  for (const auto& pi : sample_functors()) {
    auto p = classify(pi);
    auto q = classify(opposite(pi));
    for (const auto& key : profile_keys()) CHECK(p[key] == q[dual_key(key)]);
  }
}

TEST_CASE("classification respects the implications on the samples") {
  for (const auto& pi : sample_functors()) {
    auto p = classify(pi);
    CHECK_FALSE(implication_violation(p).has_value());
  }
}

TEST_CASE("certified exponentiability is at least as strict") {
  for (const auto& pi : sample_functors())
    if (is_exponentiable(pi, 2)) CHECK(is_exponentiable(pi));
}

TEST_CASE("menus agree on the samples") {
  for (const auto& pi : sample_functors()) {
    auto a = menu_fiber_adjoints(pi);
    CHECK_MESSAGE(a.agree(), a.disagreement().value_or(""));
    auto b = menu_locally_cocartesian(pi);
    CHECK_MESSAGE(b.agree(), b.disagreement().value_or(""));
    auto c = menu_left_fibration(pi);
    CHECK_MESSAGE(c.agree(), c.disagreement().value_or(""));
    auto d = menu_left_final(pi);
    CHECK_MESSAGE(d.agree(), d.disagreement().value_or(""));
    if (pi.target() == interval(2)) {
      auto e = menu_cocartesian_over_2(pi);
      CHECK_MESSAGE(e.agree(), e.disagreement().value_or(""));
    }
  }
}

TEST_CASE("isofibration replacement") {
  // ∗ → walking isomorphism at a: the replacement is an isomorphism.
  auto w = walking_isomorphism();
  auto r = isofibration_replacement(point(w, w.object_index("a")));
  CHECK(validate_functor(r.projection).ok());
  CHECK(is_isomorphism(r.projection));
  auto z = isofibration_replacement(to_terminal(cyclic_group_2()));
  CHECK(is_isomorphism(z.unit));
  auto triv = Functor(cyclic_group_2(), cyclic_group_2(), {0}, {0, 0});
  CHECK(validate_functor(triv).ok());
  auto t = isofibration_replacement(triv);
  CHECK(t.projection.source().object_count() == 2);
  CHECK(t.projection.source().morphism_count() == 8);
  CHECK(is_equivalence(t.unit));
  CHECK(is_exponentiable(triv));
  auto p = isofibration_replacement(interval_inclusion(2, {0, 2}));
  CHECK(is_isomorphism(p.unit));
}

TEST_CASE("Ret over Idem inclusion") {
  auto inc = idem_inclusion();
  CHECK(is_fully_faithful(inc));
  CHECK_FALSE(is_essentially_surjective(inc));
}
