#include "doctest.h"

#include "fibcat/catalog.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/correspondence.hpp"
#include "fibcat/enumerate.hpp"
#include "fibcat/fibration.hpp"
#include "fibcat/homology.hpp"
#include "fibcat/ids.hpp"
#include "fibcat/random.hpp"

using namespace fibcat;

namespace {

Profunctor point_profunctor(std::vector<std::string> elements) {
  const auto pt = terminal();
  return make_profunctor(
      pt, pt, [&](int, int) { return elements; }, [](int, int, int e) { return e; }, [](int, int, int e) { return e; });
}

// Every action map lands in a singleton.
Profunctor singleton_profunctor(const FiniteCategory& a, const FiniteCategory& b,
                                const std::function<std::vector<std::string>(int, int)>& elements) {
  return make_profunctor(a, b, elements, [](int, int, int) { return 0; }, [](int, int, int) { return 0; });
}

bool same_profunctor(const Profunctor& p, const Profunctor& q) {
  return p.source == q.source && p.target == q.target && p.elements == q.elements && p.left == q.left &&
         p.right == q.right;
}

// The image of f is exactly the part of the glued category over `levels`.
bool is_restriction_onto(const Functor& f, const Functor& projection, const std::vector<int>& levels) {
  if (!validate_functor(f).ok() || !is_fully_faithful(f)) return false;
  const auto& t = f.target();
  std::vector<int> hit(t.object_count(), 0);
  for (int x = 0; x < f.source().object_count(); ++x)
    if (hit[f.object(x)]++) return false;
  for (int x = 0; x < t.object_count(); ++x) {
    const bool wanted = std::find(levels.begin(), levels.end(), projection.object(x)) != levels.end();
    if (wanted != (hit[x] == 1)) return false;
  }
  return true;
}

std::optional<Functor> iso_to_identity(const Correspondence& c, const FiniteCategory& base) {
  const auto id = identity_correspondence(base);
  auto iso = find_profunctor_iso(corr_to_profunctor(c), corr_to_profunctor(id));
  if (!iso) return std::nullopt;
  return correspondence_iso(c, id, *iso);
}

}  // namespace

TEST_CASE("collage shapes") {
  auto a = interval(1);
  auto b = walking_isomorphism();
  auto empty = collage(empty_profunctor(a, b));
  CHECK(validate_category(empty.total).ok());
  CHECK(validate_correspondence(empty).ok());
  CHECK(component_count(empty.total) == 2);
  CHECK(empty.total.morphism_count() == a.morphism_count() + b.morphism_count());

  auto two = collage(point_profunctor({"u", "v"}));
  CHECK(validate_category(two.total).ok());
  CHECK(two.total.object_count() == 2);
  CHECK(two.total.hom(two.include_s.object(0), two.include_t.object(0)).size() == 2);
  CHECK(two.total.find_morphism("(*,u,*)").has_value());
}

TEST_CASE("sections of the collage of a hom profunctor are the arrow category") {
  for (const auto& c : {interval(2), ret_category(), walking_isomorphism()}) {
    auto col = collage(hom_profunctor(c));
    auto sections = section_category(identity_functor(interval(1)), col.projection);
    CHECK(find_isomorphism(sections.category, arrow_category(c).category).has_value());
  }
}

TEST_CASE("identity correspondences read as hom profunctors") {
  for (const auto& c : {interval(2), ret_category(), cyclic_group_2()}) {
    auto id = identity_correspondence(c);
    REQUIRE(validate_correspondence(id).ok());
    auto p = corr_to_profunctor(id);
    auto iso = iso_by_rename(hom_profunctor(c), p,
                             [](int, int, const std::string& f) { return tuple_id({f, "0->1"}); });
    CHECK(iso.has_value());
  }
}

TEST_CASE("a collapsing composite gives a non-free action") {
  auto m = monoid({"1", "e"}, {{0, 1}, {1, 1}});
  auto p = singleton_profunctor(m, terminal(), [](int, int) { return std::vector<std::string>{"u"}; });
  REQUIRE(validate_profunctor(p).ok());
  auto back = corr_to_profunctor(collage(p));
  const int e = m.morphism_index("e");
  CHECK(back.act_left(e, 0, 0) == 0);
  CHECK(iso_by_rename(p, back, [](int, int, const std::string& x) { return tuple_id({"*", x, "*"}); }).has_value());
}

TEST_CASE("identity correspondence as a bifibration is the arrow category") {
  for (const auto& c : {interval(2), ret_category()}) {
    auto x = corr_to_bifib(identity_correspondence(c));
    CHECK(check_two_sided_discrete(x));
    auto ar = arrow_category(c);
    const auto prod = x.projection.target();
    std::vector<int> objects, morphisms;
    for (int o = 0; o < ar.category.object_count(); ++o)
      objects.push_back(prod.object_index(
          tuple_id({c.object_id(ar.ev_s.object(o)), c.object_id(ar.ev_t.object(o))})));
    for (int m = 0; m < ar.category.morphism_count(); ++m)
      morphisms.push_back(prod.morphism_index(
          tuple_id({c.morphism_id(ar.ev_s.morphism(m)), c.morphism_id(ar.ev_t.morphism(m))})));
    Functor pair(ar.category, prod, objects, morphisms);
    CHECK(find_isomorphism_over(x.projection, pair).has_value());
  }
}

TEST_CASE("the Ret to Idem bimodule has one element over (x, y)") {
  const auto [m, n] = idem_ret_bimodules();
  auto x = corr_to_bifib(collage(n));
  auto p = bifib_to_profunctor(x);
  const int rx = n.source.object_index("x"), iy = n.target.object_index("y");
  REQUIRE(p.size(rx, iy) == 1);
  CHECK(p.at(rx, iy)[0] == "(x,s,y)");
}

TEST_CASE("two-sided discreteness is enforced") {
  const auto pt = terminal();
  auto prod = product(pt, pt);
  auto arrow = interval(1);
  Bifibration bad{arrow, to_terminal(arrow), pt, pt};
  bad.projection = Functor(arrow, prod, {0, 0}, {0, 0, 0});
  auto v = check_two_sided_discrete(bad);
  CHECK_FALSE(v.holds);
  REQUIRE(v.witness);
  CHECK(v.witness->kind == "ambiguous_target_lift");
  CHECK_THROWS_AS(bifib_to_profunctor(bad), ValidationError);
}

TEST_CASE("six round trips") {
  auto id1 = identity_correspondence(interval(1));
  for (const auto& r : roundtrips_from_correspondence(id1)) CHECK_MESSAGE(r.ok, r.name);
  for (const auto& r : all_roundtrips(hom_profunctor(interval(1)))) CHECK_MESSAGE(r.ok, r.name);
  Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    auto a = random_category(rng, {3, 7});
    auto b = random_category(rng, {3, 7});
    auto p = random_profunctor(rng, a, b, 5);
    auto trips = all_roundtrips(p);
    REQUIRE(trips.size() == 6);
    for (const auto& r : trips) CHECK_MESSAGE(r.ok, r.name << " " << r.detail);
  }
  auto c = correspondence_from_projection(arrow_category(interval(1)).ev_t);
  for (const auto& r : roundtrips_from_correspondence(c)) CHECK_MESSAGE(r.ok, r.name);
}

TEST_CASE("gluing identity correspondences gives C x [2]") {
  for (const auto& c : {interval(1), ret_category()}) {
    auto id = identity_correspondence(c);
    auto g = glue_over_triangle(id, id);
    auto target = product(c, interval(2));
    auto proj = product_projections(c, interval(2), target).second;
    CHECK(find_isomorphism_over(g.projection, proj).has_value());
    CHECK(is_restriction_onto(g.from01, g.projection, {0, 1}));
    CHECK(is_restriction_onto(g.from12, g.projection, {1, 2}));
  }
}

TEST_CASE("gluing points keeps both composites") {
  auto g = glue_over_triangle(collage(point_profunctor({"p", "q"})), collage(point_profunctor({"r"})));
  const int a = g.total.object_index("(0,*)"), c = g.total.object_index("(2,*)");
  CHECK(g.total.hom(a, c).size() == 2);
  CHECK(g.total.find_morphism("(02,*,(*,p,*),(*,r,*))").has_value());
}

TEST_CASE("glue restrictions return the inputs") {
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    auto a = random_category(rng, {2, 5});
    auto b = random_category(rng, {2, 5});
    auto c = random_category(rng, {2, 5});
    auto c01 = collage(random_profunctor(rng, a, b, 4));
    auto c12 = collage(random_profunctor(rng, b, c, 4));
    auto g = glue_over_triangle(c01, c12);
    CHECK(validate_category(g.total).ok());
    CHECK(validate_functor(g.projection).ok());
    CHECK(is_restriction_onto(g.from01, g.projection, {0, 1}));
    CHECK(is_restriction_onto(g.from12, g.projection, {1, 2}));
    for (int x = 0; x < c01.total.object_count(); ++x)
      CHECK(g.projection.object(g.from01.object(x)) == c01.projection.object(x));
    for (int x = 0; x < c12.total.object_count(); ++x)
      CHECK(g.projection.object(g.from12.object(x)) == c12.projection.object(x) + 1);
  }
}

TEST_CASE("glue needs matching middle fibers") {
  auto c01 = identity_correspondence(interval(1));
  auto c12 = identity_correspondence(interval(2));
  CHECK_THROWS_AS(glue_over_triangle(c01, c12), PreconditionError);
}

TEST_CASE("identity correspondences are units") {
  for (const auto& c : {interval(2), ret_category(), walking_isomorphism()}) {
    auto id = identity_correspondence(c);
    auto cc = compose_corr(id, id);
    CHECK(validate_correspondence(cc.result).ok());
    CHECK(iso_to_identity(cc.result, c).has_value());
    auto x = corr_to_bifib(id);
    auto bc = compose_bifib(x, x);
    auto iso = find_profunctor_iso(bifib_to_profunctor(bc.result), bifib_to_profunctor(x));
    REQUIRE(iso);
    CHECK(bifibration_iso(bc.result, x, *iso).has_value());
  }
}

TEST_CASE("a length-two zigzag collapses to one class") {
  auto b = poset({"b0", "b1", "b2"}, {{"b1", "b0"}, {"b2", "b0"}});
  const auto pt = terminal();
  auto p = singleton_profunctor(pt, b, [&](int, int y) {
    return std::vector<std::string>{b.object_id(y) == "b0" ? "w" : "u" + b.object_id(y).substr(1)};
  });
  auto q = singleton_profunctor(b, pt, [&](int y, int) {
    return std::vector<std::string>{b.object_id(y) == "b0" ? "z" : "z" + b.object_id(y).substr(1)};
  });
  REQUIRE(validate_profunctor(p).ok());
  REQUIRE(validate_profunctor(q).ok());
  auto bc = compose_bifib(profunctor_to_bifib(p), profunctor_to_bifib(q));
  CHECK(bc.profunctor.size(0, 0) == 1);
  CHECK(compose_prof(p, q).result.size(0, 0) == 1);
  auto cc = compose_corr(collage(p), collage(q));
  CHECK(corr_to_profunctor(cc.result).size(0, 0) == 1);
}

TEST_CASE("the three composition routes agree") {
  Rng rng(17);
  for (int i = 0; i < 40; ++i) {
    auto a = random_category(rng, {3, 6});
    auto b = random_category(rng, {3, 6});
    auto c = random_category(rng, {3, 6});
    auto p = random_profunctor(rng, a, b, 5);
    auto q = random_profunctor(rng, b, c, 5);
    auto r = check_route_coherence(p, q);
    CHECK(r.corr_vs_coend.holds);
    CHECK(r.bifib_vs_coend.holds);
  }
}

TEST_CASE("products of identity correspondences") {
  auto c = interval(1);
  auto d = walking_isomorphism();
  auto pc = product_corr(identity_correspondence(c), identity_correspondence(d));
  REQUIRE(validate_correspondence(pc).ok());
  CHECK(pc.source() == product(c, d));
  CHECK(iso_to_identity(pc, product(c, d)).has_value());
}

TEST_CASE("opposite correspondences transpose their profunctors") {
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    auto a = random_category(rng, {3, 6});
    auto b = random_category(rng, {3, 6});
    auto c = collage(random_profunctor(rng, a, b, 5));
    auto op = opposite(c);
    REQUIRE(validate_correspondence(op).ok());
    CHECK(same_profunctor(corr_to_profunctor(op), transpose(corr_to_profunctor(c))));
  }
}

TEST_CASE("left final correspondences") {
  auto id = identity_correspondence(ret_category());
  auto lf = is_left_final_corr(id);
  CHECK(lf.holds());
  CHECK(lf.formulations_agree);
  CHECK(is_cocartesian_fibration(id.projection));

  auto empty = collage(empty_profunctor(interval(1), interval(1)));
  auto no = is_left_final_corr(empty);
  CHECK_FALSE(no.holds());
  CHECK(no.formulations_agree);

  // Each P(−, b) has a connected category of elements.
  auto a = poset({"a0", "a1", "a2"}, {{"a0", "a1"}, {"a0", "a2"}});
  auto p = singleton_profunctor(a, terminal(), [](int, int) { return std::vector<std::string>{"u"}; });
  auto yes = is_left_final_corr(collage(p), 2);
  CHECK(yes.holds());
  CHECK(yes.formulations_agree);
  CHECK(is_right_initial_corr(collage(p)).formulations_agree);

  Rng rng(13);
  int checked = 0;
  for (int i = 0; i < 150 && checked < 20; ++i) {
    auto x = random_category(rng, {2, 4});
    auto y = random_category(rng, {2, 4});
    auto z = random_category(rng, {2, 4});
    auto c01 = collage(random_profunctor(rng, x, y, 4));
    auto c12 = collage(random_profunctor(rng, y, z, 4));
    CHECK(is_left_final_corr(c01).formulations_agree);
    CHECK(is_right_initial_corr(c01).formulations_agree);
    if (!is_left_final_corr(c01).holds() || !is_left_final_corr(c12).holds()) continue;
    ++checked;
    CHECK(is_left_final_corr(compose_corr(c01, c12).result).holds());
  }
  CHECK(checked > 0);
}
