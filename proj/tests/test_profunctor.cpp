#include "doctest.h"

#include <set>

#include "fibcat/catalog.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/correspondence.hpp"
#include "fibcat/profunctor.hpp"
#include "fibcat/random.hpp"

using namespace fibcat;

namespace {

Profunctor point_profunctor(std::vector<std::string> elements) {
  const auto pt = terminal();
  return make_profunctor(
      pt, pt, [&](int, int) { return elements; }, [](int, int, int e) { return e; }, [](int, int, int e) { return e; });
}

// Class count at (a, c) by a dense reflexive-symmetric-transitive closure.
int coend_oracle(const Profunctor& p, const Profunctor& q, int a, int c) {
  const auto& b = p.target;
  std::vector<std::array<int, 3>> pairs;
  for (int y = 0; y < b.object_count(); ++y)
    for (int e = 0; e < p.size(a, y); ++e)
      for (int f = 0; f < q.size(y, c); ++f) pairs.push_back({y, e, f});
  const int n = static_cast<int>(pairs.size());
  auto find = [&](int y, int e, int f) {
    for (int i = 0; i < n; ++i)
      if (pairs[i] == std::array<int, 3>{y, e, f}) return i;
    return -1;
  };
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) rel[i][i] = 1;
  for (int be = 0; be < b.morphism_count(); ++be)
    for (int e = 0; e < p.size(a, b.src(be)); ++e)
      for (int f = 0; f < q.size(b.tgt(be), c); ++f) {
        const int i = find(b.tgt(be), p.act_right(a, be, e), f);
        const int j = find(b.src(be), e, q.act_left(be, c, f));
        rel[i][j] = rel[j][i] = 1;
      }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = 1;
  std::set<std::vector<char>> classes(rel.begin(), rel.end());
  return static_cast<int>(classes.size());
}

}  // namespace

TEST_CASE("hom profunctors are valid and planted defects are caught") {
  for (const auto& c : {interval(2), ret_category(), walking_isomorphism(), cyclic_group_2()})
    CHECK(validate_profunctor(hom_profunctor(c)).ok());
  auto p = hom_profunctor(interval(1));
  // Send id_1 ∘ (0->1) elsewhere: breaks the identity action.
  const int id1 = p.target.identity(1);
  p.right[0 * p.target.morphism_count() + id1][0] = 1;
  auto rep = validate_profunctor(p);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().kind == "right_action_codomain");
  CHECK_THROWS_AS(require_valid(p, "p"), ValidationError);
}

TEST_CASE("point profunctors compose without collapsing") {
  auto p = point_profunctor({"p", "q"});
  auto q = point_profunctor({"r"});
  auto pq = compose_prof(p, q);
  CHECK(pq.result.size(0, 0) == 2);
  CHECK(pq.result.at(0, 0) == std::vector<std::string>{"(*,p,r)", "(*,q,r)"});
  CHECK(coend_oracle(p, q, 0, 0) == 2);
}

TEST_CASE("coend classes agree with the closure oracle") {
  Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    auto a = random_category(rng, {3, 6});
    auto b = random_category(rng, {3, 6});
    auto c = random_category(rng, {3, 6});
    auto p = random_profunctor(rng, a, b, 5);
    auto q = random_profunctor(rng, b, c, 5);
    auto pq = compose_prof(p, q);
    REQUIRE(validate_profunctor(pq.result).ok());
    for (int x = 0; x < a.object_count(); ++x)
      for (int z = 0; z < c.object_count(); ++z) CHECK(pq.result.size(x, z) == coend_oracle(p, q, x, z));
  }
}

TEST_CASE("middle mismatch is a precondition failure") {
  auto p = hom_profunctor(interval(1));
  auto q = hom_profunctor(interval(2));
  CHECK_THROWS_AS(compose_prof(p, q), PreconditionError);
}

TEST_CASE("hom profunctors are units through the action") {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    auto a = random_category(rng, {3, 8});
    auto b = random_category(rng, {3, 8});
    auto p = random_profunctor(rng, a, b, 6);
    auto right = compose_prof(p, hom_profunctor(b));
    auto r = comparison_iso(p, hom_profunctor(b), right.result, right.comparison(), p, right_unitor(p));
    CHECK(r.holds);
    auto left = compose_prof(hom_profunctor(a), p);
    auto l = comparison_iso(hom_profunctor(a), p, left.result, left.comparison(), p, left_unitor(p));
    CHECK(l.holds);
  }
}

TEST_CASE("coend composition is associative through an explicit comparison") {
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    auto a = random_category(rng, {2, 5});
    auto b = random_category(rng, {2, 5});
    auto c = random_category(rng, {2, 5});
    auto d = random_category(rng, {2, 5});
    auto p = random_profunctor(rng, a, b, 4);
    auto q = random_profunctor(rng, b, c, 4);
    auto r = random_profunctor(rng, c, d, 4);
    auto pq = compose_prof(p, q);
    auto qr = compose_prof(q, r);
    auto left = compose_prof(pq.result, r);
    auto right = compose_prof(p, qr.result);
    // [[p, q], r] ↦ [p, [q, r]] through the representative of [p, q].
    PairComparison k = [&](int x, int z, int w, int k1, int e) {
      const auto [y, e1, f1] = pq.representatives[x * c.object_count() + z][k1];
      return right.class_of(x, y, w, e1, qr.class_of(y, z, w, f1, e));
    };
    auto res = comparison_iso(pq.result, r, left.result, left.comparison(), right.result, k);
    CHECK(res.holds);
  }
}

TEST_CASE("a collapsing comparison is refused with a witness") {
  auto p = point_profunctor({"p", "q"});
  auto q = point_profunctor({"r"});
  auto pq = compose_prof(p, q);
  auto one = point_profunctor({"u", "v"});
  PairComparison constant = [](int, int, int, int, int) { return 0; };
  auto res = comparison_iso(p, q, pq.result, pq.comparison(), one, constant);
  CHECK_FALSE(res.holds);
  REQUIRE(res.witness);
  CHECK(res.witness->kind == "not_bijective");
}

TEST_CASE("set functor conversion and transpose are lossless") {
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    auto a = random_category(rng, {3, 6});
    auto b = random_category(rng, {3, 6});
    auto p = random_profunctor(rng, a, b, 6);
    auto back = from_set_functor(a, b, as_set_functor(p));
    CHECK(back.elements == p.elements);
    CHECK(back.left == p.left);
    CHECK(back.right == p.right);
    auto tt = transpose(transpose(p));
    CHECK(tt.elements == p.elements);
    CHECK(tt.left == p.left);
    CHECK(tt.right == p.right);
    CHECK(validate_profunctor(transpose(p)).ok());
    auto same = restrict_profunctor(p, identity_functor(a), identity_functor(b));
    CHECK(same.elements == p.elements);
    auto found = find_profunctor_iso(p, same);
    REQUIRE(found);
    CHECK(check_profunctor_iso(p, same, *found));
  }
}

TEST_CASE("Idem and Ret bimodules compose to the identity bimodules") {
  const auto [m, n] = idem_ret_bimodules();
  auto mn = compose_prof(m, n);
  const int y = m.source.object_index("y");
  CHECK(mn.result.size(y, y) == 2);
  auto nm = compose_prof(n, m);
  const auto& ret = n.source;
  const int x = ret.object_index("x"), yr = ret.object_index("y");
  CHECK(nm.result.size(x, x) == 1);
  CHECK(nm.result.size(x, yr) == 1);
  CHECK(nm.result.size(yr, x) == 1);
  CHECK(nm.result.size(yr, yr) == 2);
  auto report = idem_ret_report();
  CHECK(report.coend_idem.holds);
  CHECK(report.coend_ret.holds);
  CHECK(report.corr_idem);
  CHECK(report.corr_ret);
}
