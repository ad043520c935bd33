#include "doctest.h"

#include "fibcat/catalog.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/enumerate.hpp"
#include "fibcat/fibration.hpp"
#include "fibcat/finality.hpp"

using namespace fibcat;

TEST_CASE("points at final objects are final") {
  for (int n = 0; n <= 4; ++n) {
    CHECK(is_final(point(interval(n), n)));
    CHECK(is_final(point(interval(n), n), 2));
    CHECK(is_initial(point(interval(n), 0)));
    if (n > 0) {
      auto v = is_final(point(interval(n), 0));
      CHECK_FALSE(v);
      CHECK(v.witness->kind == "empty_comma");
    }
  }
}

TEST_CASE("right adjoints are final") {
  auto inc = interval_inclusion(2, {1, 2});
  CHECK(is_right_adjoint(inc));
  CHECK(is_final(inc));
  CHECK_FALSE(is_initial(inc));
}

TEST_CASE("product projections are final and initial") {
  for (const auto& c : {interval(2), ret_category(), walking_isomorphism()}) {
    auto prod = product(c, interval(1));
    auto pr = product_projections(c, interval(1), prod).first;
    CHECK(is_final(pr, 2));
    CHECK(is_initial(pr, 2));
  }
}

TEST_CASE("disconnected commas") {
  // {a, b} → [1] both to 0: comma 1/F is empty; 0/F is two points.
  auto f = Functor::from_ids(discrete({"a", "b"}), interval(0), {{"a", "0"}, {"b", "0"}});
  auto v = is_final(f);
  CHECK_FALSE(v);
  CHECK(v.witness->kind == "disconnected_comma");
}

TEST_CASE("certified mode sees a circle") {
  // The inclusion of the boundary of a square into its cone point fails certified mode only.
  auto circle = poset({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
  auto f = to_terminal(circle);
  CHECK(is_final(f));
  auto v = is_final(f, 2);
  CHECK_FALSE(v);
  CHECK(v.witness->kind == "comma_homology");
  CHECK(v.entries[0].homology_trivial == false);
}

TEST_CASE("Theorem B hypothesis") {
  CHECK(theoremB_hypothesis(identity_functor(interval(2)), 2));
  CHECK(theoremB_hypothesis(arrow_category(interval(1)).ev_t, 2));
  // An isomorphism of slices is needed only up to homology.
  auto f = interval_inclusion(2, {0, 2});
  CHECK(theoremB_hypothesis(f, 2));
  auto g = Functor::from_ids(discrete({"a", "b"}), interval(1), {{"a", "0"}, {"b", "1"}});
  CHECK_FALSE(theoremB_hypothesis(g, 1));
}

TEST_CASE("Quillen B at pi0") {
  // Right leg: a discrete opfibration with constant two-element fibers over [1].
  auto e = poset({"a0", "a1", "b0", "b1"}, {{"a0", "a1"}, {"b0", "b1"}});
  auto right = Functor::from_ids(e, interval(1), {{"a0", "0"}, {"a1", "1"}, {"b0", "0"}, {"b1", "1"}});
  CHECK(is_left_final(right));
  CHECK(is_right_initial(right));
  auto sq = pullback_square(right, point(interval(1), 1));
  CHECK(quillenB_pi0_square(sq));
  CHECK(sq.top.source().object_count() == 2);
  auto sq2 = pullback_square(right, identity_functor(interval(1)));
  CHECK(quillenB_pi0_square(sq2));
  auto bad = interval_inclusion(2, {0, 2});
  CHECK_THROWS_AS(quillenB_pi0_square(pullback_square(bad, point(interval(2), 1))), PreconditionError);
  // Empty X.
  auto empty = Functor(empty_category(), interval(1), {}, {});
  CHECK(quillenB_pi0_square(pullback_square(empty, point(interval(1), 0))));
}

TEST_CASE("pi0 maps") {
  auto f = Functor::from_ids(discrete({"a", "b"}), interval(1), {{"a", "0"}, {"b", "1"}});
  CHECK(pi0_map(f) == std::vector<int>{0, 0});
}
