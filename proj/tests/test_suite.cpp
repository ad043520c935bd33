#include "doctest.h"

#include <set>

#include "fibcat/catalog.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/finality.hpp"
#include "fibcat/suite.hpp"
#include "fibcat/transport.hpp"

using namespace fibcat;

namespace {

FiniteCategory z3() { return monoid({"1", "g", "h"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}); }

bool small_diagrams_detect(const Functor& f) {
  for (const auto& g : enumerate_set_functors(f.target(), 2))
    if (!colimit_map_bijective(f, g)) return true;
  return false;
}

}  // namespace

TEST_CASE("colimit comparison on final and non-final functors") {
  auto top = point(interval(2), 2);
  for (const auto& g : enumerate_set_functors(interval(2), 2)) CHECK(colimit_map_bijective(top, g));
  CHECK(small_diagrams_detect(point(interval(2), 0)));
  // The point of BZ2 is seen by the swap action on two elements.
  CHECK(small_diagrams_detect(point(cyclic_group_2(), 0)));
  CHECK_FALSE(is_final(point(cyclic_group_2(), 0)));
}

TEST_CASE("the point of BZ3 is not final but no diagram of size 2 notices") {
  auto f = point(z3(), 0);
  CHECK_FALSE(is_final(f));
  CHECK_FALSE(small_diagrams_detect(f));
  // The regular action does.
  CHECK_FALSE(colimit_map_bijective(f, corepresentable(z3(), 0)));
}

TEST_CASE("instance seeds separate criteria and indices") {
  std::set<std::uint64_t> seen;
  for (int c = 1; c <= 12; ++c)
    for (int i = 0; i < 50; ++i) seen.insert(instance_seed(7, c, i));
  CHECK(seen.size() == 600);
  CHECK(instance_seed(7, 1, 0) != instance_seed(8, 1, 0));
}

TEST_CASE("small suite runs pass and are reproducible") {
  SuiteOptions opt;
  opt.seed = 5;
  opt.size = 3;
  opt.criteria = {1, 2, 3, 4, 5, 6, 7, 9, 10, 11};
  auto a = run_suite(opt);
  for (const auto& r : a.results) CHECK_MESSAGE(r.pass, r.number << ": " << r.detail);
  opt.threads = 2;
  auto b = run_suite(opt);
  CHECK(dump(emit_report(a)) == dump(emit_report(b)));
  CHECK_FALSE(emit_report(a)["criteria"][0].contains("seconds"));
  opt.timing = true;
  CHECK(emit_report(b).dump() != emit_report(run_suite(opt)).dump());
}

TEST_CASE("criterion 8 reports both directions") {
  SuiteOptions opt;
  auto r = run_criterion(8, opt);
  CHECK_FALSE(r.pass);
  CHECK(r.detail.find("0 violations") != std::string::npos);
  CHECK(r.detail.find("corepresentable diagrams disagree on 0") != std::string::npos);
  for (const auto& f : r.failed) CHECK(f.detail.find("-> BZ3") != std::string::npos);
}

TEST_CASE("unknown criteria are refused") { CHECK_THROWS_AS(run_criterion(13, SuiteOptions{}), PreconditionError); }
