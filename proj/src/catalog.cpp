#include "fibcat/catalog.hpp"

namespace fibcat {

FiniteCategory ret_category() {
  CategoryTable t;
  t.objects = {"x", "y"};
  t.morphisms = {{"id_x", "x", "x"}, {"id_y", "y", "y"}, {"s", "x", "y"}, {"r", "y", "x"}, {"e", "y", "y"}};
  t.identities = {{"x", "id_x"}, {"y", "id_y"}};
  auto unit = [&](const std::string& a, const std::string& b) {
    t.compose.push_back({a, b, a == "id_x" || a == "id_y" ? b : a});
  };
  unit("id_x", "id_x");
  unit("id_y", "id_y");
  unit("id_y", "s");
  unit("id_y", "e");
  unit("id_x", "r");
  t.compose.push_back({"s", "id_x", "s"});
  t.compose.push_back({"r", "id_y", "r"});
  t.compose.push_back({"e", "id_y", "e"});
  t.compose.push_back({"r", "s", "id_x"});
  t.compose.push_back({"s", "r", "e"});
  t.compose.push_back({"e", "s", "s"});
  t.compose.push_back({"r", "e", "r"});
  t.compose.push_back({"e", "e", "e"});
  return FiniteCategory::from_table(t);
}

FiniteCategory idem_category() { return idem_inclusion().source(); }

Functor idem_inclusion() {
  auto r = ret_category();
  return full_subcategory(r, {r.object_index("y")}).inclusion;
}

FiniteCategory walking_isomorphism() {
  CategoryTable t;
  t.objects = {"a", "b"};
  t.morphisms = {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"f", "a", "b"}, {"g", "b", "a"}};
  t.identities = {{"a", "id_a"}, {"b", "id_b"}};
  t.compose = {{"id_a", "id_a", "id_a"}, {"id_b", "id_b", "id_b"}, {"id_b", "f", "f"}, {"f", "id_a", "f"},
               {"id_a", "g", "g"},       {"g", "id_b", "g"},       {"g", "f", "id_a"}, {"f", "g", "id_b"}};
  return FiniteCategory::from_table(t);
}

FiniteCategory cyclic_group_2() { return monoid({"1", "g"}, {{0, 1}, {1, 0}}); }

FiniteCategory named_category(const std::string& name) {
  auto arg = [&](const std::string& prefix) -> int {
    try {
      return std::stoi(name.substr(prefix.size()));
    } catch (const std::exception&) {
      throw SchemaError("bad category name '" + name + "'");
    }
  };
  if (name.rfind("interval:", 0) == 0) return interval(arg("interval:"));
  if (name.rfind("arrow:", 0) == 0) return arrow_category(interval(arg("arrow:"))).category;
  if (name == "ret") return ret_category();
  if (name == "idem") return idem_category();
  if (name == "walking_iso") return walking_isomorphism();
  if (name == "z2") return cyclic_group_2();
  if (name == "terminal") return terminal();
  throw SchemaError("unknown category name '" + name + "'");
}

std::vector<NamedCategory> small_categories() {
  const auto z3 = monoid({"1", "g", "h"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CategoryTable pair;
  pair.objects = {"a", "b"};
  pair.morphisms = {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"f", "a", "b"}, {"g", "a", "b"}};
  pair.identities = {{"a", "id_a"}, {"b", "id_b"}};
  pair.compose = {{"id_a", "id_a", "id_a"}, {"id_b", "id_b", "id_b"}, {"id_b", "f", "f"},
                  {"id_b", "g", "g"},       {"f", "id_a", "f"},       {"g", "id_a", "g"}};
  return {
      {"empty", empty_category()},
      {"[0]", terminal()},
      {"{a,b}", discrete({"a", "b"})},
      {"[1]", interval(1)},
      {"{a,b,c}", discrete({"a", "b", "c"})},
      {"[1]+[0]", poset({"a", "b", "c"}, {{"a", "b"}})},
      {"a<b,a<c", poset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}})},
      {"b<a,c<a", poset({"a", "b", "c"}, {{"b", "a"}, {"c", "a"}})},
      {"[2]", interval(2)},
      {"walking_iso", walking_isomorphism()},
      {"BZ2", cyclic_group_2()},
      {"BZ3", z3},
      {"B{1,e}", monoid({"1", "e"}, {{0, 1}, {1, 1}})},
      {"Ret", ret_category()},
      {"parallel_pair", FiniteCategory::from_table(pair)},
      {"codiscrete3", poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}})},
      {"BZ2+[0]", coproduct(cyclic_group_2(), terminal())},
      {"walking_iso+[0]", coproduct(walking_isomorphism(), terminal())},
  };
}

}  // namespace fibcat
