#pragma once

#include <string>
#include <vector>

#include "fibcat/category.hpp"
#include "fibcat/constructions.hpp"

namespace fibcat {

// Objects x, y; s: x → y, r: y → x with r ∘ s = id_x, and e = s ∘ r.
FiniteCategory ret_category();
// The full subcategory of Ret on y: {id_y, e} with e ∘ e = e.
FiniteCategory idem_category();
Functor idem_inclusion();
// Objects a, b; f: a → b and its inverse g.
FiniteCategory walking_isomorphism();
// One object, the group of order two {1, g}.
FiniteCategory cyclic_group_2();

// Names understood by named_category: "interval:N", "ret", "idem",
// "walking_iso", "z2", "terminal", "arrow:N" (Ar([N])).
FiniteCategory named_category(const std::string& name);

// A fixed finite family of categories with at most three objects: every
// poset on up to three elements up to isomorphism, the walking isomorphism,
// the monoids Z/2, Z/3 and {1, e}, Ret, the parallel pair, the codiscrete
// category on three objects, and two disjoint unions.
struct NamedCategory {
  std::string name;
  FiniteCategory category;
};
std::vector<NamedCategory> small_categories();

}  // namespace fibcat
