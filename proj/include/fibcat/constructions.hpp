#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibcat/category.hpp"
#include "fibcat/functor.hpp"

namespace fibcat {

// ---- builders -------------------------------------------------------------

// The poset (or preorder) generated by `relations` under reflexive-transitive
// closure. Morphism ids are "a->b".
FiniteCategory poset(const std::vector<std::string>& elements,
                     const std::vector<std::pair<std::string, std::string>>& relations);

// [n] = {0 < 1 < ... < n}; objects "0".."n", morphisms "i->j".
FiniteCategory interval(int n);
// The full sub-poset of [n] on the given points, with the same ids.
FiniteCategory sub_interval(const std::vector<int>& points);
// Inclusion {i_0 < ... < i_k} ↪ [n].
Functor interval_inclusion(int n, const std::vector<int>& points);

FiniteCategory terminal();
FiniteCategory empty_category();
FiniteCategory discrete(const std::vector<std::string>& objects);

// One-object category on `elements` (elements[0] is the unit) with
// multiplication table mult[g][f] = index of g∘f. The object is "*".
FiniteCategory monoid(const std::vector<std::string>& elements,
                      const std::vector<std::vector<int>>& mult);

// ---- duality, products, limits -------------------------------------------

// Same ids, sources and targets swapped, composition reversed.
FiniteCategory opposite(const FiniteCategory& c);

// Objects "(c,d)", morphisms "(f,g)".
FiniteCategory product(const FiniteCategory& c, const FiniteCategory& d);
std::pair<Functor, Functor> product_projections(const FiniteCategory& c, const FiniteCategory& d,
                                                const FiniteCategory& prod);
// F × G : A × B → C × D
Functor product(const Functor& f, const Functor& g);

// Objects "(0,x)" and "(1,y)".
FiniteCategory coproduct(const FiniteCategory& c, const FiniteCategory& d);

struct Pullback {
  FiniteCategory category;
  Functor first;   // to the source of F
  Functor second;  // to the source of G
};
// Strict fiber product A ×_C B; objects "(a,b)", morphisms "(f,g)".
Pullback pullback(const Functor& f, const Functor& g);

// ---- sub-structures -------------------------------------------------------

struct Subcategory {
  FiniteCategory category;  // same ids as the ambient category
  Functor inclusion;
};
// Throws SchemaError if the data is not closed under identities/composition.
Subcategory subcategory(const FiniteCategory& c, const std::vector<int>& objects,
                        const std::vector<int>& morphisms);
Subcategory full_subcategory(const FiniteCategory& c, const std::vector<int>& objects);
// Objects over x and morphisms over id_x.
Subcategory fiber(const Functor& pi, int x);
// Objects over the base objects in `base_objects`, morphisms over `base_morphisms`.
Subcategory preimage(const Functor& pi, const std::vector<int>& base_objects,
                     const std::vector<int>& base_morphisms);

// ---- slices and commas ----------------------------------------------------

struct Comma {
  FiniteCategory category;
  Functor to_source;  // to A
  Functor to_target;  // to B
};
// F ↓ G: objects (a, b, φ: F a → G b) with id "(a,φ,b)".
Comma comma(const Functor& f, const Functor& g);

struct Slice {
  FiniteCategory category;
  Functor forget;
};
// C_{/x}: objects are morphisms into x (same ids).
Slice slice(const FiniteCategory& c, int x);
// C^{x/}: objects are morphisms out of x (same ids).
Slice coslice(const FiniteCategory& c, int x);

// ---- arrows ---------------------------------------------------------------

struct ArrowCategory {
  FiniteCategory category;  // objects are the morphisms of C (same ids)
  Functor ev_s, ev_t;
};
ArrowCategory arrow_category(const FiniteCategory& c);

struct TwistedArrows {
  FiniteCategory category;  // objects are the morphisms of C (same ids)
  Functor projection;       // to opposite(C) × C
};
TwistedArrows twisted_arrows(const FiniteCategory& c);

// ---- relabeling and isomorphism search -----------------------------------

FiniteCategory relabel(const FiniteCategory& c,
                       const std::function<std::string(const std::string&)>& object_id,
                       const std::function<std::string(const std::string&)>& morphism_id);

// Brute-force isomorphism search for small categories. If `over` is given as
// (p: C → K, q: D → K), the isomorphism must satisfy q ∘ iso = p.
std::optional<Functor> find_isomorphism(const FiniteCategory& c, const FiniteCategory& d);
std::optional<Functor> find_isomorphism_over(const Functor& p, const Functor& q);

}  // namespace fibcat
