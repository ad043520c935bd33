#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibcat/category.hpp"
#include "fibcat/enumerate.hpp"
#include "fibcat/fibration.hpp"
#include "fibcat/functor.hpp"
#include "fibcat/set_functor.hpp"

namespace fibcat {

using SetValuedFunctor = SetFunctor;

// A strict functor K → Cat with finite values.
struct CatValuedFunctor {
  FiniteCategory base;
  std::vector<FiniteCategory> values;  // per object
  std::vector<Functor> maps;           // per morphism: values[src] → values[tgt]
};

// Kinds: shape, map_typing, invalid_value, invalid_map, identity, composite.
ValidationReport validate_cat_functor(const CatValuedFunctor& f);
void require_valid(const CatValuedFunctor& f, std::string_view what);
CatValuedFunctor constant_cat_functor(const FiniteCategory& k, const FiniteCategory& c);

// ---- (co)Cartesian replacement -------------------------------------------

// E ×_K Ar(K) → K with unit e ↦ (e, id). For the coCartesian replacement
// the pullback is along ev_s and the projection is ev_t; the Cartesian one
// is its dual.
struct CartesianReplacement {
  Functor projection;
  Functor unit;
  // Set when π is already (co)Cartesian: the adjoint of the unit, over K,
  // with adjoint ∘ unit = id and both triangle identities verified.
  std::optional<Functor> adjoint;
};
// Throws InvariantError if the output is not (co)Cartesian, the unit is not
// fully faithful, or (for (co)Cartesian π) the adjunction fails.
CartesianReplacement cocart_replacement(const Functor& pi);
CartesianReplacement cart_replacement(const Functor& pi);

// ---- discrete (un)straightening -------------------------------------------

// Objects (x, e) for e ∈ F(x); morphisms (f, e) from (x, e) to (y, F(f)(e)).
Functor unstraighten(const SetFunctor& f);
// Same ids, F on K^op, giving a discrete fibration over K.
Functor unstraighten_contravariant(const SetFunctor& f);
// Values are the fiber object ids; transport along the unique lifts.
SetFunctor straighten_discrete_opfib(const Functor& pi);
SetFunctor straighten_discrete_fib(const Functor& pi);  // on K^op

// straighten ∘ unstraighten ≅ F through e ↦ (x, e).
bool check_discrete_roundtrip(const SetFunctor& f);
// unstraighten ∘ straighten ≅ π over K through (x, e) ↦ e.
bool check_discrete_roundtrip(const Functor& pi);

// Every functor K → FinSet with values {"0", .., "n-1"}, n ≤ max_size.
std::vector<SetFunctor> enumerate_set_functors(const FiniteCategory& k, int max_size,
                                               std::size_t cap = kDefaultEnumerationCap);

// ---- left and right fibration replacement --------------------------------

struct FibrationReplacement {
  SetFunctor values;  // on K, resp. on K^op for the right-handed version
  Functor fibration;  // its unstraightening over K
  Functor unit;       // J → total category of `fibration`, over K
};
// Values at x are the components of π ↓ x, ids being the least comma object
// "(j,φ,*)" of each; transport by postcomposition.
FibrationReplacement lfib_replacement(const Functor& pi);
// Components of x ↓ π, computed on opposites: ids "(j,φ,*)" with φ: x → π(j).
FibrationReplacement rfib_replacement(const Functor& pi);

struct UniversalPropertyCheck {
  bool holds = false;
  std::size_t replaced = 0, original = 0;  // |Fun_{/K}(J', Z)|, |Fun_{/K}(J, Z)|
  std::optional<Witness> witness;
  explicit operator bool() const { return holds; }
};
// Restriction along the unit, Fun_{/K}(J', Z) → Fun_{/K}(J, Z), is a bijection.
UniversalPropertyCheck check_replacement_universal_property(const FibrationReplacement& r, const Functor& pi,
                                                            const Functor& z,
                                                            std::size_t cap = kDefaultEnumerationCap);

// ---- relative classifying space ------------------------------------------

struct RelativeClassifyingSpace {
  Functor projection;  // conservative, over K
  Functor unit;        // E → result, over K
  // Built from left finality (the result is a discrete opfibration) or
  // from right initiality (a discrete fibration).
  bool from_left_final = true;
};
// Objects (x, least object id of a component of E_{|x}). Refused with the
// failing finality witness unless π is left final or right initial.
RelativeClassifyingSpace relative_classifying_space(const Functor& pi);

// ---- category-valued (un)straightening ------------------------------------

// Objects (x, e); the morphism (f, φ: F(f)(e) → e') has id "(e,f,φ)", or
// "(e,f)" when φ is an identity, so the canonical lifts are the least ones.
Functor unstraighten_cat(const CatValuedFunctor& f);

struct CleavageReport {
  struct Lift {
    int object = -1;  // in E
    int base = -1;    // morphism of K
    int lift = -1;    // morphism of E
  };
  // c: F(g∘f)(e) → F(g)(F(f)(e)), the vertical map with
  // c ∘ lift(e, g∘f) = lift(F(f)(e), g) ∘ lift(e, f).
  struct Comparison {
    int f = -1, g = -1, object = -1;
    int morphism = -1;
  };
  std::vector<Lift> lifts;
  std::vector<Comparison> comparisons;
  bool split = false;
};
struct Straightening {
  CleavageReport cleavage;
  std::optional<CatValuedFunctor> functor;  // only when split
};
// Fibers keep the ids of E. Throws PreconditionError unless π is
// coCartesian, InvariantError if a comparison is not invertible or the
// cocycle identity fails.
Straightening straighten_cocart(const Functor& pi);

// straighten_cocart ∘ unstraighten_cat recovers F strictly: split, with
// isomorphisms F(x) ≅ F'(x), e ↦ (x, e), commuting on the nose with every F(f).
bool check_cat_roundtrip(const CatValuedFunctor& f);

// ---- maximal sub-fibrations -----------------------------------------------

struct SubFibration {
  Functor projection;
  Functor inclusion;  // wide subcategory ↪ E
};
// The wide subcategory on the coCartesian (resp. Cartesian) morphisms.
SubFibration maximal_left_subfibration(const Functor& pi);
SubFibration maximal_right_subfibration(const Functor& pi);

// ---- pushforward -----------------------------------------------------------

// π_*Z → K for exponentiable π: E → K and ζ: Z → E. Objects over x are
// functors E_{|x} → Z over E, morphisms over f functors E_{|f} → Z over E,
// where E_{|f} is the base change along f: [1] → K with objects "(0,e)",
// "(1,e)".
struct Pushforward {
  Functor projection;
  std::vector<Functor> object_sections;    // per object: E_{|x} → Z
  std::vector<Functor> morphism_sections;  // per morphism: E_{|f} → Z
};
Pushforward pushforward_exponentiable(const Functor& pi, const Functor& zeta,
                                      std::size_t cap = kDefaultEnumerationCap);

struct AdjunctionCheck {
  bool holds = false;
  std::size_t over_k = 0, over_e = 0;  // |Fun_{/K}(J, π_*Z)|, |Fun_{/E}(J ×_K E, Z)|
  std::optional<Witness> witness;
  explicit operator bool() const { return holds; }
};
// The transpose Fun_{/K}(J, π_*Z) → Fun_{/E}(J ×_K E, Z) for p: J → K is
// well defined and bijective.
AdjunctionCheck check_pushforward_adjunction(const Pushforward& pf, const Functor& pi, const Functor& zeta,
                                             const Functor& p, std::size_t cap = kDefaultEnumerationCap);

// ---- Kan extension along a fibration --------------------------------------

enum class KanDirection { left, right };

// Left: colimits over the fibers, ids the least "(e,a)" of each class.
// Right: compatible families over the fibers, ids "(a1,..,an)" in fiber
// object order. Each value is cross-checked against the comma formula
// (π ↓ x, resp. x ↓ π); a mismatch throws InvariantError.
SetFunctor kan_extend_along_fibration(const Functor& pi, const SetFunctor& f, KanDirection direction);

}  // namespace fibcat
