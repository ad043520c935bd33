#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibcat/category.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/enumerate.hpp"
#include "fibcat/functor.hpp"

namespace fibcat {

// ---- morphism-level checks ------------------------------------------------

// f: e → e' is coCartesian if every g: e → e'' together with a factorization
// π(g) = u ∘ π(f) lifts to a unique h: e' → e'' over u with h ∘ f = g.
Verdict is_cocartesian_morphism(const Functor& pi, int f);
Verdict is_cartesian_morphism(const Functor& pi, int f);
// Only factorizations through identities of the target are considered.
Verdict is_locally_cocartesian_morphism(const Functor& pi, int f);
Verdict is_locally_cartesian_morphism(const Functor& pi, int f);

// The chosen coCartesian lift of u out of e: the identity when u is one,
// otherwise the least coCartesian lift. -1 if none exists.
int cocartesian_lift(const Functor& pi, int e, int u);
int cartesian_lift(const Functor& pi, int e, int u);

// ---- fibration classes ----------------------------------------------------

Verdict is_cocartesian_fibration(const Functor& pi);
Verdict is_cartesian_fibration(const Functor& pi);
// Base change along each morphism [1] → K, then a fibration check over [1].
Verdict is_locally_cocartesian(const Functor& pi);
Verdict is_locally_cartesian(const Functor& pi);

// Every morphism over an isomorphism is an isomorphism.
Verdict is_conservative(const Functor& pi);
// Unique lifts with fixed source (resp. target).
Verdict is_discrete_opfibration(const Functor& pi);
Verdict is_discrete_fibration(const Functor& pi);
// Conservative and (co)Cartesian.
Verdict is_left_fibration(const Functor& pi);
Verdict is_right_fibration(const Functor& pi);

// E_{|J} → J for G: J → K. `first` goes to J, `second` to E.
Pullback base_change(const Functor& pi, const Functor& g);

// E ×_K Iso(K) → K: objects (e, θ: π(e) ≅ y) over y. Equivalent to E over K,
// and isomorphic to π when K has no non-identity isomorphisms.
struct IsofibrationReplacement {
  Functor projection;
  Functor unit;  // E → E', e ↦ (e, id)
};
IsofibrationReplacement isofibration_replacement(const Functor& pi);
bool has_nonidentity_isomorphisms(const FiniteCategory& c);

// Objects (e1, a: e0 → e1 over u, b: e1 → e2 over v) with b ∘ a = h;
// morphisms are maps e1 → e1' over id_y compatible with a and b.
FiniteCategory factorization_category(const Functor& pi, int u, int v, int h);

// Conduché condition: every factorization category is nonempty and
// connected. With certify_dim ≥ 0 each one must also have trivial reduced
// homology through that degree. Over bases with non-identity isomorphisms the
// condition is checked on the isofibration replacement, as are the finality
// conditions below; witness ids then refer to the replacement.
Verdict is_exponentiable(const Functor& pi, int certify_dim = -1);

// Exponentiable, and for each morphism [1] → K the fiber over the target
// is final in the base change (checked on undercategories of source objects).
Verdict is_left_final(const Functor& pi, int certify_dim = -1);
Verdict is_right_initial(const Functor& pi, int certify_dim = -1);

// ---- adjoints -------------------------------------------------------------

std::optional<int> initial_object(const FiniteCategory& c);
std::optional<int> final_object(const FiniteCategory& c);

struct AdjointVerdict {
  bool holds = false;
  std::optional<Witness> witness;
  // For a right adjoint F: C → D, the left adjoint on objects (D → C) and the
  // unit d → F(L d). For a left adjoint, the right adjoint and the counit
  // F(R d) → d.
  std::vector<int> adjoint_objects;
  std::vector<int> unit_or_counit;
  explicit operator bool() const { return holds; }
};
AdjointVerdict is_right_adjoint(const Functor& f);
AdjointVerdict is_left_adjoint(const Functor& f);

bool is_equivalence(const Functor& f);

// ---- sections -------------------------------------------------------------

struct SectionRestriction {
  bool bijective_on_sections = false;
  bool isomorphism = false;
  std::size_t sections = 0, restricted_sections = 0;
  std::optional<Witness> witness;
};
// Restriction Fun_{/K}(J, E) → Fun_{/K}(J0, E) along sigma: J0 → J, where
// p: J → K.
SectionRestriction check_section_restriction(const Functor& pi, const Functor& sigma, const Functor& p,
                                             std::size_t cap = kDefaultEnumerationCap);

// ---- profile --------------------------------------------------------------

inline const std::vector<std::string>& profile_keys() {
  static const std::vector<std::string> keys = {
      "conservative",      "discrete_opfibration", "discrete_fibration",  "left_fibration",
      "right_fibration",   "cocartesian",          "cartesian",           "locally_cocartesian",
      "locally_cartesian", "exponentiable",        "left_final",          "right_initial"};
  return keys;
}
// The key with left and right exchanged.
std::string dual_key(const std::string& key);

struct FibrationProfile {
  std::map<std::string, Verdict> verdicts;
  int certify_dim = -1;
  bool operator[](const std::string& key) const { return verdicts.at(key).holds; }
};

// Runs every checker; throws InvariantError if the implications among the
// classes fail on this instance.
FibrationProfile classify(const Functor& pi, int certify_dim = -1);
// Returns the first violated implication, if any.
std::optional<std::string> implication_violation(const FibrationProfile& p);

// ---- equivalent-condition menus ------------------------------------------

struct MenuGroup {
  std::string name;
  std::vector<std::pair<std::string, bool>> conditions;
  bool agree() const;
};
struct MenuReport {
  std::vector<MenuGroup> groups;
  bool agree() const;
  std::optional<std::string> disagreement() const;
};

// Per morphism [1] → K: the base change is coCartesian iff the target fiber
// inclusion is a right adjoint; dually for Cartesian and the source fiber.
MenuReport menu_fiber_adjoints(const Functor& pi);
// Locally coCartesian iff each E_{|y} → E_{/y} is a right adjoint iff each
// ev_s on sections over [1] is a right adjoint; dually.
MenuReport menu_locally_cocartesian(const Functor& pi);
// The six characterizations of left fibrations, and their duals.
MenuReport menu_left_fibration(const Functor& pi);
// Three formulations of left finality, and dually of right initiality.
MenuReport menu_left_final(const Functor& pi);
// coCartesian iff locally coCartesian and exponentiable, and its variants
// over [2]; dually.
MenuReport menu_cocartesian_over_2(const Functor& pi);

}  // namespace fibcat
