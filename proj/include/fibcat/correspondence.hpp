#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fibcat/constructions.hpp"
#include "fibcat/finality.hpp"
#include "fibcat/functor.hpp"
#include "fibcat/profunctor.hpp"

namespace fibcat {

// A category over [1] with its two fibers named by isomorphisms onto the
// strict fibers.
struct Correspondence {
  FiniteCategory total;
  Functor projection;  // total → [1]
  Functor include_s;   // A → total, onto the fiber over 0
  Functor include_t;   // B → total, onto the fiber over 1

  const FiniteCategory& source() const { return include_s.source(); }
  const FiniteCategory& target() const { return include_t.source(); }
};

ValidationReport validate_correspondence(const Correspondence& c);
void require_valid(const Correspondence& c, std::string_view what);

// Any functor to [1], with the strict fibers as named fibers.
Correspondence correspondence_from_projection(const Functor& pi);
// C × [1] → [1].
Correspondence identity_correspondence(const FiniteCategory& c);
// Objects "(0,a)", "(1,b)"; morphisms "(0,α)", "(1,β)" and "(a,x,b)" for x ∈ P(a, b).
Correspondence collage(const Profunctor& p);
// Elements are the morphisms a → b of the total category.
Profunctor corr_to_profunctor(const Correspondence& c);
// E^op over [1] with the ends exchanged: source B^op, target A^op.
Correspondence opposite(const Correspondence& c);
// Fiber product of the totals over [1].
Correspondence product_corr(const Correspondence& c, const Correspondence& d);

// A functor X → A × B.
struct Bifibration {
  FiniteCategory total;
  Functor projection;
  FiniteCategory source;  // A
  FiniteCategory target;  // B
};

// Unique lifts of (id, β) with given source and of (α, id) with given
// target, and every morphism over (α, β) is the composite of the two.
Verdict check_two_sided_discrete(const Bifibration& x);
void require_two_sided_discrete(const Bifibration& x, std::string_view what);

// Objects are the morphisms a → b of the total category (same ids), morphisms
// the commuting squares "(h,α,β,h')".
Bifibration corr_to_bifib(const Correspondence& c);
// Elements at (a, b) are the ids of the objects over (a, b).
Profunctor bifib_to_profunctor(const Bifibration& x);
// Objects "(a,x,b)", morphisms "(s,α,β,t)".
Bifibration profunctor_to_bifib(const Profunctor& p);
Correspondence bifib_to_corr(const Bifibration& x);

// The functor between totals induced by iso: P_c ≅ P_d, when it is an
// isomorphism over [1] commuting with the fiber inclusions.
std::optional<Functor> correspondence_iso(const Correspondence& c, const Correspondence& d, const ProfunctorIso& iso);
// The functor X → Y induced by iso: P_X ≅ P_Y, when it is an isomorphism over A × B.
std::optional<Functor> bifibration_iso(const Bifibration& x, const Bifibration& y, const ProfunctorIso& iso);

struct RoundTrip {
  std::string name;  // e.g. "P->C->X->P"
  bool ok = false;
  std::string detail;
};
std::vector<RoundTrip> roundtrips_from_profunctor(const Profunctor& p);
std::vector<RoundTrip> roundtrips_from_correspondence(const Correspondence& c);
std::vector<RoundTrip> roundtrips_from_bifibration(const Bifibration& x);
// All six, starting from P, collage(P) and profunctor_to_bifib(P).
std::vector<RoundTrip> all_roundtrips(const Profunctor& p);

// The category over [2] with E01 over {0<1} and E12 over {1<2}. Objects
// "(0,a)", "(1,b)", "(2,c)"; morphisms "(0,α)", "(1,β)", "(2,γ)", "(01,h)",
// "(12,k)" and "(02,b,h,k)" for the least pair (h, k) of each class.
struct Glued {
  FiniteCategory total;
  Functor projection;  // total → [2]
  Functor from01;      // E01 → total
  Functor from12;      // E12 → total
};
// Throws PreconditionError unless c01.target() == c12.source().
Glued glue_over_triangle(const Correspondence& c01, const Correspondence& c12);

struct CorrComposite {
  Correspondence result;
  Glued glued;
  Pullback base_change;  // along {0<2} ↪ [2]
  Correspondence first, second;
  // (h, k) ↦ index of the composite in corr_to_profunctor(result).
  std::map<std::pair<int, int>, int> pair_index;
  // Indices into corr_to_profunctor(first), corr_to_profunctor(second) and
  // corr_to_profunctor(result).
  PairComparison comparison() const;
};
CorrComposite compose_corr(const Correspondence& c01, const Correspondence& c12);

struct BifibComposite {
  Bifibration result;
  Profunctor profunctor;  // the fiberwise components, read as a profunctor
  Pullback over_middle;   // X01 ×_B X12
  // Pullback object → class index in profunctor.at(a, c).
  std::vector<int> class_of;
  Bifibration first, second;
  // Pullback object → index in bifib_to_profunctor(result).at(a, c).
  std::vector<int> result_index;
  // Indices into bifib_to_profunctor(first), bifib_to_profunctor(second) and
  // bifib_to_profunctor(result).
  PairComparison comparison() const;
};
BifibComposite compose_bifib(const Bifibration& x01, const Bifibration& x12);

// Three routes to P ⊗ Q compared with the coend through canonical isos.
struct RouteCoherence {
  ComparisonResult corr_vs_coend;
  ComparisonResult bifib_vs_coend;
  bool holds() const { return corr_vs_coend.holds && bifib_vs_coend.holds; }
};
RouteCoherence check_route_coherence(const Profunctor& p, const Profunctor& q);

// The comparison sending (p, q) to q ∘ p in `ambient`, read in R by id; the
// elements of P, Q and R are morphism ids of `ambient`.
PairComparison composite_in(const FiniteCategory& ambient, const Profunctor& p, const Profunctor& q,
                            const Profunctor& r);

// M = Ret(ι−, −): Idem ⇸ Ret and N = Ret(−, ι−): Ret ⇸ Idem for ι: Idem ↪ Ret.
struct IdemRetBimodules {
  Profunctor m, n;
};
IdemRetBimodules idem_ret_bimodules();
// M ⊗_Ret N ≅ Hom_Idem and N ⊗_Idem M ≅ Hom_Ret through composition in Ret,
// by the coend and by gluing collages.
struct IdemRetReport {
  ComparisonResult coend_idem, coend_ret;
  bool corr_idem = false, corr_ret = false;
  bool holds() const { return coend_idem.holds && coend_ret.holds && corr_idem && corr_ret; }
};
IdemRetReport idem_ret_report();

// The target fiber inclusion is final, with the other formulations.
struct CorrFinality {
  FinalityVerdict inclusion;  // B → E final
  bool sections_final = false;  // ev_s: sections over [1] → A final (ev_t, initial)
  bool formulations_agree = false;
  bool holds() const { return inclusion.holds; }
};
CorrFinality is_left_final_corr(const Correspondence& c, int certify_dim = -1);
// The source fiber inclusion is initial, with ev_t on sections.
CorrFinality is_right_initial_corr(const Correspondence& c, int certify_dim = -1);

}  // namespace fibcat
