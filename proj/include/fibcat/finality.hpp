#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibcat/constructions.hpp"
#include "fibcat/functor.hpp"

namespace fibcat {

struct FinalityEntry {
  int object = -1;  // object of the target
  bool nonempty = false;
  bool connected = false;
  std::optional<bool> homology_trivial;  // set in certified mode
  bool ok() const { return nonempty && connected && homology_trivial.value_or(true); }
};

// certify_dim < 0 is the π0-exact mode; otherwise certified through that degree.
struct FinalityVerdict {
  Functor functor;
  int certify_dim = -1;
  std::vector<FinalityEntry> entries;
  bool holds = false;
  std::optional<Witness> witness;
  explicit operator bool() const { return holds; }
};

// F: C → D is final when every comma d/F is nonempty and connected (and,
// in certified mode, has trivial reduced homology through the degree).
FinalityVerdict is_final(const Functor& f, int certify_dim = -1);
// Dually, every comma F/d.
FinalityVerdict is_initial(const Functor& f, int certify_dim = -1);

// For every morphism d → d' of D, the functor C_{/d} → C_{/d'} between commas
// F/d → F/d' induces isomorphisms on homology through degree `dim`
// (certified by an acyclic mapping cone through dim + 1).
Verdict theoremB_hypothesis(const Functor& f, int dim);

// A strict pullback square X' → X over Y' → Y (right leg X → Y), given by
// its legs. Checks π0(X') ≅ π0(Y') ×_{π0(Y)} π0(X) through the canonical map.
struct PullbackSquare {
  Functor top;     // X' → X
  Functor left;    // X' → Y'
  Functor right;   // X → Y
  Functor bottom;  // Y' → Y
};
// Validates the precondition (right leg left final and right initial) and
// that the square is a strict pullback, then compares π0.
Verdict quillenB_pi0_square(const PullbackSquare& sq);
// The square obtained by base change of `right` along `bottom`.
PullbackSquare pullback_square(const Functor& right, const Functor& bottom);

// Induced map on components.
std::vector<int> pi0_map(const Functor& f);

}  // namespace fibcat
