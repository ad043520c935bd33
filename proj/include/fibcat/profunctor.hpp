#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibcat/category.hpp"
#include "fibcat/set_functor.hpp"

namespace fibcat {

// A functor A^op × B → FinSet: element sets P(a, b) with a contravariant
// action of A and a covariant action of B.
struct Profunctor {
  FiniteCategory source;  // A
  FiniteCategory target;  // B
  std::vector<std::vector<std::string>> elements;  // [a * |B| + b]
  std::vector<std::vector<int>> left;              // [α * |B| + b]: P(tgt α, b) → P(src α, b)
  std::vector<std::vector<int>> right;             // [a * |mor B| + β]: P(a, src β) → P(a, tgt β)

  const std::vector<std::string>& at(int a, int b) const { return elements[a * target.object_count() + b]; }
  int size(int a, int b) const { return static_cast<int>(at(a, b).size()); }
  int act_left(int alpha, int b, int x) const { return left[alpha * target.object_count() + b][x]; }
  int act_right(int a, int beta, int x) const { return right[a * target.morphism_count() + beta][x]; }
  std::size_t total_size() const;
  int element_index(int a, int b, std::string_view id) const;  // throws SchemaError
};

// Fills the action tables from callbacks.
Profunctor make_profunctor(const FiniteCategory& a, const FiniteCategory& b,
                           const std::function<std::vector<std::string>(int, int)>& elements,
                           const std::function<int(int alpha, int b, int x)>& left,
                           const std::function<int(int a, int beta, int x)>& right);

ValidationReport validate_profunctor(const Profunctor& p);
void require_valid(const Profunctor& p, std::string_view what);

Profunctor hom_profunctor(const FiniteCategory& c);
Profunctor empty_profunctor(const FiniteCategory& a, const FiniteCategory& b);
// B^op ⇸ A^op with the same element sets.
Profunctor transpose(const Profunctor& p);
// F(a, b) = P(f a, g b).
Profunctor restrict_profunctor(const Profunctor& p, const Functor& f, const Functor& g);

// The same data as a covariant functor on opposite(A) × B.
SetFunctor as_set_functor(const Profunctor& p);
Profunctor from_set_functor(const FiniteCategory& a, const FiniteCategory& b, const SetFunctor& f);

struct ProfunctorIso {
  std::vector<std::vector<int>> components;  // [a * |B| + b]: P(a, b) → Q(a, b)
};

Verdict check_profunctor_iso(const Profunctor& p, const Profunctor& q, const ProfunctorIso& iso);
// Matches x ∈ P(a, b) with the element of Q(a, b) whose id is rename(a, b, id(x)).
std::optional<ProfunctorIso> iso_by_rename(
    const Profunctor& p, const Profunctor& q,
    const std::function<std::string(int a, int b, const std::string& id)>& rename);
std::optional<ProfunctorIso> find_profunctor_iso(const Profunctor& p, const Profunctor& q);
ProfunctorIso compose(const ProfunctorIso& g, const ProfunctorIso& f);
ProfunctorIso inverse(const ProfunctorIso& f);

// Where the pair (p ∈ P(a, b), q ∈ Q(b, c)) lands in a composite R(a, c).
using PairComparison = std::function<int(int a, int b, int c, int p, int q)>;

// κ read through isos P' ≅ P and Q' ≅ Q: κ'(a, b, c, p, q) = κ(a, b, c, i(p), j(q)).
PairComparison reindex(PairComparison k, ProfunctorIso i, ProfunctorIso j, int middle_count, int target_count);

// P ⊗_B Q with its classes. Element ids are the least tuple "(b,p,q)" in each
// class; elements are sorted by id.
struct CoendComposite {
  Profunctor result;
  std::vector<std::vector<std::array<int, 3>>> representatives;  // [a * |C| + c][k] = (b, p, q)
  std::map<std::array<int, 5>, int> classes;                       // (a, b, c, p, q) → k
  int class_of(int a, int b, int c, int p, int q) const { return classes.at({a, b, c, p, q}); }
  PairComparison comparison() const;
};

// Throws PreconditionError unless P.target == Q.source.
CoendComposite compose_prof(const Profunctor& p, const Profunctor& q);

// The map R1 → R2 sending κ1(b, p, q) to κ2(b, p, q), when it is well defined
// and a natural bijection.
struct ComparisonResult {
  bool holds = false;
  std::optional<ProfunctorIso> iso;
  std::optional<Witness> witness;
};
ComparisonResult comparison_iso(const Profunctor& p, const Profunctor& q, const Profunctor& r1,
                                const PairComparison& k1, const Profunctor& r2, const PairComparison& k2);

// Composition with Hom_C by the action: P ⊗ Hom_B → P and Hom_A ⊗ P → P.
PairComparison right_unitor(const Profunctor& p);
PairComparison left_unitor(const Profunctor& p);

}  // namespace fibcat
