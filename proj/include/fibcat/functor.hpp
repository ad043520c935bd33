#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "fibcat/category.hpp"

namespace fibcat {

// A map between finite categories, stored as index maps. Construction does
// not check functoriality; see validate_functor.
class Functor {
 public:
  Functor() = default;
  Functor(FiniteCategory source, FiniteCategory target, std::vector<int> objects,
          std::vector<int> morphisms);

  // Id-keyed construction. If `morphisms` is empty and the target is thin,
  // morphism images are inferred from the object map.
  static Functor from_ids(FiniteCategory source, FiniteCategory target,
                          const std::map<std::string, std::string>& objects,
                          const std::map<std::string, std::string>& morphisms = {});

  const FiniteCategory& source() const { return source_; }
  const FiniteCategory& target() const { return target_; }
  int object(int x) const { return objects_[x]; }
  int morphism(int m) const { return morphisms_[m]; }
  std::span<const int> object_map() const { return objects_; }
  std::span<const int> morphism_map() const { return morphisms_; }

  bool operator==(const Functor&) const = default;

 private:
  FiniteCategory source_, target_;
  std::vector<int> objects_, morphisms_;
};

ValidationReport validate_functor(const Functor& f);
void require_valid(const Functor& f, std::string_view what);

Functor identity_functor(const FiniteCategory& c);
Functor compose(const Functor& g, const Functor& f);  // g ∘ f
Functor opposite(const Functor& f);

// The functor ∗ → C selecting object x.
Functor point(const FiniteCategory& c, int x);
// The unique functor C → ∗.
Functor to_terminal(const FiniteCategory& c);
// The functor [1] → C selecting morphism m.
Functor select_morphism(const FiniteCategory& c, int m);
// The functor [2] → C selecting the composable pair (f, g), g after f.
Functor select_pair(const FiniteCategory& c, int f, int g);

// Bijective on objects and morphisms (and hence an isomorphism once valid).
bool is_isomorphism(const Functor& f);
bool is_fully_faithful(const Functor& f);
bool is_essentially_surjective(const Functor& f);

}  // namespace fibcat
