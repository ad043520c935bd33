#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fibcat/category.hpp"
#include "fibcat/functor.hpp"

namespace fibcat {

// Exhaustive functor enumeration caps the number of candidate assignments it
// tries and throws EnumerationCapExceeded beyond that.
inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

struct FunctorSearch {
  // When both are set, only functors s with target_over ∘ s == source_over
  // are produced (functors "over" a common base).
  const Functor* source_over = nullptr;
  const Functor* target_over = nullptr;
  bool injective = false;
  std::size_t cap = kDefaultEnumerationCap;
};

// Visits every functor source → target in a fixed (lexicographic) order.
// `visit` returns false to stop early. Returns the number of functors visited.
std::size_t for_each_functor(const FiniteCategory& source, const FiniteCategory& target,
                             const FunctorSearch& search,
                             const std::function<bool(const Functor&)>& visit);

std::vector<Functor> enumerate_functors(const FiniteCategory& source, const FiniteCategory& target,
                                        std::size_t cap = kDefaultEnumerationCap);
// Functors s: J → E with pi ∘ s == p.
std::vector<Functor> enumerate_functors_over(const Functor& p, const Functor& pi,
                                             std::size_t cap = kDefaultEnumerationCap);

// Natural transformations between functors s, t : J → E whose components
// lie over identities of the base (vertical transformations). Each result is
// the list of components indexed by the objects of J.
std::vector<std::vector<int>> vertical_transformations(const Functor& s, const Functor& t,
                                                       const Functor& pi,
                                                       std::size_t cap = kDefaultEnumerationCap);

// Fun_{/K}(J, E) for p: J → K and pi: E → K, as a finite category.
struct SectionCategory {
  FiniteCategory category;
  std::vector<Functor> sections;              // indexed by object of `category`
  std::vector<std::vector<int>> components;   // indexed by morphism of `category`
};
SectionCategory section_category(const Functor& p, const Functor& pi,
                                 std::size_t cap = kDefaultEnumerationCap);

// Restriction Fun_{/K}(J, E) → Fun_{/K}(J0, E) along sigma: J0 → J.
Functor restriction(const SectionCategory& big, const SectionCategory& small, const Functor& sigma);

// Encodes the images of a functor as an id: "[x0,x1,..|m0,m1,..]".
std::string functor_id(const Functor& f);

}  // namespace fibcat
