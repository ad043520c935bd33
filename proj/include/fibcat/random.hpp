#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "fibcat/category.hpp"
#include "fibcat/functor.hpp"
#include "fibcat/profunctor.hpp"
#include "fibcat/set_functor.hpp"

namespace fibcat {

// Seeded generator shared by the random-instance families.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  int uniform(int lo, int hi);  // inclusive
  bool coin(double p = 0.5);
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[uniform(0, static_cast<int>(v.size()) - 1)];
  }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct CategoryBounds {
  int max_objects = 4;
  int max_morphisms = 10;
};

// Random posets on n elements with ids "p0", "p1", ...
FiniteCategory random_poset(Rng& rng, int n, double density = 0.4);
// Posets, catalog pieces, coproducts, products, opposites and full
// subcategories, within the bounds.
FiniteCategory random_category(Rng& rng, const CategoryBounds& bounds = {});
// A quotient of a sum of corepresentables by random merges.
SetFunctor random_set_functor(Rng& rng, const FiniteCategory& k, int max_elements = 6);
Profunctor random_profunctor(Rng& rng, const FiniteCategory& a, const FiniteCategory& b, int max_elements = 6);
// Uniform among all functors source → target; none if there are none.
std::optional<Functor> random_functor(Rng& rng, const FiniteCategory& source, const FiniteCategory& target);
// A functor to [n] with at most max_morphisms morphisms in the source:
// random categories with a random functor, collages and gluings.
Functor random_functor_over_interval(Rng& rng, int n, int max_morphisms = 12);

}  // namespace fibcat
