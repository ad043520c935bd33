#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibcat/category.hpp"
#include "fibcat/functor.hpp"

namespace fibcat {

// A covariant functor K → FinSet. Element ids are distinct within each set.
struct SetFunctor {
  FiniteCategory base;
  std::vector<std::vector<std::string>> values;  // per object
  std::vector<std::vector<int>> maps;            // per morphism: values[src] → values[tgt]

  int size(int x) const { return static_cast<int>(values[x].size()); }
  int act(int m, int e) const { return maps[m][e]; }
  std::size_t total_size() const;
  int element_index(int x, std::string_view id) const;  // throws SchemaError
};

ValidationReport validate_set_functor(const SetFunctor& f);
void require_valid(const SetFunctor& f, std::string_view what);

// Hom(x, -); element ids are morphism ids.
SetFunctor corepresentable(const FiniteCategory& k, int x);
SetFunctor constant_set_functor(const FiniteCategory& k, const std::vector<std::string>& elements);
SetFunctor compose(const SetFunctor& f, const Functor& g);  // F ∘ G

// A natural transformation given by its components.
struct SetTransformation {
  std::vector<std::vector<int>> components;  // per object: F(x) → G(x)
};
bool is_natural(const SetFunctor& f, const SetFunctor& g, const SetTransformation& t);
bool is_natural_isomorphism(const SetFunctor& f, const SetFunctor& g, const SetTransformation& t);
// Natural isomorphism matching element ids; none if the id sets differ.
std::optional<SetTransformation> identity_on_ids(const SetFunctor& f, const SetFunctor& g);
// Exhaustive search for a natural isomorphism.
std::optional<SetTransformation> find_natural_isomorphism(const SetFunctor& f, const SetFunctor& g);

// Set-level colimit and limit, as a set of element-class ids.
// colimit: π0 of the category of elements; limit: compatible families.
std::vector<std::string> colimit(const SetFunctor& f);
std::size_t colimit_size(const SetFunctor& f);
std::size_t limit_size(const SetFunctor& f);

}  // namespace fibcat
