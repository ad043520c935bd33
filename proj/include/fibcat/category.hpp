#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fibcat/errors.hpp"

namespace fibcat {

// Plain, possibly invalid, description of a finite category by its full
// composition table. This is what documents parse into.
struct CategoryTable {
  struct Morphism {
    std::string id, src, tgt;
  };
  struct Composite {
    std::string g, f, gf;  // g ∘ f = gf
  };
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<Composite> compose;
};

namespace detail {
struct CategoryData;
}

// A finite category given by a full composition table.
//
// Objects and morphisms are addressed by dense indices; indices follow the
// lexicographic order of the opaque string ids, so iteration order is the
// canonical one everywhere. Values are immutable and cheap to copy.
class FiniteCategory {
 public:
  FiniteCategory();  // the empty category

  // Throws SchemaError on duplicate or dangling ids. Missing composites,
  // missing identities and axiom failures are accepted here and reported by
  // validate_category.
  static FiniteCategory from_table(const CategoryTable& table);
  CategoryTable to_table() const;

  int object_count() const;
  int morphism_count() const;

  const std::string& object_id(int x) const;
  const std::string& morphism_id(int m) const;
  std::optional<int> find_object(std::string_view id) const;
  std::optional<int> find_morphism(std::string_view id) const;
  int object_index(std::string_view id) const;    // throws SchemaError
  int morphism_index(std::string_view id) const;  // throws SchemaError

  int src(int m) const;
  int tgt(int m) const;
  int identity(int x) const;  // -1 when the table lacks one
  bool is_identity(int m) const;

  // g ∘ f, or -1 when the pair is not composable or the table has no entry.
  int compose(int g, int f) const;

  std::span<const int> out(int x) const;  // morphisms with source x, ascending
  std::span<const int> in(int x) const;   // morphisms with target x, ascending
  std::vector<int> hom(int a, int b) const;

  int inverse(int m) const;  // -1 unless m is an isomorphism
  bool is_isomorphism(int m) const { return inverse(m) >= 0; }

  bool is_thin() const;  // at most one morphism between any two objects

  bool operator==(const FiniteCategory& other) const;

  // Table anomalies retained for the validator.
  const std::vector<CategoryTable::Composite>& stray_entries() const;

 private:
  explicit FiniteCategory(std::shared_ptr<const detail::CategoryData> d);
  std::shared_ptr<const detail::CategoryData> d_;
  friend class CategoryBuilder;
};

// Assembles a category from programmatic data. Ids may be added in any
// order; build() sorts them and calls `compose` (in builder indices) once
// for every composable pair.
class CategoryBuilder {
 public:
  int add_object(std::string id);
  int add_morphism(std::string id, int src, int tgt);
  void set_identity(int object, int morphism);

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(morphisms_.size()); }
  int src(int m) const { return morphisms_[m].src; }
  int tgt(int m) const { return morphisms_[m].tgt; }

  struct Result {
    FiniteCategory category;
    std::vector<int> object_index;    // builder index -> category index
    std::vector<int> morphism_index;  // builder index -> category index
  };

  // `compose(g, f)` returns the builder index of g ∘ f, or -1 if undefined.
  Result build(const std::function<int(int g, int f)>& compose) const;

 private:
  struct Mor {
    std::string id;
    int src, tgt;
  };
  std::vector<std::string> objects_;
  std::vector<Mor> morphisms_;
  std::vector<int> identities_;
};

// One violated axiom per entry; `kind` is one of missing_identity,
// bad_identity, missing_composite, bad_composite_typing, left_unit,
// right_unit, associativity, stray_composite, duplicate_composite.
struct ValidationReport {
  std::vector<Witness> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_category(const FiniteCategory& c);

// Throws ValidationError if the report is non-empty.
void require_valid(const FiniteCategory& c, std::string_view what);

}  // namespace fibcat
