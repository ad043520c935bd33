#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "fibcat/category.hpp"
#include "fibcat/correspondence.hpp"
#include "fibcat/functor.hpp"
#include "fibcat/profunctor.hpp"
#include "fibcat/set_functor.hpp"

namespace fibcat {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// Documents carry "format_version" and "kind". Keys are emitted in sorted
// order and lists in the canonical index order, so emit ∘ parse is the
// identity on canonical documents.
//
// Parsing checks the schema only (field presence, types, dangling ids) and
// throws SchemaError naming the offending field by its JSON pointer.
// Axioms are left to the validators.

Json emit_category(const FiniteCategory& c);
FiniteCategory parse_category(const Json& doc);

// Source and target are embedded; images are keyed by id.
Json emit_functor(const Functor& f);
Functor parse_functor(const Json& doc);

// "elements" lists {a, b, ids}; "left" lists {alpha, b, images} and "right"
// {a, beta, images}, images[i] being the id of the image of the i-th element.
Json emit_profunctor(const Profunctor& p);
Profunctor parse_profunctor(const Json& doc);

Json emit_set_functor(const SetFunctor& f);
SetFunctor parse_set_functor(const Json& doc);

// The total category, both named fibers, and the three functors as id maps.
Json emit_correspondence(const Correspondence& c);
Correspondence parse_correspondence(const Json& doc);

Json emit_witness(const Witness& w);
Json emit_verdict(const Verdict& v);

// "kind" of a document; throws SchemaError when absent.
std::string document_kind(const Json& doc);

// Throws SchemaError with line and column on malformed JSON.
Json parse_json_text(std::string_view text, std::string_view origin = "<input>");
Json read_json_file(const std::string& path);
// Two-space indentation and a trailing newline.
std::string dump(const Json& doc);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fibcat
