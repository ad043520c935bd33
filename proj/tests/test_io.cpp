#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fibcat/catalog.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/correspondence.hpp"
#include "fibcat/io.hpp"
#include "fibcat/random.hpp"

using namespace fibcat;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string corpus(const std::string& rel) { return std::string(FIBCAT_CORPUS_DIR) + "/" + rel; }

Json reemit(const Json& doc) {
  const auto kind = document_kind(doc);
  if (kind == "category") return emit_category(parse_category(doc));
  if (kind == "functor") return emit_functor(parse_functor(doc));
  if (kind == "profunctor") return emit_profunctor(parse_profunctor(doc));
  if (kind == "set_functor") return emit_set_functor(parse_set_functor(doc));
  return emit_correspondence(parse_correspondence(doc));
}

std::string schema_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("corpus documents are canonical") {
  int seen = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(FIBCAT_CORPUS_DIR)) {
    if (!entry.is_regular_file() || entry.path().parent_path().filename() == "defects") continue;
    const auto text = slurp(entry.path());
    CHECK_MESSAGE(dump(reemit(parse_json_text(text))) == text, entry.path().string());
    ++seen;
  }
  CHECK(seen >= 20);
}

TEST_CASE("[2] round trips byte for byte") {
  const auto text = dump(emit_category(interval(2)));
  auto c = parse_category(parse_json_text(text));
  CHECK(c == interval(2));
  CHECK(dump(emit_category(c)) == text);
}

TEST_CASE("Ret document parses and validates") {
  auto c = parse_category(read_json_file(corpus("categories/ret.json")));
  CHECK(c.morphism_count() == 5);
  CHECK(validate_category(c).ok());
  CHECK(c == ret_category());
}

TEST_CASE("a missing composite parses and fails validation naming the pair") {
  auto c = parse_category(read_json_file(corpus("defects/missing_composite.json")));
  auto rep = validate_category(c);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().kind == "missing_composite");
  CHECK(rep.violations.front().ids.size() == 2);
}

TEST_CASE("schema errors carry positions and field paths") {
  CHECK(schema_message([] { read_json_file(corpus("defects/malformed.json")); }).find(":3:") != std::string::npos);
  CHECK(schema_message([] { parse_category(read_json_file(corpus("defects/missing_field.json"))); }) ==
        "/identities: missing field");
  CHECK(schema_message([] { parse_category(read_json_file(corpus("defects/wrong_version.json"))); })
            .starts_with("/format_version"));
  auto doc = emit_functor(interval_inclusion(2, {0, 2}));
  doc["map"]["objects"].erase("2");
  CHECK(schema_message([&] { parse_functor(doc); }) == "/map/objects: no image for '2'");
  doc = emit_functor(interval_inclusion(2, {0, 2}));
  doc["map"]["objects"]["0"] = "9";
  CHECK(schema_message([&] { parse_functor(doc); }).starts_with("/map/objects/0"));
  doc["kind"] = "category";
  CHECK(schema_message([&] { parse_functor(doc); }).starts_with("/kind"));
  CHECK(schema_message([] { parse_json_text("[1, 2", "x"); }).starts_with("x:1:"));
  CHECK_THROWS_AS(read_json_file(corpus("no_such_file.json")), SchemaError);
}

TEST_CASE("random documents round trip losslessly") {
  Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    auto a = random_category(rng, {3, 6});
    auto b = random_category(rng, {3, 6});
    auto p = random_profunctor(rng, a, b, 4);
    auto pd = emit_profunctor(p);
    auto p2 = parse_profunctor(pd);
    CHECK(p2.elements == p.elements);
    CHECK(p2.left == p.left);
    CHECK(p2.right == p.right);
    CHECK(emit_profunctor(p2) == pd);
    if (auto f = random_functor(rng, a, b)) {
      auto fd = emit_functor(*f);
      CHECK(parse_functor(fd) == *f);
    }
    auto s = random_set_functor(rng, a, 4);
    auto s2 = parse_set_functor(emit_set_functor(s));
    CHECK(s2.values == s.values);
    CHECK(s2.maps == s.maps);
    auto c = collage(p);
    auto cd = emit_correspondence(c);
    auto c2 = parse_correspondence(cd);
    CHECK(c2.total == c.total);
    CHECK(c2.projection == c.projection);
    CHECK(c2.include_s == c.include_s);
    CHECK(c2.include_t == c.include_t);
    CHECK(dump(emit_correspondence(c2)) == dump(cd));
  }
}

TEST_CASE("a planted action defect is a validation failure, not a schema one") {
  auto p = parse_profunctor(read_json_file(corpus("defects/bad_profunctor.json")));
  CHECK_FALSE(validate_profunctor(p).ok());
}
