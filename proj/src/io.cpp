#include "fibcat/io.hpp"

#include <fstream>
#include <sstream>

#include "fibcat/constructions.hpp"

namespace fibcat {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw SchemaError((where.empty() ? "/" : where) + ": " + what);
}

const Json& field(const Json& doc, const std::string& where, const char* key) {
  if (!doc.is_object()) schema(where, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) schema(where + "/" + key, "missing field");
  return *it;
}

std::string str(const Json& v, const std::string& where) {
  if (!v.is_string()) schema(where, "expected a string");
  return v.get<std::string>();
}

const Json& array(const Json& v, const std::string& where) {
  if (!v.is_array()) schema(where, "expected an array");
  return v;
}

void check_header(const Json& doc, const std::string& where, const char* kind) {
  const auto& version = field(doc, where, "format_version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
    schema(where + "/format_version", "unsupported format version");
  const auto k = str(field(doc, where, "kind"), where + "/kind");
  if (k != kind) schema(where + "/kind", "expected '" + std::string(kind) + "', found '" + k + "'");
}

Json header(const char* kind) { return Json{{"format_version", kFormatVersion}, {"kind", kind}}; }

Json category_body(const FiniteCategory& c) {
  const auto t = c.to_table();
  Json morphisms = Json::array();
  for (const auto& m : t.morphisms) morphisms.push_back({{"id", m.id}, {"src", m.src}, {"tgt", m.tgt}});
  Json compose = Json::array();
  for (const auto& e : t.compose) compose.push_back(Json::array({e.g, e.f, e.gf}));
  Json doc = header("category");
  doc["objects"] = t.objects;
  doc["morphisms"] = morphisms;
  doc["identities"] = t.identities;
  doc["compose"] = compose;
  return doc;
}

FiniteCategory category_at(const Json& doc, const std::string& where) {
  check_header(doc, where, "category");
  CategoryTable t;
  const auto& objects = array(field(doc, where, "objects"), where + "/objects");
  for (std::size_t i = 0; i < objects.size(); ++i)
    t.objects.push_back(str(objects[i], where + "/objects/" + std::to_string(i)));
  const auto& morphisms = array(field(doc, where, "morphisms"), where + "/morphisms");
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const auto at = where + "/morphisms/" + std::to_string(i);
    t.morphisms.push_back({str(field(morphisms[i], at, "id"), at + "/id"),
                           str(field(morphisms[i], at, "src"), at + "/src"),
                           str(field(morphisms[i], at, "tgt"), at + "/tgt")});
  }
  const auto& ids = field(doc, where, "identities");
  if (!ids.is_object()) schema(where + "/identities", "expected an object");
  for (const auto& [k, v] : ids.items()) t.identities[k] = str(v, where + "/identities/" + k);
  const auto& compose = array(field(doc, where, "compose"), where + "/compose");
  for (std::size_t i = 0; i < compose.size(); ++i) {
    const auto at = where + "/compose/" + std::to_string(i);
    const auto& e = array(compose[i], at);
    if (e.size() != 3) schema(at, "expected [g, f, g∘f]");
    t.compose.push_back({str(e[0], at + "/0"), str(e[1], at + "/1"), str(e[2], at + "/2")});
  }
  try {
    return FiniteCategory::from_table(t);
  } catch (const SchemaError& e) {
    schema(where, e.what());
  }
}

Json id_maps(const Functor& f) {
  Json objects = Json::object(), morphisms = Json::object();
  const auto& s = f.source();
  const auto& t = f.target();
  for (int x = 0; x < s.object_count(); ++x) objects[s.object_id(x)] = t.object_id(f.object(x));
  for (int m = 0; m < s.morphism_count(); ++m) morphisms[s.morphism_id(m)] = t.morphism_id(f.morphism(m));
  return Json{{"objects", objects}, {"morphisms", morphisms}};
}

Functor functor_from_maps(const FiniteCategory& s, const FiniteCategory& t, const Json& maps,
                          const std::string& where) {
  std::vector<int> objects(s.object_count(), -1), morphisms(s.morphism_count(), -1);
  auto read = [&](const char* key, bool is_object, std::vector<int>& out) {
    const auto& m = field(maps, where, key);
    const auto at = where + "/" + key;
    if (!m.is_object()) schema(at, "expected an object");
    for (const auto& [k, v] : m.items()) {
      const auto from = is_object ? s.find_object(k) : s.find_morphism(k);
      if (!from) schema(at + "/" + k, "unknown source id");
      const auto image = str(v, at + "/" + k);
      const auto to = is_object ? t.find_object(image) : t.find_morphism(image);
      if (!to) schema(at + "/" + k, "unknown target id '" + image + "'");
      out[*from] = *to;
    }
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i] < 0)
        schema(at, "no image for '" + (is_object ? s.object_id(static_cast<int>(i))
                                                 : s.morphism_id(static_cast<int>(i))) + "'");
  };
  read("objects", true, objects);
  read("morphisms", false, morphisms);
  return Functor(s, t, objects, morphisms);
}

int index_in(const std::vector<std::string>& v, const std::string& id, const std::string& where) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == id) return static_cast<int>(i);
  schema(where, "unknown element '" + id + "'");
}

std::vector<std::string> string_list(const Json& v, const std::string& where) {
  const auto& a = array(v, where);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(str(a[i], where + "/" + std::to_string(i)));
  return out;
}

// images[i] names the image of from[i] inside to.
std::vector<int> image_list(const Json& v, const std::vector<std::string>& from, const std::vector<std::string>& to,
                            const std::string& where) {
  const auto ids = string_list(v, where);
  if (ids.size() != from.size()) schema(where, "expected " + std::to_string(from.size()) + " images");
  std::vector<int> out;
  for (std::size_t i = 0; i < ids.size(); ++i) out.push_back(index_in(to, ids[i], where + "/" + std::to_string(i)));
  return out;
}

Json images(const std::vector<int>& map, const std::vector<std::string>& to) {
  Json out = Json::array();
  for (int i : map) out.push_back(i >= 0 && i < static_cast<int>(to.size()) ? to[i] : std::string());
  return out;
}

}  // namespace

Json emit_category(const FiniteCategory& c) { return category_body(c); }

FiniteCategory parse_category(const Json& doc) { return category_at(doc, ""); }

Json emit_functor(const Functor& f) {
  Json doc = header("functor");
  doc["source"] = emit_category(f.source());
  doc["target"] = emit_category(f.target());
  doc["map"] = id_maps(f);
  return doc;
}

Functor parse_functor(const Json& doc) {
  check_header(doc, "", "functor");
  auto s = category_at(field(doc, "", "source"), "/source");
  auto t = category_at(field(doc, "", "target"), "/target");
  return functor_from_maps(s, t, field(doc, "", "map"), "/map");
}

Json emit_profunctor(const Profunctor& p) {
  const auto& a = p.source;
  const auto& b = p.target;
  Json elements = Json::array(), left = Json::array(), right = Json::array();
  for (int x = 0; x < a.object_count(); ++x)
    for (int y = 0; y < b.object_count(); ++y)
      elements.push_back({{"a", a.object_id(x)}, {"b", b.object_id(y)}, {"ids", p.at(x, y)}});
  for (int al = 0; al < a.morphism_count(); ++al)
    for (int y = 0; y < b.object_count(); ++y)
      left.push_back({{"alpha", a.morphism_id(al)},
                      {"b", b.object_id(y)},
                      {"images", images(p.left[al * b.object_count() + y], p.at(a.src(al), y))}});
  for (int x = 0; x < a.object_count(); ++x)
    for (int be = 0; be < b.morphism_count(); ++be)
      right.push_back({{"a", a.object_id(x)},
                       {"beta", b.morphism_id(be)},
                       {"images", images(p.right[x * b.morphism_count() + be], p.at(x, b.tgt(be)))}});
  Json doc = header("profunctor");
  doc["source"] = emit_category(a);
  doc["target"] = emit_category(b);
  doc["elements"] = elements;
  doc["left"] = left;
  doc["right"] = right;
  return doc;
}

Profunctor parse_profunctor(const Json& doc) {
  check_header(doc, "", "profunctor");
  Profunctor p;
  p.source = category_at(field(doc, "", "source"), "/source");
  p.target = category_at(field(doc, "", "target"), "/target");
  const auto& a = p.source;
  const auto& b = p.target;
  const int nb = b.object_count();
  p.elements.assign(static_cast<std::size_t>(a.object_count()) * nb, {});
  std::vector<char> seen(p.elements.size(), 0);
  auto obj = [&](const FiniteCategory& c, const Json& e, const std::string& at, const char* key) {
    const auto id = str(field(e, at, key), at + "/" + key);
    const auto x = c.find_object(id);
    if (!x) schema(at + "/" + key, "unknown object '" + id + "'");
    return *x;
  };
  auto mor = [&](const FiniteCategory& c, const Json& e, const std::string& at, const char* key) {
    const auto id = str(field(e, at, key), at + "/" + key);
    const auto m = c.find_morphism(id);
    if (!m) schema(at + "/" + key, "unknown morphism '" + id + "'");
    return *m;
  };
  const auto& elements = array(field(doc, "", "elements"), "/elements");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto at = "/elements/" + std::to_string(i);
    const int x = obj(a, elements[i], at, "a"), y = obj(b, elements[i], at, "b");
    if (seen[x * nb + y]) schema(at, "duplicate entry");
    seen[x * nb + y] = 1;
    p.elements[x * nb + y] = string_list(field(elements[i], at, "ids"), at + "/ids");
  }
  p.left.assign(static_cast<std::size_t>(a.morphism_count()) * nb, {});
  const auto& left = array(field(doc, "", "left"), "/left");
  std::vector<char> left_seen(p.left.size(), 0);
  for (std::size_t i = 0; i < left.size(); ++i) {
    const auto at = "/left/" + std::to_string(i);
    const int al = mor(a, left[i], at, "alpha"), y = obj(b, left[i], at, "b");
    if (left_seen[al * nb + y]) schema(at, "duplicate entry");
    left_seen[al * nb + y] = 1;
    p.left[al * nb + y] =
        image_list(field(left[i], at, "images"), p.at(a.tgt(al), y), p.at(a.src(al), y), at + "/images");
  }
  const int mb = b.morphism_count();
  p.right.assign(static_cast<std::size_t>(a.object_count()) * mb, {});
  const auto& right = array(field(doc, "", "right"), "/right");
  std::vector<char> right_seen(p.right.size(), 0);
  for (std::size_t i = 0; i < right.size(); ++i) {
    const auto at = "/right/" + std::to_string(i);
    const int x = obj(a, right[i], at, "a"), be = mor(b, right[i], at, "beta");
    if (right_seen[x * mb + be]) schema(at, "duplicate entry");
    right_seen[x * mb + be] = 1;
    p.right[x * mb + be] =
        image_list(field(right[i], at, "images"), p.at(x, b.src(be)), p.at(x, b.tgt(be)), at + "/images");
  }
  for (int al = 0; al < a.morphism_count(); ++al)
    for (int y = 0; y < nb; ++y)
      if (!left_seen[al * nb + y])
        schema("/left", "no action of '" + a.morphism_id(al) + "' at '" + b.object_id(y) + "'");
  for (int x = 0; x < a.object_count(); ++x)
    for (int be = 0; be < mb; ++be)
      if (!right_seen[x * mb + be])
        schema("/right", "no action of '" + b.morphism_id(be) + "' at '" + a.object_id(x) + "'");
  return p;
}

Json emit_set_functor(const SetFunctor& f) {
  const auto& k = f.base;
  Json values = Json::object(), maps = Json::object();
  for (int x = 0; x < k.object_count(); ++x) values[k.object_id(x)] = f.values[x];
  for (int m = 0; m < k.morphism_count(); ++m) maps[k.morphism_id(m)] = images(f.maps[m], f.values[k.tgt(m)]);
  Json doc = header("set_functor");
  doc["base"] = emit_category(k);
  doc["values"] = values;
  doc["maps"] = maps;
  return doc;
}

SetFunctor parse_set_functor(const Json& doc) {
  check_header(doc, "", "set_functor");
  SetFunctor f;
  f.base = category_at(field(doc, "", "base"), "/base");
  const auto& k = f.base;
  const auto& values = field(doc, "", "values");
  f.values.resize(k.object_count());
  for (int x = 0; x < k.object_count(); ++x)
    f.values[x] = string_list(field(values, "/values", k.object_id(x).c_str()), "/values/" + k.object_id(x));
  const auto& maps = field(doc, "", "maps");
  f.maps.resize(k.morphism_count());
  for (int m = 0; m < k.morphism_count(); ++m) {
    const auto at = "/maps/" + k.morphism_id(m);
    f.maps[m] = image_list(field(maps, "/maps", k.morphism_id(m).c_str()), f.values[k.src(m)], f.values[k.tgt(m)], at);
  }
  return f;
}

Json emit_correspondence(const Correspondence& c) {
  Json doc = header("correspondence");
  doc["total"] = emit_category(c.total);
  doc["source"] = emit_category(c.source());
  doc["target"] = emit_category(c.target());
  doc["projection"] = id_maps(c.projection);
  doc["include_s"] = id_maps(c.include_s);
  doc["include_t"] = id_maps(c.include_t);
  return doc;
}

Correspondence parse_correspondence(const Json& doc) {
  check_header(doc, "", "correspondence");
  auto total = category_at(field(doc, "", "total"), "/total");
  auto s = category_at(field(doc, "", "source"), "/source");
  auto t = category_at(field(doc, "", "target"), "/target");
  return Correspondence{total, functor_from_maps(total, interval(1), field(doc, "", "projection"), "/projection"),
                        functor_from_maps(s, total, field(doc, "", "include_s"), "/include_s"),
                        functor_from_maps(t, total, field(doc, "", "include_t"), "/include_t")};
}

Json emit_witness(const Witness& w) { return Json{{"kind", w.kind}, {"ids", w.ids}, {"detail", w.detail}}; }

Json emit_verdict(const Verdict& v) {
  Json out{{"holds", v.holds}};
  if (v.witness) out["witness"] = emit_witness(*v.witness);
  return out;
}

std::string document_kind(const Json& doc) { return str(field(doc, "", "kind"), "/kind"); }

Json parse_json_text(std::string_view text, std::string_view origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SchemaError(std::string(origin) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                      ": malformed JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot write");
  out << text;
}

}  // namespace fibcat
