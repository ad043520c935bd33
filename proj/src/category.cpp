#include "fibcat/category.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace fibcat {

namespace {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};

using IdIndex = std::unordered_map<std::string, int, StringHash, std::equal_to<>>;

}  // namespace

namespace detail {

struct CategoryData {
  std::vector<std::string> obj_ids, mor_ids;
  IdIndex obj_lookup, mor_lookup;
  std::vector<int> src, tgt, identity;
  std::vector<std::vector<int>> out, in;
  std::vector<int> out_pos;
  std::vector<std::vector<int>> comp;  // comp[f][out_pos[g]] = g ∘ f
  std::vector<int> inverse;
  std::vector<CategoryTable::Composite> stray;
  bool thin = true;
};

}  // namespace detail

namespace {

std::shared_ptr<const detail::CategoryData> empty_data() {
  static const auto d = std::make_shared<const detail::CategoryData>();
  return d;
}

void finish(detail::CategoryData& d) {
  const int n = static_cast<int>(d.obj_ids.size());
  const int m = static_cast<int>(d.mor_ids.size());
  d.inverse.assign(m, -1);
  for (int f = 0; f < m; ++f) {
    const int a = d.src[f], b = d.tgt[f];
    if (d.identity[a] < 0 || d.identity[b] < 0) continue;
    for (int g : d.out[b]) {
      if (d.tgt[g] != a) continue;
      const int gf = d.comp[f][d.out_pos[g]];
      const int fg = d.comp[g][d.out_pos[f]];
      if (gf == d.identity[a] && fg == d.identity[b]) {
        d.inverse[f] = g;
        break;
      }
    }
  }
  d.thin = true;
  for (int a = 0; a < n && d.thin; ++a) {
    std::vector<char> seen(n, 0);
    for (int f : d.out[a]) {
      if (seen[d.tgt[f]]) {
        d.thin = false;
        break;
      }
      seen[d.tgt[f]] = 1;
    }
  }
}

}  // namespace

FiniteCategory::FiniteCategory() : d_(empty_data()) {}
FiniteCategory::FiniteCategory(std::shared_ptr<const detail::CategoryData> d) : d_(std::move(d)) {}

int FiniteCategory::object_count() const { return static_cast<int>(d_->obj_ids.size()); }
int FiniteCategory::morphism_count() const { return static_cast<int>(d_->mor_ids.size()); }
const std::string& FiniteCategory::object_id(int x) const { return d_->obj_ids.at(x); }
const std::string& FiniteCategory::morphism_id(int m) const { return d_->mor_ids.at(m); }

std::optional<int> FiniteCategory::find_object(std::string_view id) const {
  auto it = d_->obj_lookup.find(id);
  if (it == d_->obj_lookup.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FiniteCategory::find_morphism(std::string_view id) const {
  auto it = d_->mor_lookup.find(id);
  if (it == d_->mor_lookup.end()) return std::nullopt;
  return it->second;
}

int FiniteCategory::object_index(std::string_view id) const {
  if (auto x = find_object(id)) return *x;
  throw SchemaError("unknown object id '" + std::string(id) + "'");
}

int FiniteCategory::morphism_index(std::string_view id) const {
  if (auto m = find_morphism(id)) return *m;
  throw SchemaError("unknown morphism id '" + std::string(id) + "'");
}

int FiniteCategory::src(int m) const { return d_->src[m]; }
int FiniteCategory::tgt(int m) const { return d_->tgt[m]; }
int FiniteCategory::identity(int x) const { return d_->identity[x]; }
bool FiniteCategory::is_identity(int m) const { return d_->identity[d_->src[m]] == m; }

int FiniteCategory::compose(int g, int f) const {
  if (d_->tgt[f] != d_->src[g]) return -1;
  return d_->comp[f][d_->out_pos[g]];
}

std::span<const int> FiniteCategory::out(int x) const { return d_->out[x]; }
std::span<const int> FiniteCategory::in(int x) const { return d_->in[x]; }

std::vector<int> FiniteCategory::hom(int a, int b) const {
  std::vector<int> r;
  for (int f : d_->out[a])
    if (d_->tgt[f] == b) r.push_back(f);
  return r;
}

int FiniteCategory::inverse(int m) const { return d_->inverse[m]; }
bool FiniteCategory::is_thin() const { return d_->thin; }

bool FiniteCategory::operator==(const FiniteCategory& o) const {
  if (d_ == o.d_) return true;
  const auto& a = *d_;
  const auto& b = *o.d_;
  if (a.obj_ids != b.obj_ids || a.mor_ids != b.mor_ids || a.src != b.src || a.tgt != b.tgt ||
      a.identity != b.identity || a.comp != b.comp || a.stray.size() != b.stray.size())
    return false;
  for (std::size_t i = 0; i < a.stray.size(); ++i) {
    if (a.stray[i].g != b.stray[i].g || a.stray[i].f != b.stray[i].f || a.stray[i].gf != b.stray[i].gf)
      return false;
  }
  return true;
}

const std::vector<CategoryTable::Composite>& FiniteCategory::stray_entries() const { return d_->stray; }

// ---------------------------------------------------------------------------

int CategoryBuilder::add_object(std::string id) {
  objects_.push_back(std::move(id));
  identities_.push_back(-1);
  return static_cast<int>(objects_.size()) - 1;
}

int CategoryBuilder::add_morphism(std::string id, int src, int tgt) {
  morphisms_.push_back({std::move(id), src, tgt});
  return static_cast<int>(morphisms_.size()) - 1;
}

void CategoryBuilder::set_identity(int object, int morphism) { identities_[object] = morphism; }

CategoryBuilder::Result CategoryBuilder::build(const std::function<int(int, int)>& compose) const {
  const int n = object_count();
  const int m = morphism_count();

  std::vector<int> obj_order(n), mor_order(m);
  std::iota(obj_order.begin(), obj_order.end(), 0);
  std::iota(mor_order.begin(), mor_order.end(), 0);
  std::sort(obj_order.begin(), obj_order.end(),
            [&](int a, int b) { return objects_[a] < objects_[b]; });
  std::sort(mor_order.begin(), mor_order.end(),
            [&](int a, int b) { return morphisms_[a].id < morphisms_[b].id; });

  Result r;
  r.object_index.assign(n, -1);
  r.morphism_index.assign(m, -1);
  auto d = std::make_shared<detail::CategoryData>();
  d->obj_ids.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto& id = objects_[obj_order[i]];
    if (i > 0 && d->obj_ids.back() == id) throw SchemaError("duplicate object id '" + id + "'");
    r.object_index[obj_order[i]] = i;
    d->obj_ids.push_back(id);
    d->obj_lookup.emplace(id, i);
  }
  d->mor_ids.reserve(m);
  d->src.resize(m);
  d->tgt.resize(m);
  for (int i = 0; i < m; ++i) {
    const auto& mm = morphisms_[mor_order[i]];
    if (i > 0 && d->mor_ids.back() == mm.id) throw SchemaError("duplicate morphism id '" + mm.id + "'");
    r.morphism_index[mor_order[i]] = i;
    d->mor_ids.push_back(mm.id);
    d->mor_lookup.emplace(mm.id, i);
    d->src[i] = r.object_index[mm.src];
    d->tgt[i] = r.object_index[mm.tgt];
  }
  d->identity.assign(n, -1);
  for (int x = 0; x < n; ++x)
    if (identities_[x] >= 0) d->identity[r.object_index[x]] = r.morphism_index[identities_[x]];

  d->out.assign(n, {});
  d->in.assign(n, {});
  d->out_pos.assign(m, -1);
  for (int f = 0; f < m; ++f) {
    d->out_pos[f] = static_cast<int>(d->out[d->src[f]].size());
    d->out[d->src[f]].push_back(f);
    d->in[d->tgt[f]].push_back(f);
  }
  d->comp.assign(m, {});
  for (int bf = 0; bf < m; ++bf) {
    const int f = r.morphism_index[bf];
    auto& row = d->comp[f];
    row.assign(d->out[d->tgt[f]].size(), -1);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const int g = d->out[d->tgt[f]][k];
      const int bg = mor_order[g];
      const int c = compose(bg, bf);
      row[k] = c < 0 ? -1 : r.morphism_index[c];
    }
  }
  finish(*d);
  r.category = FiniteCategory(std::move(d));
  return r;
}

// ---------------------------------------------------------------------------

FiniteCategory FiniteCategory::from_table(const CategoryTable& t) {
  CategoryBuilder b;
  IdIndex objs, mors;
  for (const auto& o : t.objects) {
    if (!objs.emplace(o, b.add_object(o)).second) throw SchemaError("duplicate object id '" + o + "'");
  }
  auto obj = [&](const std::string& id, const std::string& context) {
    auto it = objs.find(id);
    if (it == objs.end()) throw SchemaError("unknown object id '" + id + "' in " + context);
    return it->second;
  };
  for (const auto& m : t.morphisms) {
    const int s = obj(m.src, "morphism '" + m.id + "'");
    const int g = obj(m.tgt, "morphism '" + m.id + "'");
    if (!mors.emplace(m.id, b.add_morphism(m.id, s, g)).second)
      throw SchemaError("duplicate morphism id '" + m.id + "'");
  }
  auto mor = [&](const std::string& id, const std::string& context) {
    auto it = mors.find(id);
    if (it == mors.end()) throw SchemaError("unknown morphism id '" + id + "' in " + context);
    return it->second;
  };
  for (const auto& [o, m] : t.identities) b.set_identity(obj(o, "identities"), mor(m, "identities"));

  std::map<std::pair<int, int>, int> table;
  std::vector<CategoryTable::Composite> stray;
  for (const auto& c : t.compose) {
    const std::string ctx = "composite [" + c.g + ", " + c.f + ", " + c.gf + "]";
    const int g = mor(c.g, ctx), f = mor(c.f, ctx), gf = mor(c.gf, ctx);
    if (b.tgt(f) != b.src(g)) {
      stray.push_back(c);
      continue;
    }
    if (!table.emplace(std::pair{g, f}, gf).second) stray.push_back(c);
  }
  auto r = b.build([&](int g, int f) {
    auto it = table.find({g, f});
    return it == table.end() ? -1 : it->second;
  });
  if (stray.empty()) return r.category;
  auto d = std::make_shared<detail::CategoryData>(*r.category.d_);
  d->stray = std::move(stray);
  return FiniteCategory(std::move(d));
}

CategoryTable FiniteCategory::to_table() const {
  CategoryTable t;
  const auto& d = *d_;
  t.objects = d.obj_ids;
  for (int m = 0; m < morphism_count(); ++m)
    t.morphisms.push_back({d.mor_ids[m], d.obj_ids[d.src[m]], d.obj_ids[d.tgt[m]]});
  for (int x = 0; x < object_count(); ++x)
    if (d.identity[x] >= 0) t.identities[d.obj_ids[x]] = d.mor_ids[d.identity[x]];
  for (int g = 0; g < morphism_count(); ++g) {
    for (int f : d.in[d.src[g]]) {
      const int gf = compose(g, f);
      if (gf >= 0) t.compose.push_back({d.mor_ids[g], d.mor_ids[f], d.mor_ids[gf]});
    }
  }
  for (const auto& s : d.stray) t.compose.push_back(s);
  return t;
}

// ---------------------------------------------------------------------------

ValidationReport validate_category(const FiniteCategory& c) {
  ValidationReport rep;
  auto add = [&](std::string kind, std::vector<std::string> ids, std::string detail = {}) {
    rep.violations.push_back({std::move(kind), std::move(ids), std::move(detail)});
  };
  const int n = c.object_count();
  const int m = c.morphism_count();
  for (int x = 0; x < n; ++x) {
    const int i = c.identity(x);
    if (i < 0) {
      add("missing_identity", {c.object_id(x)});
    } else if (c.src(i) != x || c.tgt(i) != x) {
      add("bad_identity", {c.object_id(x), c.morphism_id(i)});
    }
  }
  for (int f = 0; f < m; ++f) {
    for (int g : c.out(c.tgt(f))) {
      const int gf = c.compose(g, f);
      if (gf < 0) {
        add("missing_composite", {c.morphism_id(g), c.morphism_id(f)});
        continue;
      }
      if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g))
        add("bad_composite_typing", {c.morphism_id(g), c.morphism_id(f), c.morphism_id(gf)});
    }
  }
  for (int f = 0; f < m; ++f) {
    const int is = c.identity(c.src(f)), it = c.identity(c.tgt(f));
    if (it >= 0 && c.src(it) == c.tgt(f) && c.compose(it, f) >= 0 && c.compose(it, f) != f)
      add("left_unit", {c.morphism_id(f)});
    if (is >= 0 && c.tgt(is) == c.src(f) && c.compose(f, is) >= 0 && c.compose(f, is) != f)
      add("right_unit", {c.morphism_id(f)});
  }
  // (g ∘ f) ∘ h vs g ∘ (f ∘ h) over every composable triple.
  for (int h = 0; h < m; ++h) {
    for (int f : c.out(c.tgt(h))) {
      const int fh = c.compose(f, h);
      for (int g : c.out(c.tgt(f))) {
        const int gf = c.compose(g, f);
        if (fh < 0 || gf < 0) continue;
        if (c.tgt(fh) != c.src(g) || c.tgt(h) != c.src(gf)) continue;  // typing already reported
        const int lhs = c.compose(g, fh);
        const int rhs = c.compose(gf, h);
        if (lhs != rhs || lhs < 0)
          add("associativity", {c.morphism_id(g), c.morphism_id(f), c.morphism_id(h)});
      }
    }
  }
  for (const auto& s : c.stray_entries()) {
    const auto g = c.find_morphism(s.g), f = c.find_morphism(s.f);
    const bool composable = g && f && c.tgt(*f) == c.src(*g);
    add(composable ? "duplicate_composite" : "stray_composite", {s.g, s.f, s.gf});
  }
  return rep;
}

void require_valid(const FiniteCategory& c, std::string_view what) {
  auto rep = validate_category(c);
  if (!rep.ok()) {
    std::string msg = std::string(what) + " is not a valid category: " + rep.violations.front().kind;
    for (const auto& id : rep.violations.front().ids) msg += " " + id;
    throw ValidationError(msg, rep.violations);
  }
}

}  // namespace fibcat
