#include "fibcat/enumerate.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "fibcat/ids.hpp"

namespace fibcat {

namespace {

struct Triple {
  int g, f, gf;
};

class Searcher {
 public:
  Searcher(const FiniteCategory& s, const FiniteCategory& t, const FunctorSearch& opt,
           const std::function<bool(const Functor&)>& visit)
      : src_(s), tgt_(t), opt_(opt), visit_(visit) {
    if ((opt.source_over == nullptr) != (opt.target_over == nullptr))
      throw SchemaError("functor search needs both over-maps or neither");
    const int n = s.object_count(), m = s.morphism_count();
    std::vector<std::vector<int>> after(n);
    for (int mm = 0; mm < m; ++mm)
      if (!s.is_identity(mm)) after[std::max(s.src(mm), s.tgt(mm))].push_back(mm);
    std::vector<int> pos(m, 0);
    for (int x = 0; x < n; ++x) {
      slots_.push_back({true, x});
      if (s.identity(x) >= 0) pos[s.identity(x)] = static_cast<int>(slots_.size()) - 1;
      for (int mm : after[x]) {
        pos[mm] = static_cast<int>(slots_.size());
        slots_.push_back({false, mm});
      }
    }
    checks_.assign(slots_.size(), {});
    for (int f = 0; f < m; ++f) {
      for (int g : s.out(s.tgt(f))) {
        const int gf = s.compose(g, f);
        if (gf < 0) continue;
        const int last = std::max({pos[g], pos[f], pos[gf]});
        checks_[last].push_back({g, f, gf});
      }
    }
    obj_.assign(n, -1);
    mor_.assign(m, -1);
    used_obj_.assign(t.object_count(), 0);
    used_mor_.assign(t.morphism_count(), 0);
  }

  std::size_t run() {
    recurse(0);
    return visited_;
  }

 private:
  bool object_ok(int x, int y) const {
    if (opt_.injective && used_obj_[y]) return false;
    if (opt_.source_over && opt_.target_over->object(y) != opt_.source_over->object(x)) return false;
    return true;
  }
  bool morphism_ok(int mm, int c) const {
    if (opt_.injective && used_mor_[c]) return false;
    if (opt_.source_over && opt_.target_over->morphism(c) != opt_.source_over->morphism(mm))
      return false;
    return true;
  }
  bool checks_pass(std::size_t slot) const {
    for (const auto& t : checks_[slot])
      if (tgt_.compose(mor_[t.g], mor_[t.f]) != mor_[t.gf]) return false;
    return true;
  }
  void tick() {
    if (++tried_ > opt_.cap)
      throw EnumerationCapExceeded("functor enumeration exceeded the candidate cap", opt_.cap);
  }

  // Returns false to abort the whole search.
  bool recurse(std::size_t k) {
    if (k == slots_.size()) {
      ++visited_;
      return visit_(Functor(src_, tgt_, obj_, mor_));
    }
    const auto [is_obj, idx] = slots_[k];
    if (is_obj) {
      for (int y = 0; y < tgt_.object_count(); ++y) {
        if (!object_ok(idx, y)) continue;
        tick();
        obj_[idx] = y;
        used_obj_[y] = 1;
        const int id = src_.identity(idx);
        bool ok = true;
        if (id >= 0) {
          const int tid = tgt_.identity(y);
          if (tid < 0 || (opt_.injective && used_mor_[tid])) ok = false;
          else {
            mor_[id] = tid;
            used_mor_[tid] = 1;
          }
        }
        if (ok && checks_pass(k) && !recurse(k + 1)) return false;
        if (ok && id >= 0) {
          used_mor_[mor_[id]] = 0;
          mor_[id] = -1;
        }
        used_obj_[y] = 0;
        obj_[idx] = -1;
      }
      return true;
    }
    for (int c : tgt_.out(obj_[src_.src(idx)])) {
      if (tgt_.tgt(c) != obj_[src_.tgt(idx)] || !morphism_ok(idx, c)) continue;
      tick();
      mor_[idx] = c;
      used_mor_[c] = 1;
      if (checks_pass(k) && !recurse(k + 1)) return false;
      used_mor_[c] = 0;
      mor_[idx] = -1;
    }
    return true;
  }

  const FiniteCategory& src_;
  const FiniteCategory& tgt_;
  const FunctorSearch& opt_;
  const std::function<bool(const Functor&)>& visit_;
  std::vector<std::pair<bool, int>> slots_;
  std::vector<std::vector<Triple>> checks_;
  std::vector<int> obj_, mor_;
  std::vector<char> used_obj_, used_mor_;
  std::size_t tried_ = 0, visited_ = 0;
};

}  // namespace

std::size_t for_each_functor(const FiniteCategory& source, const FiniteCategory& target,
                             const FunctorSearch& search,
                             const std::function<bool(const Functor&)>& visit) {
  return Searcher(source, target, search, visit).run();
}

std::vector<Functor> enumerate_functors(const FiniteCategory& source, const FiniteCategory& target,
                                        std::size_t cap) {
  std::vector<Functor> out;
  FunctorSearch s;
  s.cap = cap;
  for_each_functor(source, target, s, [&](const Functor& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::vector<Functor> enumerate_functors_over(const Functor& p, const Functor& pi, std::size_t cap) {
  if (!(p.target() == pi.target())) throw SchemaError("functors are not over a common base");
  std::vector<Functor> out;
  FunctorSearch s;
  s.source_over = &p;
  s.target_over = &pi;
  s.cap = cap;
  for_each_functor(p.source(), pi.source(), s, [&](const Functor& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::vector<std::vector<int>> vertical_transformations(const Functor& s, const Functor& t,
                                                       const Functor& pi, std::size_t cap) {
  const auto& j = s.source();
  const auto& e = s.target();
  const auto& k = pi.target();
  const int n = j.object_count();
  std::vector<std::vector<int>> after(n);
  for (int m = 0; m < j.morphism_count(); ++m) after[std::max(j.src(m), j.tgt(m))].push_back(m);
  std::vector<std::vector<int>> out;
  std::vector<int> comp(n, -1);
  std::size_t tried = 0;
  std::function<void(int)> rec = [&](int x) {
    if (x == n) {
      out.push_back(comp);
      return;
    }
    const int base_id = k.identity(pi.object(s.object(x)));
    for (int c : e.hom(s.object(x), t.object(x))) {
      if (pi.morphism(c) != base_id) continue;
      if (++tried > cap)
        throw EnumerationCapExceeded("transformation enumeration exceeded the candidate cap", cap);
      comp[x] = c;
      bool ok = true;
      for (int m : after[x]) {
        const int a = j.src(m), b = j.tgt(m);
        if (e.compose(comp[b], s.morphism(m)) != e.compose(t.morphism(m), comp[a])) {
          ok = false;
          break;
        }
      }
      if (ok) rec(x + 1);
    }
    comp[x] = -1;
  };
  rec(0);
  return out;
}

std::string functor_id(const Functor& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.object_map().size(); ++i) {
    if (i) s += ',';
    s += f.target().object_id(f.object_map()[i]);
  }
  s += '|';
  for (std::size_t i = 0; i < f.morphism_map().size(); ++i) {
    if (i) s += ',';
    s += f.target().morphism_id(f.morphism_map()[i]);
  }
  s += ']';
  return s;
}

namespace {

std::string components_id(const FiniteCategory& e, const std::vector<int>& comps) {
  std::string s;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) s += ',';
    s += e.morphism_id(comps[i]);
  }
  return s;
}

}  // namespace

SectionCategory section_category(const Functor& p, const Functor& pi, std::size_t cap) {
  auto sections = enumerate_functors_over(p, pi, cap);
  const auto& e = pi.source();
  CategoryBuilder b;
  std::vector<std::string> ids;
  for (const auto& s : sections) {
    ids.push_back(functor_id(s));
    b.add_object(ids.back());
  }
  struct Mor {
    int s, t;
    std::vector<int> comps;
  };
  std::vector<Mor> mors;
  std::map<std::tuple<int, int, std::vector<int>>, int> lookup;
  for (int a = 0; a < static_cast<int>(sections.size()); ++a) {
    for (int c = 0; c < static_cast<int>(sections.size()); ++c) {
      for (auto& comps : vertical_transformations(sections[a], sections[c], pi, cap)) {
        const int idx = b.add_morphism(ids[a] + "=>" + ids[c] + ":" + components_id(e, comps), a, c);
        bool is_id = a == c;
        for (std::size_t x = 0; x < comps.size() && is_id; ++x)
          is_id = comps[x] == e.identity(sections[a].object(static_cast<int>(x)));
        if (is_id) b.set_identity(a, idx);
        lookup.emplace(std::tuple{a, c, comps}, idx);
        mors.push_back({a, c, std::move(comps)});
      }
    }
  }
  auto r = b.build([&](int g, int f) {
    std::vector<int> comps(mors[f].comps.size());
    for (std::size_t x = 0; x < comps.size(); ++x) comps[x] = e.compose(mors[g].comps[x], mors[f].comps[x]);
    auto it = lookup.find({mors[f].s, mors[g].t, comps});
    return it == lookup.end() ? -1 : it->second;
  });
  SectionCategory out;
  out.category = r.category;
  out.sections.resize(sections.size());
  for (std::size_t i = 0; i < sections.size(); ++i) out.sections[r.object_index[i]] = sections[i];
  out.components.resize(mors.size());
  for (std::size_t i = 0; i < mors.size(); ++i) out.components[r.morphism_index[i]] = mors[i].comps;
  return out;
}

Functor restriction(const SectionCategory& big, const SectionCategory& small, const Functor& sigma) {
  std::unordered_map<std::string, int> small_obj;
  for (int i = 0; i < small.category.object_count(); ++i) small_obj.emplace(small.category.object_id(i), i);
  std::vector<int> om(big.category.object_count()), mm(big.category.morphism_count());
  for (int i = 0; i < big.category.object_count(); ++i) {
    auto id = functor_id(compose(big.sections[i], sigma));
    om[i] = small_obj.at(id);
  }
  for (int m = 0; m < big.category.morphism_count(); ++m) {
    const int a = om[big.category.src(m)], c = om[big.category.tgt(m)];
    std::vector<int> comps(sigma.source().object_count());
    for (int x = 0; x < sigma.source().object_count(); ++x) comps[x] = big.components[m][sigma.object(x)];
    int found = -1;
    for (int cand : small.category.hom(a, c))
      if (small.components[cand] == comps) {
        found = cand;
        break;
      }
    if (found < 0) throw InvariantError("restricted transformation missing from section category");
    mm[m] = found;
  }
  return Functor(big.category, small.category, std::move(om), std::move(mm));
}

}  // namespace fibcat
