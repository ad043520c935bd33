#include "fibcat/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "fibcat/catalog.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/correspondence.hpp"
#include "fibcat/enumerate.hpp"
#include "fibcat/fibration.hpp"
#include "fibcat/finality.hpp"
#include "fibcat/homology.hpp"
#include "fibcat/profunctor.hpp"
#include "fibcat/random.hpp"
#include "fibcat/transport.hpp"
#include "fibcat/union_find.hpp"

namespace fibcat {

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::string tag;  // criterion-specific classification
  std::int64_t checks = 0;
  Json inputs;
};

using InstanceFn = std::function<Outcome(Rng& rng, int index)>;

std::vector<Outcome> run_instances(int count, const SuiteOptions& opt, int criterion, const InstanceFn& fn) {
  std::vector<Outcome> out(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      Rng rng(instance_seed(opt.seed, criterion, i));
      try {
        out[i] = fn(rng, i);
      } catch (const std::exception& e) {
        out[i].ok = false;
        out[i].detail = std::string("exception: ") + e.what();
      }
    }
  };
  const int threads = std::max(1, std::min(opt.threads, count));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

int count_or(const SuiteOptions& opt, int fallback) { return opt.size > 0 ? opt.size : fallback; }

CriterionResult collect(int number, const SuiteOptions& opt, const std::vector<Outcome>& outcomes) {
  CriterionResult r;
  r.number = number;
  r.name = criterion_names()[number - 1];
  r.instances = static_cast<int>(outcomes.size());
  for (int i = 0; i < r.instances; ++i) {
    if (outcomes[i].ok) continue;
    ++r.failures;
    r.failed.push_back({i, instance_seed(opt.seed, number, i), outcomes[i].detail, outcomes[i].inputs});
  }
  r.pass = r.failures == 0;
  return r;
}

std::string first_failure(const CriterionResult& r) {
  return r.failed.empty() ? std::string() : "; first failure #" + std::to_string(r.failed.front().index) + ": " +
                                                r.failed.front().detail;
}

std::string counts(const CriterionResult& r) {
  return std::to_string(r.instances - r.failures) + "/" + std::to_string(r.instances) + " instances hold";
}

std::int64_t total_checks(const std::vector<Outcome>& v) {
  std::int64_t n = 0;
  for (const auto& o : v) n += o.checks;
  return n;
}

Functor projection_from(const FiniteCategory& x, const FiniteCategory& k) {
  return product_projections(x, k, product(x, k)).second;
}

// ---- 1, 2 -----------------------------------------------------------------

Outcome c1(Rng& rng, int) {
  auto a = random_category(rng, {4, 10});
  auto b = random_category(rng, {4, 10});
  auto p = random_profunctor(rng, a, b, 4);
  Outcome o;
  for (const auto& t : all_roundtrips(p)) {
    ++o.checks;
    if (!t.ok) {
      o.ok = false;
      o.detail = t.name + ": " + t.detail;
      o.inputs = {{"profunctor", emit_profunctor(p)}};
      break;
    }
  }
  return o;
}

Outcome c2(Rng& rng, int) {
  auto a = random_category(rng, {4, 10});
  auto b = random_category(rng, {4, 10});
  auto c = random_category(rng, {4, 10});
  auto p = random_profunctor(rng, a, b, 4);
  auto q = random_profunctor(rng, b, c, 4);
  Outcome o;
  auto r = check_route_coherence(p, q);
  if (!r.holds()) {
    o.ok = false;
    const auto& bad = r.corr_vs_coend.holds ? r.bifib_vs_coend : r.corr_vs_coend;
    o.detail = std::string(r.corr_vs_coend.holds ? "bifibration" : "correspondence") + " route differs from the coend" +
               (bad.witness ? ": " + bad.witness->kind : std::string());
    o.inputs = {{"p", emit_profunctor(p)}, {"q", emit_profunctor(q)}};
  }
  return o;
}

// ---- 3 --------------------------------------------------------------------

struct NamedCheck {
  std::string name;
  std::function<std::string()> run;  // empty string on success
};

std::vector<NamedCheck> c3_checks(const SuiteOptions& opt) {
  std::vector<NamedCheck> v;
  v.push_back({"{0<2} into [2] is not exponentiable", [] {
                 auto r = is_exponentiable(interval_inclusion(2, {0, 2}));
                 if (r.holds) return std::string("accepted");
                 if (!r.witness || r.witness->kind != "empty_factorization")
                   return "witness " + (r.witness ? r.witness->kind : std::string("missing"));
                 return std::string();
               }});
  const auto family = small_categories();
  for (const auto& j : family)
    v.push_back({"every functor " + j.name + " -> [1] is exponentiable", [j] {
                   for (const auto& f : enumerate_functors(j.category, interval(1)))
                     if (!is_exponentiable(f)) return "refused " + functor_id(f);
                   return std::string();
                 }});
  for (int i = 0; i < count_or(opt, 100); ++i) {
    const auto s = instance_seed(opt.seed, 103, i);
    v.push_back({"random functor over [1] #" + std::to_string(i), [s] {
                   Rng rng(s);
                   auto f = random_functor_over_interval(rng, 1, 12);
                   return is_exponentiable(f) ? std::string() : "refused " + functor_id(f);
                 }});
  }
  for (int n = 0; n <= 5; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        std::vector<int> pts;
        for (int t = i; t <= j; ++t) pts.push_back(t);
        v.push_back({"{" + std::to_string(i) + "<..<" + std::to_string(j) + "} into [" + std::to_string(n) + "]",
                     [n, pts] {
                       auto r = is_exponentiable(interval_inclusion(n, pts));
                       return r.holds ? std::string() : "refused: " + r.witness->kind;
                     }});
      }
  std::vector<NamedCategory> groupoids;
  for (const auto& c : family)
    if (c.name == "walking_iso" || c.name == "BZ2" || c.name == "BZ3" || c.name == "codiscrete3" ||
        c.name == "BZ2+[0]" || c.name == "walking_iso+[0]" || c.name == "{a,b}" || c.name == "[0]")
      groupoids.push_back(c);
  for (const auto& g : groupoids)
    v.push_back({"every functor to " + g.name + " is exponentiable", [g, family] {
                   for (const auto& j : family)
                     for (const auto& f : enumerate_functors(j.category, g.category))
                       if (!is_exponentiable(f)) return "refused " + j.name + " " + functor_id(f);
                   return std::string();
                 }});
  for (int n = 0; n <= 3; ++n)
    v.push_back({"ev_t on Ar([" + std::to_string(n) + "])", [n] {
                   auto ev = arrow_category(interval(n)).ev_t;
                   if (!is_cocartesian_fibration(ev)) return std::string("not coCartesian");
                   if (!is_left_final(ev)) return std::string("not left final");
                   return std::string();
                 }});
  return v;
}

// ---- 5, 6 -----------------------------------------------------------------

Functor c5_input(Rng& rng, int index) { return random_functor_over_interval(rng, 1 + index % 2, 12); }

Outcome c5(Rng& rng, int index) {
  auto pi = c5_input(rng, index);
  Outcome o;
  std::vector<MenuReport> menus = {menu_fiber_adjoints(pi), menu_locally_cocartesian(pi), menu_left_fibration(pi),
                                   menu_left_final(pi)};
  if (pi.target().object_count() == 3) menus.push_back(menu_cocartesian_over_2(pi));
  for (const auto& m : menus) {
    o.checks += static_cast<std::int64_t>(m.groups.size());
    if (auto d = m.disagreement()) {
      o.ok = false;
      o.detail = *d;
      break;
    }
  }
  if (o.ok) {
    auto profile = classify(pi);
    if (auto v = implication_violation(profile)) {
      o.ok = false;
      o.detail = "implication " + *v;
    }
  }
  if (!o.ok) o.inputs = {{"functor", emit_functor(pi)}};
  return o;
}

std::string replacement_failure(const Functor& pi) {
  auto r = cocart_replacement(pi);
  if (auto v = is_cocartesian_fibration(r.projection); !v)
    return "coCartesian replacement is not coCartesian: " + v.witness->kind;
  auto l = cart_replacement(pi);
  if (auto v = is_cartesian_fibration(l.projection); !v)
    return "Cartesian replacement is not Cartesian: " + v.witness->kind;
  return {};
}

struct C6Plan {
  int menu_inputs = 0;
  int universal = 0;
};

Functor functor_into(Rng& rng, const FiniteCategory& k) {
  for (int t = 0; t < 20; ++t) {
    auto j = random_category(rng, {3, 6});
    if (auto f = random_functor(rng, j, k)) return *f;
  }
  return point(k, 0);
}

Outcome c6(Rng& rng, int index, const SuiteOptions& opt, const C6Plan& plan,
           const std::vector<NamedCategory>& bases, const std::vector<std::vector<SetFunctor>>& covariant,
           const std::vector<std::vector<SetFunctor>>& contravariant) {
  Outcome o;
  if (index < plan.menu_inputs) {
    Rng r5(instance_seed(opt.seed, 5, index));
    auto pi = c5_input(r5, index);
    ++o.checks;
    if (auto e = replacement_failure(pi); !e.empty()) {
      o.ok = false;
      o.detail = e;
      o.inputs = {{"functor", emit_functor(pi)}};
      return o;
    }
  }
  if (index < plan.universal) {
    const int b = index % static_cast<int>(bases.size());
    const auto& k = bases[b].category;
    auto pi = functor_into(rng, k);
    auto fail = [&](std::string why) {
      o.ok = false;
      o.detail = bases[b].name + ": " + why;
      o.inputs = {{"functor", emit_functor(pi)}};
    };
    if (auto e = replacement_failure(pi); !e.empty()) return fail(e), o;
    auto lf = lfib_replacement(pi);
    for (const auto& f : covariant[b]) {
      ++o.checks;
      auto res = check_replacement_universal_property(lf, pi, unstraighten(f));
      if (!res.holds) return fail("left replacement: " + (res.witness ? res.witness->kind : std::string())), o;
    }
    auto rf = rfib_replacement(pi);
    for (const auto& f : contravariant[b]) {
      ++o.checks;
      auto res = check_replacement_universal_property(rf, pi, unstraighten_contravariant(f));
      if (!res.holds) return fail("right replacement: " + (res.witness ? res.witness->kind : std::string())), o;
    }
  }
  return o;
}

// ---- 7 --------------------------------------------------------------------

Outcome c7(Rng& rng, int, const std::vector<NamedCategory>& family, const std::vector<std::vector<Functor>>& to_2) {
  Functor pi;
  do {
    pi = random_functor_over_interval(rng, 2, 8);
  } while (!is_exponentiable(pi));
  Functor zeta;
  switch (rng.uniform(0, 2)) {
    case 0:
      zeta = projection_from(interval(1), pi.source());
      break;
    case 1:
      zeta = projection_from(discrete({"u", "v"}), pi.source());
      break;
    default:
      zeta = projection_from(walking_isomorphism(), pi.source());
      break;
  }
  Outcome o;
  auto pf = pushforward_exponentiable(pi, zeta);
  for (std::size_t j = 0; j < family.size(); ++j)
    for (const auto& p : to_2[j]) {
      ++o.checks;
      auto res = check_pushforward_adjunction(pf, pi, zeta, p);
      if (!res.holds || res.over_k != res.over_e) {
        o.ok = false;
        o.detail = "J = " + family[j].name + " " + functor_id(p) + ": " +
                   (res.witness ? res.witness->kind : std::string("count mismatch"));
        o.inputs = {{"fibration", emit_functor(pi)}, {"over", emit_functor(zeta)}, {"j", emit_functor(p)}};
        return o;
      }
    }
  return o;
}

// ---- 8 --------------------------------------------------------------------

struct C8Case {
  int c = 0, d = 0;
  Functor f;
};

// ---- 9 --------------------------------------------------------------------

FiniteCategory connected_piece(Rng& rng) {
  for (;;) {
    auto x = random_category(rng, {2, 4});
    if (is_connected(x)) return x;
  }
}

// A final functor into d: a point at a final object, a projection from a
// connected factor, or a random functor that passes the check.
Functor random_final_into(Rng& rng, const FiniteCategory& d) {
  const int s = rng.uniform(0, 2);
  if (s == 0)
    if (auto y = final_object(d)) return point(d, *y);
  if (s <= 1) return projection_from(connected_piece(rng), d);
  for (int t = 0; t < 40; ++t) {
    auto c = random_category(rng, {3, 6});
    auto f = random_functor(rng, c, d);
    if (f && is_final(*f)) return *f;
  }
  return projection_from(connected_piece(rng), d);
}

Functor random_initial_into(Rng& rng, const FiniteCategory& d) {
  return opposite(random_final_into(rng, opposite(d)));
}

enum ClosurePart { law1, law2, law3, law4, products, localization, pullback_stability, closure_parts };

const char* part_name(int p) {
  static const char* names[] = {"final o final",      "initial o initial", "g final from f, g o f final",
                                "g initial from f, g o f initial", "products", "localization",
                                "pullback along coCartesian"};
  return names[p];
}

Outcome c9(Rng& rng, int index, int per_part) {
  const int part = index / per_part;
  Outcome o;
  auto violated = [&](const std::string& what, std::initializer_list<std::pair<const char*, const Functor*>> fs) {
    o.ok = false;
    o.detail = std::string(part_name(part)) + ": " + what;
    o.inputs = Json::object();
    for (const auto& [k, f] : fs) o.inputs[k] = emit_functor(*f);
  };
  o.tag = "hit";
  switch (part) {
    case law1: {
      auto e = random_category(rng, {3, 6});
      auto g = random_final_into(rng, e);
      auto f = random_final_into(rng, g.source());
      if (!is_final(compose(g, f))) violated("composite not final", {{"f", &f}, {"g", &g}});
      break;
    }
    case law2: {
      auto e = random_category(rng, {3, 6});
      auto g = random_initial_into(rng, e);
      auto f = random_initial_into(rng, g.source());
      if (!is_initial(compose(g, f))) violated("composite not initial", {{"f", &f}, {"g", &g}});
      break;
    }
    case law3:
    case law4: {
      const bool fin = part == law3;
      auto d = random_category(rng, {3, 6});
      auto f = fin ? random_final_into(rng, d) : random_initial_into(rng, d);
      auto check = [&](const Functor& h) { return fin ? is_final(h).holds : is_initial(h).holds; };
      std::optional<Functor> g;
      for (int t = 0; t < 40 && !g; ++t) {
        auto e = random_category(rng, {3, 6});
        auto cand = random_functor(rng, d, e);
        if (cand && check(compose(*cand, f))) g = cand;
      }
      if (!g) {
        o.tag = "fallback";
        g = identity_functor(d);
      }
      if (!check(*g)) violated(fin ? "g not final" : "g not initial", {{"f", &f}, {"g", &*g}});
      break;
    }
    case products: {
      auto d1 = random_category(rng, {2, 4});
      auto d2 = random_category(rng, {2, 4});
      auto f = random_final_into(rng, d1);
      auto g = random_final_into(rng, d2);
      if (!is_final(product(f, g))) violated("product not final", {{"f", &f}, {"g", &g}});
      break;
    }
    case localization: {
      auto c = random_category(rng, {3, 6});
      auto l = product_projections(c, interval(1), product(c, interval(1))).first;
      if (!is_final(l)) violated("not final", {{"localization", &l}});
      else if (!is_initial(l)) violated("not initial", {{"localization", &l}});
      break;
    }
    default: {
      auto k = random_category(rng, {3, 5});
      Functor p;
      if (rng.coin()) {
        auto j = functor_into(rng, k);
        p = cocart_replacement(j).projection;
      } else {
        p = projection_from(random_category(rng, {2, 4}), k);
      }
      if (!is_cocartesian_fibration(p)) {
        violated("generator produced a non-coCartesian functor", {{"p", &p}});
        break;
      }
      auto f = random_final_into(rng, k);
      auto pb = pullback(p, f);
      if (!is_final(pb.first)) violated("pullback not final", {{"p", &p}, {"f", &f}});
      break;
    }
  }
  return o;
}

// ---- 10 -------------------------------------------------------------------

// Chains of non-identity morphisms listed directly; boundary ranks over F_p.
std::vector<std::vector<std::vector<int>>> oracle_chains(const FiniteCategory& c, int top) {
  std::vector<std::vector<std::vector<int>>> chains(top + 1);
  for (int x = 0; x < c.object_count(); ++x) chains[0].push_back({x});
  for (int m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) chains[1].push_back({m});
  for (int k = 2; k <= top; ++k)
    for (const auto& s : chains[k - 1])
      for (int m = 0; m < c.morphism_count(); ++m)
        if (!c.is_identity(m) && c.src(m) == c.tgt(s.back())) {
          auto t = s;
          t.push_back(m);
          chains[k].push_back(t);
        }
  return chains;
}

long mod_pow(long a, long e, long p) {
  long r = 1;
  a %= p;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
  }
  return r;
}

int boundary_rank(const FiniteCategory& c, const std::vector<std::vector<std::vector<int>>>& chains, int k, long p) {
  std::map<std::vector<int>, int> row;
  for (std::size_t i = 0; i < chains[k - 1].size(); ++i) row[chains[k - 1][i]] = static_cast<int>(i);
  std::vector<std::vector<long>> m(chains[k - 1].size(), std::vector<long>(chains[k].size(), 0));
  for (std::size_t j = 0; j < chains[k].size(); ++j) {
    const auto& s = chains[k][j];
    for (int i = 0; i <= k; ++i) {
      std::vector<int> face;
      if (k == 1) {
        face = {i == 0 ? c.tgt(s[0]) : c.src(s[0])};
      } else if (i == 0) {
        face.assign(s.begin() + 1, s.end());
      } else if (i == k) {
        face.assign(s.begin(), s.end() - 1);
      } else {
        const int comp = c.compose(s[i], s[i - 1]);
        if (c.is_identity(comp)) continue;
        for (int t = 0; t < k; ++t) {
          if (t == i - 1) face.push_back(comp);
          else if (t != i) face.push_back(s[t]);
        }
      }
      long& e = m[row.at(face)][j];
      e = ((e + (i % 2 == 0 ? 1 : -1)) % p + p) % p;
    }
  }
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows && piv < 0; ++r)
      if (m[r][col] != 0) piv = r;
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    const long inv = mod_pow(m[rank][col], p - 2, p);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const long f = m[r][col] * inv % p;
      for (int cc = col; cc < cols; ++cc) m[r][cc] = ((m[r][cc] - f * m[rank][cc]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// dim H_k(C; F_p) for k = 0..d.
std::vector<long> oracle_betti(const FiniteCategory& c, int d, long p) {
  auto chains = oracle_chains(c, d + 1);
  std::vector<int> rk(d + 3, 0);
  for (int k = 1; k <= d + 1; ++k) rk[k] = boundary_rank(c, chains, k, p);
  std::vector<long> out;
  for (int k = 0; k <= d; ++k) out.push_back(static_cast<long>(chains[k].size()) - rk[k] - rk[k + 1]);
  return out;
}

// Universal coefficients applied to the integral groups.
std::vector<long> predicted_betti(const HomologyReport& r, long p) {
  std::vector<long> out;
  auto tors = [&](std::size_t k) {
    long n = 0;
    for (auto t : r.groups[k].torsion) n += (t % p == 0);
    return n;
  };
  for (std::size_t k = 0; k < r.groups.size(); ++k)
    out.push_back(r.groups[k].rank + tors(k) + (k > 0 ? tors(k - 1) : 0));
  return out;
}

std::string oracle_mismatch(const FiniteCategory& c, const HomologyReport& r, int d) {
  for (long p : {2L, 3L, 5L, 1000003L})
    if (oracle_betti(c, d, p) != predicted_betti(r, p)) return "oracle disagrees over F_" + std::to_string(p);
  return {};
}

std::string groups_text(const HomologyReport& r) {
  std::ostringstream s;
  for (std::size_t k = 0; k < r.groups.size(); ++k) {
    s << (k ? ", " : "") << "H" << k << " = Z^" << r.groups[k].rank;
    for (auto t : r.groups[k].torsion) s << " + Z/" << t;
  }
  return s.str();
}

std::vector<NamedCheck> c10_checks(const SuiteOptions& opt) {
  std::vector<NamedCheck> v;
  auto acyclic = [](std::string name, FiniteCategory c) {
    return NamedCheck{name + " acyclic through degree 3", [c] {
                        auto r = homology(c, 3);
                        if (!r.reduced_trivial()) return "not acyclic: " + groups_text(r);
                        return oracle_mismatch(c, r, 3);
                      }};
  };
  for (int n = 0; n <= 4; ++n) v.push_back(acyclic("[" + std::to_string(n) + "]", interval(n)));
  v.push_back(acyclic("walking isomorphism", walking_isomorphism()));
  v.push_back({"BZ2 through degree 3", [] {
                 const auto c = cyclic_group_2();
                 auto r = homology(c, 3);
                 const std::vector<HomologyGroup> want = {{1, {}}, {0, {2}}, {0, {}}, {0, {2}}};
                 if (r.groups != want) return "got " + groups_text(r);
                 if (oracle_betti(c, 3, 2) != std::vector<long>{1, 1, 1, 1}) return std::string("F_2 oracle");
                 if (oracle_betti(c, 3, 3) != std::vector<long>{1, 0, 0, 0}) return std::string("F_3 oracle");
                 return oracle_mismatch(c, r, 3);
               }});
  for (int i = 0; i < count_or(opt, 40); ++i) {
    const auto s = instance_seed(opt.seed, 110, i);
    v.push_back({"random category #" + std::to_string(i), [s] {
                   Rng rng(s);
                   auto c = random_category(rng, {3, 8});
                   return oracle_mismatch(c, homology(c, 3), 3);
                 }});
  }
  return v;
}

// ---- 11 -------------------------------------------------------------------

std::vector<int> component_labels(const FiniteCategory& c, int* count) {
  UnionFind uf(c.object_count());
  for (int m = 0; m < c.morphism_count(); ++m) uf.unite(c.src(m), c.tgt(m));
  return uf.labels(count);
}

Outcome c11(Rng& rng, int) {
  Functor right;
  for (;;) {
    if (rng.coin()) {
      right = random_functor_over_interval(rng, rng.uniform(1, 2), 10);
    } else {
      auto y = random_category(rng, {3, 5});
      right = projection_from(random_category(rng, {2, 4}), y);
    }
    if (is_left_final(right) && is_right_initial(right)) break;
  }
  const auto& y = right.target();
  Functor bottom;
  {
    auto y2 = random_category(rng, {3, 6});
    auto g = random_functor(rng, y2, y);
    bottom = g ? *g : point(y, rng.uniform(0, y.object_count() - 1));
  }
  auto sq = pullback_square(right, bottom);
  Outcome o;
  auto fail = [&](std::string why) {
    o.ok = false;
    o.detail = std::move(why);
    o.inputs = {{"right", emit_functor(right)}, {"bottom", emit_functor(bottom)}};
  };
  if (auto v = quillenB_pi0_square(sq); !v) {
    fail("pi0 square: " + (v.witness ? v.witness->kind : std::string()));
    return o;
  }
  // Independent recount: π0(X') against the set pullback.
  int n_top = 0, n_x = 0, n_y2 = 0, n_y = 0;
  const auto l_top = component_labels(sq.top.source(), &n_top);
  const auto l_x = component_labels(right.source(), &n_x);
  const auto l_y2 = component_labels(bottom.source(), &n_y2);
  const auto l_y = component_labels(y, &n_y);
  std::set<std::pair<int, int>> pairs;
  for (int a = 0; a < bottom.source().object_count(); ++a)
    for (int b = 0; b < right.source().object_count(); ++b)
      if (l_y[bottom.object(a)] == l_y[right.object(b)]) pairs.insert({l_y2[a], l_x[b]});
  std::map<int, std::pair<int, int>> image;
  for (int z = 0; z < sq.top.source().object_count(); ++z) {
    std::pair<int, int> at{l_y2[sq.left.object(z)], l_x[sq.top.object(z)]};
    image.emplace(l_top[z], at);
  }
  std::set<std::pair<int, int>> hit;
  for (const auto& [comp, at] : image) hit.insert(at);
  if (hit.size() != image.size()) fail("recount: two components of X' share an image");
  else if (hit != pairs) fail("recount: image is not the set pullback");
  return o;
}

// Splits the failing outcomes by tag.
std::map<std::string, int> tag_counts(const std::vector<Outcome>& v) {
  std::map<std::string, int> m;
  for (const auto& o : v) ++m[o.tag];
  return m;
}

Json result_json(const CriterionResult& r, bool timing) {
  Json failed = Json::array();
  for (const auto& f : r.failed)
    failed.push_back({{"index", f.index}, {"seed", std::to_string(f.seed)}, {"detail", f.detail}});
  Json out{{"number", r.number}, {"name", r.name},         {"pass", r.pass},    {"instances", r.instances},
           {"failures", r.failures}, {"detail", r.detail}, {"failed", failed}};
  if (timing) out["seconds"] = r.seconds;
  return out;
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = {
      "equivalence triangle round trips",
      "composition route coherence",
      "exponentiability examples",
      "Idem/Ret bimodules",
      "classifier menus agree",
      "replacement universal properties",
      "pushforward adjunction",
      "finality exactness against set diagrams",
      "finality calculus laws",
      "homology engine against the boundary oracle",
      "Quillen B at pi0",
      "determinism across thread counts",
  };
  return names;
}

std::uint64_t instance_seed(std::uint64_t seed, int criterion, int index) {
  // splitmix64 over the triple.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ static_cast<std::uint64_t>(criterion)) ^ static_cast<std::uint64_t>(index));
}

bool colimit_map_bijective(const Functor& f, const SetFunctor& g) {
  const auto& c = f.source();
  const auto& d = f.target();
  // Elements of G: offsets per object of D.
  std::vector<int> off_d(d.object_count() + 1, 0);
  for (int y = 0; y < d.object_count(); ++y) off_d[y + 1] = off_d[y] + g.size(y);
  UnionFind el_d(off_d.back());
  for (int m = 0; m < d.morphism_count(); ++m)
    for (int a = 0; a < g.size(d.src(m)); ++a) el_d.unite(off_d[d.src(m)] + a, off_d[d.tgt(m)] + g.act(m, a));
  std::vector<int> off_c(c.object_count() + 1, 0);
  for (int x = 0; x < c.object_count(); ++x) off_c[x + 1] = off_c[x] + g.size(f.object(x));
  UnionFind el_c(off_c.back());
  for (int m = 0; m < c.morphism_count(); ++m)
    for (int a = 0; a < g.size(f.object(c.src(m))); ++a)
      el_c.unite(off_c[c.src(m)] + a, off_c[c.tgt(m)] + g.act(f.morphism(m), a));
  int n_c = 0, n_d = 0;
  const auto lab_c = el_c.labels(&n_c);
  const auto lab_d = el_d.labels(&n_d);
  std::vector<int> image(n_c, -1);
  for (int x = 0; x < c.object_count(); ++x)
    for (int a = 0; a < g.size(f.object(x)); ++a) image[lab_c[off_c[x] + a]] = lab_d[off_d[f.object(x)] + a];
  std::vector<char> hit(n_d, 0);
  for (int k : image) {
    if (hit[k]) return false;
    hit[k] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

CriterionResult run_criterion(int number, const SuiteOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (number) {
    case 1: {
      auto v = run_instances(count_or(opt, 200), opt, 1, c1);
      r = collect(1, opt, v);
      r.detail = counts(r) + ", " + std::to_string(total_checks(v)) + " round trips" + first_failure(r);
      break;
    }
    case 2: {
      auto v = run_instances(count_or(opt, 100), opt, 2, c2);
      r = collect(2, opt, v);
      r.detail = counts(r) + first_failure(r);
      break;
    }
    case 3:
    case 10: {
      const auto checks = number == 3 ? c3_checks(opt) : c10_checks(opt);
      auto v = run_instances(static_cast<int>(checks.size()), opt, number, [&](Rng&, int i) {
        Outcome o;
        auto why = checks[i].run();
        if (!why.empty()) {
          o.ok = false;
          o.detail = checks[i].name + ": " + why;
        }
        return o;
      });
      r = collect(number, opt, v);
      r.detail = counts(r) + first_failure(r);
      break;
    }
    case 4: {
      auto v = run_instances(1, opt, 4, [](Rng&, int) {
        Outcome o;
        auto rep = idem_ret_report();
        if (!rep.holds()) {
          o.ok = false;
          o.detail = std::string("coend Idem ") + (rep.coend_idem.holds ? "ok" : "fails") + ", coend Ret " +
                     (rep.coend_ret.holds ? "ok" : "fails") + ", glued Idem " + (rep.corr_idem ? "ok" : "fails") +
                     ", glued Ret " + (rep.corr_ret ? "ok" : "fails");
        }
        return o;
      });
      r = collect(4, opt, v);
      r.detail = r.pass ? "M (x) N = Hom_Idem and N (x) M = Hom_Ret by both routes" : r.failed.front().detail;
      break;
    }
    case 5: {
      auto v = run_instances(count_or(opt, 300), opt, 5, c5);
      r = collect(5, opt, v);
      r.detail = counts(r) + ", " + std::to_string(total_checks(v)) + " menu groups" + first_failure(r);
      break;
    }
    case 6: {
      C6Plan plan{count_or(opt, 300), count_or(opt, 60)};
      std::vector<NamedCategory> bases;
      for (auto& c : small_categories())
        if (c.category.object_count() > 0) bases.push_back(c);
      std::vector<std::vector<SetFunctor>> cov, contra;
      for (const auto& b : bases) {
        cov.push_back(enumerate_set_functors(b.category, 2));
        contra.push_back(enumerate_set_functors(opposite(b.category), 2));
      }
      auto v = run_instances(std::max(plan.menu_inputs, plan.universal), opt, 6,
                             [&](Rng& rng, int i) { return c6(rng, i, opt, plan, bases, cov, contra); });
      r = collect(6, opt, v);
      r.detail = counts(r) + ", " + std::to_string(total_checks(v)) +
                 " checks (replacements of the menu inputs; left and right replacements over " +
                 std::to_string(bases.size()) + " bases against every set functor of size <= 2)" + first_failure(r);
      break;
    }
    case 7: {
      const auto family = small_categories();
      std::vector<std::vector<Functor>> to_2;
      for (const auto& j : family) to_2.push_back(enumerate_functors(j.category, interval(2)));
      auto v = run_instances(count_or(opt, 50), opt, 7, [&](Rng& rng, int i) { return c7(rng, i, family, to_2); });
      r = collect(7, opt, v);
      r.detail = counts(r) + ", " + std::to_string(total_checks(v)) + " bijections over " +
                 std::to_string(family.size()) + " shapes J" + first_failure(r);
      break;
    }
    case 8: {
      const auto family = small_categories();
      std::vector<C8Case> cases;
      for (int a = 0; a < static_cast<int>(family.size()); ++a)
        for (int b = 0; b < static_cast<int>(family.size()); ++b)
          for (auto& f : enumerate_functors(family[a].category, family[b].category)) cases.push_back({a, b, f});
      std::vector<std::vector<SetFunctor>> diagrams;
      for (const auto& d : family) diagrams.push_back(enumerate_set_functors(d.category, 2));
      auto v = run_instances(static_cast<int>(cases.size()), opt, 8, [&](Rng&, int i) {
        const auto& k = cases[i];
        Outcome o;
        const bool verdict = is_final(k.f).holds;
        bool small = true;
        for (const auto& g : diagrams[k.d]) {
          ++o.checks;
          if (!colimit_map_bijective(k.f, g)) {
            small = false;
            break;
          }
        }
        bool corep = true;
        for (int y = 0; y < k.f.target().object_count() && corep; ++y)
          corep = colimit_map_bijective(k.f, corepresentable(k.f.target(), y));
        o.tag = verdict == small ? "agree" : verdict ? "unsound" : "undetected";
        if (verdict != corep) o.tag = "corepresentable_mismatch";
        if (o.tag != "agree") {
          o.ok = false;
          o.detail = o.tag + ": " + family[k.c].name + " -> " + family[k.d].name + " " + functor_id(k.f) +
                     (verdict ? " passes" : " fails") + " the comma check";
          o.inputs = {{"functor", emit_functor(k.f)}};
        }
        return o;
      });
      r = collect(8, opt, v);
      auto tags = tag_counts(v);
      r.detail = std::to_string(r.instances) + " functors, " + std::to_string(total_checks(v)) +
                 " diagram checks; sound (final => every diagram bijective): " +
                 std::to_string(tags["unsound"]) + " violations; exact (non-final => some diagram of size <= 2 "
                 "detects it): " + std::to_string(tags["undetected"]) +
                 " non-final functors undetected; corepresentable diagrams disagree on " +
                 std::to_string(tags["corepresentable_mismatch"]) + first_failure(r);
      break;
    }
    case 9: {
      const int per = count_or(opt, 100);
      auto v = run_instances(per * closure_parts, opt, 9, [per](Rng& rng, int i) { return c9(rng, i, per); });
      r = collect(9, opt, v);
      std::ostringstream s;
      s << counts(r);
      for (int p = 0; p < closure_parts; ++p) {
        int bad = 0, fallback = 0;
        for (int i = p * per; i < (p + 1) * per; ++i) {
          bad += !v[i].ok;
          fallback += v[i].tag == "fallback";
        }
        s << "; " << part_name(p) << ": " << bad << " violations";
        if (fallback) s << " (" << fallback << " with g = id)";
      }
      r.detail = s.str() + first_failure(r);
      break;
    }
    case 11: {
      auto v = run_instances(count_or(opt, 50), opt, 11, c11);
      r = collect(11, opt, v);
      r.detail = counts(r) + first_failure(r);
      break;
    }
    case 12: {
      SuiteOptions a = opt;
      a.criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
      a.timing = false;
      a.artifact_dir.clear();
      SuiteOptions b = a;
      b.threads = opt.threads > 1 ? 1 : 4;
      const auto ra = dump(emit_report(run_suite(a)));
      const auto rb = dump(emit_report(run_suite(b)));
      r.number = 12;
      r.name = criterion_names()[11];
      r.instances = 1;
      r.pass = ra == rb;
      r.failures = r.pass ? 0 : 1;
      r.detail = r.pass ? "reports of criteria 1-11 are byte-identical (" + std::to_string(ra.size()) + " bytes)"
                        : "reports differ";
      if (!r.pass) r.failed.push_back({0, opt.seed, r.detail, Json{{"a", ra}, {"b", rb}}});
      break;
    }
    default:
      throw PreconditionError("no criterion " + std::to_string(number),
                              Witness{"unknown_criterion", {std::to_string(number)}, ""});
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

SuiteReport run_suite(const SuiteOptions& options) {
  SuiteReport rep;
  rep.options = options;
  auto which = options.criteria;
  if (which.empty())
    for (int n = 1; n <= 12; ++n) which.push_back(n);
  for (int n : which) rep.results.push_back(run_criterion(n, options));
  return rep;
}

Json emit_report(const SuiteReport& report) {
  Json results = Json::array();
  for (const auto& r : report.results) results.push_back(result_json(r, report.options.timing));
  return Json{{"format_version", kFormatVersion},
              {"kind", "suite_report"},
              {"seed", std::to_string(report.options.seed)},
              {"size", report.options.size},
              {"criteria", results},
              {"pass", report.pass()}};
}

std::vector<std::string> write_failure_artifacts(const SuiteReport& report) {
  std::vector<std::string> paths;
  if (report.options.artifact_dir.empty()) return paths;
  namespace fs = std::filesystem;
  fs::create_directories(report.options.artifact_dir);
  for (const auto& r : report.results)
    for (const auto& f : r.failed) {
      const auto path = (fs::path(report.options.artifact_dir) /
                         ("criterion-" + std::to_string(r.number) + "-instance-" + std::to_string(f.index) + ".json"))
                            .string();
      Json doc{{"format_version", kFormatVersion}, {"kind", "suite_failure"},
               {"criterion", r.number},            {"index", f.index},
               {"seed", std::to_string(f.seed)},   {"detail", f.detail},
               {"inputs", f.inputs}};
      write_text_file(path, dump(doc));
      paths.push_back(path);
    }
  return paths;
}

}  // namespace fibcat
