#include "doctest.h"

#include <map>

#include "fibcat/catalog.hpp"
#include "fibcat/constructions.hpp"
#include "fibcat/homology.hpp"

using namespace fibcat;

namespace {

// Independent oracle: chains listed directly, boundary ranks over F_p.
struct Oracle {
  std::vector<std::vector<std::vector<int>>> chains;  // chains[k]: k non-identity morphisms (objects for k = 0)
};

Oracle build_oracle(const FiniteCategory& c, int top) {
  Oracle o;
  o.chains.resize(top + 1);
  for (int x = 0; x < c.object_count(); ++x) o.chains[0].push_back({x});
  for (int m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) o.chains[1].push_back({m});
  for (int k = 2; k <= top; ++k) {
    for (const auto& s : o.chains[k - 1])
      for (int m = 0; m < c.morphism_count(); ++m)
        if (!c.is_identity(m) && c.src(m) == c.tgt(s.back())) {
          auto t = s;
          t.push_back(m);
          o.chains[k].push_back(t);
        }
  }
  return o;
}

// Dense boundary matrix of degree k, entries reduced mod p.
std::vector<std::vector<long>> boundary_mod(const FiniteCategory& c, const Oracle& o, int k, long p) {
  std::map<std::vector<int>, int> row;
  for (std::size_t i = 0; i < o.chains[k - 1].size(); ++i) row[o.chains[k - 1][i]] = static_cast<int>(i);
  std::vector<std::vector<long>> m(o.chains[k - 1].size(), std::vector<long>(o.chains[k].size(), 0));
  for (std::size_t j = 0; j < o.chains[k].size(); ++j) {
    const auto& s = o.chains[k][j];
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
  return m;
}

long pow_mod(long a, long e, long p) {
  long r = 1;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

int rank_mod(std::vector<std::vector<long>> m, long p) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    const long inv = pow_mod(m[rank][col], p - 2, p);
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
std::vector<long> betti_mod(const FiniteCategory& c, int d, long p) {
  auto o = build_oracle(c, d + 1);
  std::vector<int> rk(d + 3, 0);
  for (int k = 1; k <= d + 1; ++k) rk[k] = rank_mod(boundary_mod(c, o, k, p), p);
  std::vector<long> out;
  for (int k = 0; k <= d; ++k) out.push_back(static_cast<long>(o.chains[k].size()) - rk[k] - rk[k + 1]);
  return out;
}

// Universal coefficients: dim H_k(F_p) = rank H_k + #(p-torsion in H_k) + #(p-torsion in H_{k-1}).
std::vector<long> predicted_mod(const HomologyReport& r, long p) {
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

void check_against_oracle(const FiniteCategory& c, int d) {
  auto r = homology(c, d);
  for (long p : {2L, 3L, 5L, 1000003L}) CHECK(betti_mod(c, d, p) == predicted_mod(r, p));
}

}  // namespace

TEST_CASE("nerve sizes") {
  auto t = nerve(terminal(), 3);
  CHECK(t.count(0) == 1);
  for (int k = 1; k <= 4; ++k) CHECK(t.count(k) == 0);
  auto i1 = nerve(interval(1), 2);
  CHECK(i1.count(0) == 2);
  CHECK(i1.count(1) == 1);
  CHECK(i1.count(2) == 0);
  auto idem = monoid({"1", "e"}, {{0, 1}, {1, 1}});
  auto ni = nerve(idem, 2);
  CHECK(ni.count(0) == 1);
  CHECK(ni.count(1) == 1);
  CHECK(ni.count(2) == 1);
  // [n]: k-simplices are strictly increasing chains of length k + 1.
  auto n4 = nerve(interval(4), 3);
  CHECK(n4.count(1) == 10);
  CHECK(n4.count(2) == 10);
  CHECK(n4.count(3) == 5);
  CHECK(n4.count(4) == 1);
}

TEST_CASE("face identities hold") {
  for (const auto& c : {interval(3), ret_category(), walking_isomorphism(), cyclic_group_2(),
                        product(interval(1), interval(2)), arrow_category(interval(2)).category})
    CHECK(check_face_identities(nerve(c, 3)));
}

TEST_CASE("intervals and the walking isomorphism are acyclic") {
  for (int n = 0; n <= 4; ++n) CHECK(homology(interval(n), 3).reduced_trivial());
  CHECK(homology(walking_isomorphism(), 3).reduced_trivial());
  CHECK(homology(ret_category(), 3).reduced_trivial());
}

TEST_CASE("Z/2 as a one-object category") {
  auto r = homology(cyclic_group_2(), 3);
  REQUIRE(r.groups.size() == 4);
  CHECK(r.groups[0] == HomologyGroup{1, {}});
  CHECK(r.groups[1] == HomologyGroup{0, {2}});
  CHECK(r.groups[2] == HomologyGroup{0, {}});
  CHECK(r.groups[3] == HomologyGroup{0, {2}});
  check_against_oracle(cyclic_group_2(), 3);
}

TEST_CASE("homology matches the dense oracle") {
  auto z3 = monoid({"1", "g", "h"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  for (const auto& c : {interval(3), ret_category(), walking_isomorphism(), z3, discrete({"a", "b", "c"}),
                        coproduct(cyclic_group_2(), interval(1)), twisted_arrows(ret_category()).category,
                        poset({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}})})
    check_against_oracle(c, 3);
  // The poset above is a circle.
  auto circle = homology(poset({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}}), 2);
  CHECK(circle.groups[1].rank == 1);
  auto h3 = homology(z3, 3);
  CHECK(h3.groups[1].torsion == std::vector<std::int64_t>{3});
}

TEST_CASE("degree zero counts components and relabeling is harmless") {
  auto c = coproduct(coproduct(interval(2), ret_category()), discrete({"p"}));
  CHECK(homology(c, 1).groups[0].rank == component_count(c));
  CHECK(component_count(c) == 3);
  auto r = relabel(c, [](const std::string& s) { return "z" + s; }, [](const std::string& s) { return "q" + s; });
  CHECK(homology(r, 3) == homology(c, 3));
}

TEST_CASE("pi0") {
  CHECK(component_count(interval(3)) == 1);
  CHECK(component_count(coproduct(interval(1), walking_isomorphism())) == 2);
  CHECK(component_count(empty_category()) == 0);
  CHECK_FALSE(reduced_homology_trivial(empty_category(), 1));
}

TEST_CASE("Smith normal form") {
  IntMatrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = 4;
  m.at(1, 0) = 6;
  m.at(1, 1) = 8;
  CHECK(smith_diagonal(m) == std::vector<std::int64_t>{2, 4});
  IntMatrix z(3, 3);
  CHECK(smith_diagonal(z).empty());
  IntMatrix k(2, 2);
  k.at(0, 0) = 2;
  k.at(1, 1) = 3;
  CHECK(smith_diagonal(k) == std::vector<std::int64_t>{1, 6});
}

TEST_CASE("certified verdicts are monotone in the degree") {
  for (const auto& c : {cyclic_group_2(), interval(2), walking_isomorphism()}) {
    for (int d = 0; d < 3; ++d)
      if (homology(c, d + 1).reduced_trivial()) CHECK(homology(c, d).reduced_trivial());
  }
}
