#include "fibcat/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "fibcat/union_find.hpp"

namespace fibcat {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw PreconditionError("integer overflow in Smith normal form", Witness{"overflow", {}, {}});
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw PreconditionError("integer overflow in Smith normal form", Witness{"overflow", {}, {}});
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw PreconditionError("integer overflow in Smith normal form", Witness{"overflow", {}, {}});
  return r;
}

}  // namespace

TruncatedNerve nerve(const FiniteCategory& c, int max_dim, std::size_t cap) {
  if (max_dim < 0) throw SchemaError("nerve dimension must be non-negative");
  TruncatedNerve n;
  n.max_dim = max_dim;
  const int top = max_dim + 1;
  n.simplices.assign(top + 1, {});
  n.faces.assign(top + 1, {});
  std::vector<std::map<std::vector<int>, int>> index(top + 1);
  for (int x = 0; x < c.object_count(); ++x) {
    index[0][{x}] = x;
    n.simplices[0].push_back({x});
  }
  n.faces[0].assign(n.simplices[0].size(), {});
  for (int m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) n.simplices[1].push_back({m});
  for (int k = 2; k <= top; ++k) {
    for (const auto& s : n.simplices[k - 1]) {
      for (int m : c.out(c.tgt(s.back()))) {
        if (c.is_identity(m)) continue;
        auto t = s;
        t.push_back(m);
        n.simplices[k].push_back(std::move(t));
      }
      if (n.simplices[k].size() > cap)
        throw PreconditionError("nerve exceeds the simplex cap",
                                Witness{"simplex_cap", {std::to_string(k), std::to_string(cap)}, {}});
    }
  }
  for (int k = 1; k <= top; ++k) {
    if (n.simplices[k].size() > cap)
      throw PreconditionError("nerve exceeds the simplex cap",
                              Witness{"simplex_cap", {std::to_string(k), std::to_string(cap)}, {}});
    for (std::size_t i = 0; i < n.simplices[k].size(); ++i) index[k][n.simplices[k][i]] = static_cast<int>(i);
  }
  for (int k = 1; k <= top; ++k) {
    n.faces[k].reserve(n.simplices[k].size());
    for (const auto& s : n.simplices[k]) {
      std::vector<int> f(k + 1, -1);
      if (k == 1) {
        f[0] = c.tgt(s[0]);
        f[1] = c.src(s[0]);
      } else {
        f[0] = index[k - 1].at(std::vector<int>(s.begin() + 1, s.end()));
        f[k] = index[k - 1].at(std::vector<int>(s.begin(), s.end() - 1));
        for (int i = 1; i < k; ++i) {
          const int comp = c.compose(s[i], s[i - 1]);
          if (comp < 0) throw InvariantError("nerve: composable chain has no composite");
          if (c.is_identity(comp)) continue;
          std::vector<int> t;
          t.reserve(k - 1);
          for (int j = 0; j < k; ++j) {
            if (j == i - 1) t.push_back(comp);
            else if (j != i) t.push_back(s[j]);
          }
          f[i] = index[k - 1].at(t);
        }
      }
      n.faces[k].push_back(std::move(f));
    }
  }
  return n;
}

bool check_face_identities(const TruncatedNerve& n) {
  for (std::size_t k = 2; k < n.simplices.size(); ++k)
    for (std::size_t s = 0; s < n.simplices[k].size(); ++s) {
      const auto& f = n.faces[k][s];
      for (std::size_t i = 0; i <= k; ++i)
        for (std::size_t j = i + 1; j <= k; ++j) {
          if (f[j] < 0 || f[i] < 0) continue;
          const int lhs = n.faces[k - 1][f[j]][i];
          const int rhs = n.faces[k - 1][f[i]][j - 1];
          if (lhs != rhs) return false;
        }
    }
  return true;
}

std::vector<std::int64_t> smith_diagonal(IntMatrix m) {
  std::vector<std::int64_t> diag;
  const int rows = m.rows, cols = m.cols;
  int t = 0;
  while (t < rows && t < cols) {
    // Pivot: least nonzero absolute value in the remaining block.
    int pr = -1, pc = -1;
    std::int64_t best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        const std::int64_t v = m.at(i, j);
        if (v != 0 && (best == 0 || std::llabs(v) < best)) {
          best = std::llabs(v);
          pr = i;
          pc = j;
          if (best == 1) break;
        }
      }
    if (pr < 0) break;
    if (pr != t)
      for (int j = 0; j < cols; ++j) std::swap(m.at(pr, j), m.at(t, j));
    if (pc != t)
      for (int i = 0; i < rows; ++i) std::swap(m.at(i, pc), m.at(i, t));
    bool done = false;
    while (!done) {
      done = true;
      const std::int64_t p = m.at(t, t);
      for (int i = t + 1; i < rows; ++i) {
        const std::int64_t v = m.at(i, t);
        if (v == 0) continue;
        const std::int64_t q = v / p;
        for (int j = t; j < cols; ++j) m.at(i, j) = checked_sub(m.at(i, j), checked_mul(q, m.at(t, j)));
        if (m.at(i, t) != 0) done = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        const std::int64_t v = m.at(t, j);
        if (v == 0) continue;
        const std::int64_t q = v / p;
        for (int i = t; i < rows; ++i) m.at(i, j) = checked_sub(m.at(i, j), checked_mul(q, m.at(i, t)));
        if (m.at(t, j) != 0) done = false;
      }
      if (!done) {
        // Move the least nonzero remainder in row/column t to the pivot.
        int br = t, bc = t;
        std::int64_t b = std::llabs(m.at(t, t));
        for (int i = t + 1; i < rows; ++i)
          if (m.at(i, t) != 0 && std::llabs(m.at(i, t)) < b) {
            b = std::llabs(m.at(i, t));
            br = i;
            bc = t;
          }
        for (int j = t + 1; j < cols; ++j)
          if (m.at(t, j) != 0 && std::llabs(m.at(t, j)) < b) {
            b = std::llabs(m.at(t, j));
            br = t;
            bc = j;
          }
        if (br != t)
          for (int j = 0; j < cols; ++j) std::swap(m.at(br, j), m.at(t, j));
        if (bc != t)
          for (int i = 0; i < rows; ++i) std::swap(m.at(i, bc), m.at(i, t));
        continue;
      }
      // Divisibility of the remaining block by the pivot.
      for (int i = t + 1; i < rows && done; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (m.at(i, j) % p != 0) {
            for (int jj = t; jj < cols; ++jj) m.at(t, jj) = checked_add(m.at(t, jj), m.at(i, jj));
            done = false;
            break;
          }
    }
    diag.push_back(std::llabs(m.at(t, t)));
    ++t;
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

std::vector<HomologyGroup> chain_homology(const std::vector<std::size_t>& dims,
                                          const std::vector<IntMatrix>& boundaries, int max_deg) {
  // boundaries[k]: C_k → C_{k-1}; boundaries[0] unused.
  std::vector<std::vector<std::int64_t>> inv(boundaries.size());
  for (std::size_t k = 1; k < boundaries.size(); ++k) inv[k] = smith_diagonal(boundaries[k]);
  std::vector<HomologyGroup> out;
  for (int k = 0; k <= max_deg; ++k) {
    HomologyGroup g;
    const std::int64_t rk_in = k >= 1 ? static_cast<std::int64_t>(inv[k].size()) : 0;
    if (static_cast<std::size_t>(k + 1) >= boundaries.size())
      throw InvariantError("chain complex truncated below the requested degree");
    const auto& next = inv[k + 1];
    g.rank = static_cast<std::int64_t>(dims[k]) - rk_in - static_cast<std::int64_t>(next.size());
    for (auto v : next)
      if (v > 1) g.torsion.push_back(v);
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

constexpr std::size_t kMatrixEntryCap = 40'000'000;

IntMatrix boundary_matrix(const TruncatedNerve& n, int k) {
  const std::size_t rows = n.count(k - 1), cols = n.count(k);
  if (rows * cols > kMatrixEntryCap)
    throw PreconditionError("boundary matrix exceeds the size cap",
                            Witness{"matrix_cap", {std::to_string(rows), std::to_string(cols)}, {}});
  IntMatrix m(static_cast<int>(rows), static_cast<int>(cols));
  for (std::size_t s = 0; s < cols; ++s) {
    const auto& f = n.faces[k][s];
    for (int i = 0; i <= k; ++i)
      if (f[i] >= 0) m.at(f[i], static_cast<int>(s)) += (i % 2 == 0) ? 1 : -1;
  }
  return m;
}

}  // namespace

HomologyReport homology(const FiniteCategory& c, int max_dim, std::size_t cap) {
  auto n = nerve(c, max_dim, cap);
  std::vector<std::size_t> dims;
  std::vector<IntMatrix> bd;
  bd.emplace_back(0, 0);
  for (int k = 0; k <= max_dim + 1; ++k) dims.push_back(n.count(k));
  for (int k = 1; k <= max_dim + 1; ++k) bd.push_back(boundary_matrix(n, k));
  HomologyReport r;
  r.max_dim = max_dim;
  r.groups = chain_homology(dims, bd, max_dim);
  return r;
}

bool HomologyReport::reduced_trivial() const {
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (!groups[k].torsion.empty()) return false;
    if (groups[k].rank != (k == 0 ? 1 : 0)) return false;
  }
  return true;
}

bool reduced_homology_trivial(const FiniteCategory& c, int max_dim) {
  if (c.object_count() == 0) return false;
  if (!is_connected(c)) return false;
  return homology(c, max_dim).reduced_trivial();
}

std::vector<int> pi0(const FiniteCategory& c, int* count) {
  UnionFind uf(c.object_count());
  for (int m = 0; m < c.morphism_count(); ++m) uf.unite(c.src(m), c.tgt(m));
  return uf.labels(count);
}

int component_count(const FiniteCategory& c) {
  int n = 0;
  pi0(c, &n);
  return n;
}

bool is_connected(const FiniteCategory& c) { return component_count(c) == 1; }

}  // namespace fibcat
