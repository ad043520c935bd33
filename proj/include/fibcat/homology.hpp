#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fibcat/category.hpp"

namespace fibcat {

// Nondegenerate simplices of the nerve through dimension max_dim + 1.
// simplices[0] holds objects as one-element lists; simplices[k] for k ≥ 1
// holds chains (m_1, ..., m_k) of composable non-identity morphisms, m_1
// first. faces[k][i][j] is the index of the j-th face in dimension k - 1, or
// -1 when that face is degenerate (an inner face composing to an identity).
struct TruncatedNerve {
  int max_dim = 0;
  std::vector<std::vector<std::vector<int>>> simplices;
  std::vector<std::vector<std::vector<int>>> faces;

  std::size_t count(int k) const { return k < static_cast<int>(simplices.size()) ? simplices[k].size() : 0; }
};

inline constexpr std::size_t kDefaultSimplexCap = 200'000;

// Throws PreconditionError beyond `cap` simplices in one dimension.
TruncatedNerve nerve(const FiniteCategory& c, int max_dim, std::size_t cap = kDefaultSimplexCap);

// Checks the simplicial identities d_i d_j = d_{j-1} d_i on all stored faces.
bool check_face_identities(const TruncatedNerve& n);

struct HomologyGroup {
  std::int64_t rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1, ascending
  bool operator==(const HomologyGroup&) const = default;
};

struct HomologyReport {
  int max_dim = 0;
  std::vector<HomologyGroup> groups;  // degrees 0..max_dim
  // H_0 = Z and H_k = 0 for 0 < k ≤ max_dim.
  bool reduced_trivial() const;
  bool operator==(const HomologyReport&) const = default;
};

// Integral homology of the normalized chain complex through max_dim.
HomologyReport homology(const FiniteCategory& c, int max_dim, std::size_t cap = kDefaultSimplexCap);
bool reduced_homology_trivial(const FiniteCategory& c, int max_dim);

// Dense integer matrix with Smith normal form diagonal extraction.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<std::int64_t> a;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};
// Nonzero invariant factors, ascending. Throws PreconditionError on overflow.
std::vector<std::int64_t> smith_diagonal(IntMatrix m);

// Homology through max_deg of a complex with dims[k] = rank C_k and
// boundaries[k]: C_k → C_{k-1} (boundaries[0] is ignored). Needs
// boundaries up to max_deg + 1.
std::vector<HomologyGroup> chain_homology(const std::vector<std::size_t>& dims,
                                          const std::vector<IntMatrix>& boundaries, int max_deg);

// Component label of every object (labels 0.. in order of first object).
std::vector<int> pi0(const FiniteCategory& c, int* count = nullptr);
int component_count(const FiniteCategory& c);
bool is_connected(const FiniteCategory& c);

}  // namespace fibcat
