// Test-only group models that do not share code with the word-problem
// implementation: each Coxeter group is realised by integer affine maps, and
// Cayley-graph distances come from a breadth-first search over those maps.
#pragma once

#include <array>
#include <map>
#include <vector>

#include "asdim/coxeter.hpp"

namespace oracle {

struct AffineMap {
  int dim = 0;
  std::array<long, 9> a{};  // row-major dim x dim
  std::array<long, 3> b{};

  static AffineMap identity(int dim) {
    AffineMap m;
    m.dim = dim;
    for (int i = 0; i < dim; ++i) m.a[i * dim + i] = 1;
    return m;
  }

  // (this o g)(x) = A (A_g x + b_g) + b
  AffineMap compose(const AffineMap& g) const {
    AffineMap r;
    r.dim = dim;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        long v = 0;
        for (int k = 0; k < dim; ++k) v += a[i * dim + k] * g.a[k * dim + j];
        r.a[i * dim + j] = v;
      }
      long v = b[i];
      for (int k = 0; k < dim; ++k) v += a[i * dim + k] * g.b[k];
      r.b[i] = v;
    }
    return r;
  }

  std::vector<long> key() const {
    std::vector<long> k(a.begin(), a.begin() + dim * dim);
    k.insert(k.end(), b.begin(), b.begin() + dim);
    return k;
  }
};

struct GroupModel {
  std::vector<AffineMap> generators;
  int dim = 0;

  AffineMap evaluate(const asdim::Word& w) const {
    AffineMap m = AffineMap::identity(dim);
    for (auto s : w) m = m.compose(generators[s]);
    return m;
  }

  /// Cayley-graph distances from the identity, out to the given radius.
  std::map<std::vector<long>, std::size_t> distances(std::size_t radius) const {
    std::map<std::vector<long>, std::size_t> dist;
    std::vector<AffineMap> frontier{AffineMap::identity(dim)};
    dist[frontier[0].key()] = 0;
    for (std::size_t r = 1; r <= radius; ++r) {
      std::vector<AffineMap> next;
      for (const auto& m : frontier) {
        for (const auto& g : generators) {
          AffineMap n = m.compose(g);
          if (dist.emplace(n.key(), r).second) next.push_back(n);
        }
      }
      frontier = std::move(next);
    }
    return dist;
  }
};

inline AffineMap linear(int dim, std::initializer_list<long> entries) {
  AffineMap m;
  m.dim = dim;
  int i = 0;
  for (long e : entries) m.a[i++] = e;
  return m;
}

// D-infinity: reflections of Z in 0 and 1.
inline GroupModel infinite_dihedral() {
  AffineMap s = linear(1, {-1});
  AffineMap t = linear(1, {-1});
  t.b[0] = 2;
  return {{s, t}, 1};
}

// A2 = S3 acting on coordinates.
inline GroupModel a2() {
  return {{linear(3, {0, 1, 0, 1, 0, 0, 0, 0, 1}), linear(3, {1, 0, 0, 0, 0, 1, 0, 1, 0})}, 3};
}

// B2: signed permutations of two coordinates.
inline GroupModel b2() { return {{linear(2, {0, 1, 1, 0}), linear(2, {1, 0, 0, -1})}, 2}; }

// Affine A2 on Z^3: two coordinate swaps and the reflection in x0 - x2 = 1.
inline GroupModel affine_a2() {
  AffineMap s0 = linear(3, {0, 0, 1, 0, 1, 0, 1, 0, 0});
  s0.b = {1, 0, -1};
  return {{s0, linear(3, {0, 1, 0, 1, 0, 0, 0, 0, 1}), linear(3, {1, 0, 0, 0, 0, 1, 0, 1, 0})}, 3};
}

/// Every word over `rank` letters of length <= max_len.
inline std::vector<asdim::Word> all_words(std::size_t rank, std::size_t max_len) {
  std::vector<asdim::Word> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t s = 0; s < rank; ++s) {
        asdim::Word w = out[i];
        w.push_back(static_cast<asdim::GeneratorId>(s));
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace oracle
