#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace rwc {

/// Vertex ids are 0-based: vertex i here is vertex i+1 of [n] = {1,...,n}.
using Vertex = std::uint32_t;
using Rank = std::uint64_t;

inline constexpr std::size_t kMaxSimplexVertices = 12;

/// A simplex as a strictly increasing vertex tuple of fixed small capacity.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<Vertex> vertices);
  explicit Simplex(std::span<const Vertex> vertices);

  /// dim = #vertices - 1, so the empty simplex has dimension -1.
  int dim() const { return static_cast<int>(size_) - 1; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  Vertex operator[](std::size_t i) const { return v_[i]; }
  const Vertex* begin() const { return v_.data(); }
  const Vertex* end() const { return v_.data() + size_; }
  std::span<const Vertex> vertices() const { return {v_.data(), size_}; }

  bool contains(Vertex v) const;
  bool contains(const Simplex& other) const;

  /// The face obtained by deleting the i-th (ascending) vertex.
  Simplex without(std::size_t i) const;
  /// The simplex with v inserted; v must not already be present.
  Simplex with(Vertex v) const;

  /// Largest vertex id plus one (0 for the empty simplex).
  Vertex span_bound() const { return size_ == 0 ? 0 : v_[size_ - 1] + 1; }

  friend bool operator==(const Simplex& a, const Simplex& b);
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b);

 private:
  std::array<Vertex, kMaxSimplexVertices> v_{};
  std::uint8_t size_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Simplex& s);

/// Exact binomial coefficient; throws std::overflow_error if it does not fit
/// in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// C(v, i) for 0 <= v <= n_max, 0 <= i <= k_max, precomputed exactly.
class BinomialTable {
 public:
  BinomialTable(int n_max, int k_max);

  std::uint64_t operator()(int v, int i) const {
    if (i < 0 || v < i) return 0;
    return table_[static_cast<std::size_t>(i) * stride_ + static_cast<std::size_t>(v)];
  }
  int n_max() const { return n_max_; }
  int k_max() const { return k_max_; }

 private:
  int n_max_;
  int k_max_;
  std::size_t stride_;
  std::vector<std::uint64_t> table_;
};

struct SimplexRank {
  Rank value = 0;
  int dim = 0;
  int n = 0;

  friend bool operator==(const SimplexRank&, const SimplexRank&) = default;
};

/// Colexicographic rank: rank({v_0 < ... < v_k}) = sum_i C(v_i, i+1).
SimplexRank rank(const Simplex& simplex, int n);
Simplex unrank(const SimplexRank& r);

/// Codimension-1 faces in deletion-index order.
std::vector<Simplex> faces(const Simplex& tau);
/// The simplices sigma + {v} for every v in [0, n) not in sigma, ascending v.
std::vector<Simplex> cofacets(const Simplex& sigma, int n);

/// Rank arithmetic for the d-simplices and (d-1)-simplices of K_n.
///
/// "Top" refers to d-simplices and "face" to (d-1)-simplices throughout.
class SimplexIndexer {
 public:
  SimplexIndexer(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  Rank num_top() const { return num_top_; }
  Rank num_faces() const { return num_faces_; }

  Rank rank_of(std::span<const Vertex> vertices) const;
  Rank rank_of(const Simplex& s) const { return rank_of(s.vertices()); }
  Simplex unrank(Rank r, int dim) const;
  Simplex top(Rank r) const { return unrank(r, d_); }
  Simplex face(Rank r) const { return unrank(r, d_ - 1); }

  /// Ranks of the d+1 faces of a d-simplex, deletion-index order.
  void face_ranks(const Simplex& tau, Rank* out) const;
  std::vector<Rank> face_ranks(const Simplex& tau) const;

  const BinomialTable& binomials() const { return binom_; }

 private:
  int n_;
  int d_;
  BinomialTable binom_;
  Rank num_top_;
  Rank num_faces_;
};

/// Steps through all k-subsets of {0..n-1} in colex order (rank 0, 1, ...).
class ColexWalker {
 public:
  ColexWalker(int n, int size);

  const Simplex& current() const { return current_; }
  bool done() const { return done_; }
  void advance();

 private:
  int n_;
  Simplex current_;
  std::array<Vertex, kMaxSimplexVertices> v_{};
  int size_;
  bool done_ = false;
};

}  // namespace rwc
