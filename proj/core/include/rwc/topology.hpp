#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rwc/complex.hpp"
#include "rwc/sampling.hpp"
#include "rwc/simplex.hpp"

namespace rwc {

/// Face-to-cofacet incidence of the present d-simplices of a complex.
///
/// Built once per complex; every traversal below accepts either the complex
/// (and builds this internally) or a prebuilt instance.
class FaceAdjacency {
 public:
  explicit FaceAdjacency(const WeightedComplex& x);

  const WeightedComplex& complex() const { return *x_; }
  /// Positions (into x.present()) of the present cofacets of a face.
  std::span<const std::uint32_t> cofacets(Rank face) const {
    return {tops_.data() + offsets_[face], tops_.data() + offsets_[face + 1]};
  }
  /// The d+1 face ranks of the present simplex at position i.
  std::span<const Rank> faces_of(std::size_t i) const {
    const auto w = static_cast<std::size_t>(x_->d()) + 1;
    return {face_ranks_.data() + i * w, w};
  }
  int degree(Rank face) const { return static_cast<int>(offsets_[face + 1] - offsets_[face]); }

 private:
  const WeightedComplex* x_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> tops_;
  std::vector<Rank> face_ranks_;
};

/// Shortest path lengths from a source set of (d-1)-simplices.
struct PathDistanceMap {
  std::vector<Rank> sources;
  std::unordered_map<Rank, int> dist;

  std::optional<int> distance(Rank face) const;
};

/// Breadth-first traversal over "sigma ~ sigma'' iff sigma u sigma'' is
/// present". A shortest witnessing path never repeats a d-simplex (otherwise
/// the loop between the repeats could be cut out), so BFS distances agree with
/// the distinct-simplex path definition. `max_depth < 0` means unbounded.
PathDistanceMap bfs_distances(const FaceAdjacency& adj, std::span<const Rank> sources, int max_depth = -1);
PathDistanceMap bfs_distances(const WeightedComplex& x, const Simplex& source, int max_depth = -1);

bool connected_within(const WeightedComplex& x, const Simplex& sigma, const Simplex& sigma_prime, int k);
bool connected_within(const FaceAdjacency& adj, Rank sigma, Rank sigma_prime, int k);

/// B_k(center, X) for a (d-1)- or d-simplex center. The result carries the
/// full implicit (d-1)-skeleton, so it is returned as a WeightedComplex.
WeightedComplex ball_k(const WeightedComplex& x, const Simplex& center, int k);
WeightedComplex ball_k(const FaceAdjacency& adj, const Simplex& center, int k);

/// (X, center)_M with explicit faces: the center's (d-1)-faces (or the center
/// itself) plus the faces of every d-simplex reachable within M steps.
SubComplexView m_ball(const WeightedComplex& x, const Simplex& center, int M);
SubComplexView m_ball(const FaceAdjacency& adj, Rank sigma, int M);

/// Strongly connected components. Every (d-1)-simplex belongs to exactly one
/// component; faces of degree 0 are singleton components.
struct ComponentLabeling {
  int n = 0;
  int d = 0;
  /// Component id of each (d-1)-simplex, indexed by rank.
  std::vector<std::uint32_t> label;
  /// CSR lists per component: face ranks and present d-simplex ranks.
  std::vector<std::uint32_t> face_offsets;
  std::vector<Rank> faces;
  std::vector<std::uint32_t> top_offsets;
  std::vector<Rank> tops;

  std::size_t size() const { return face_offsets.empty() ? 0 : face_offsets.size() - 1; }
  std::span<const Rank> faces_of(std::size_t c) const {
    return {faces.data() + face_offsets[c], faces.data() + face_offsets[c + 1]};
  }
  std::span<const Rank> tops_of(std::size_t c) const {
    return {tops.data() + top_offsets[c], tops.data() + top_offsets[c + 1]};
  }
  /// The component as a view with explicit faces (weights taken from x).
  SubComplexView view(std::size_t c, const WeightedComplex& x) const;
};

ComponentLabeling components(const WeightedComplex& x);
ComponentLabeling components(const FaceAdjacency& adj);

/// CSV `component_id,simplex_rank,dim`.
void write_components_csv(std::ostream& os, const ComponentLabeling& labeling);

/// Distribution of the shortest path length between two (d-1)-simplices,
/// tabulated by the number of present d-simplices.
///
/// counts[s][j] is the number of present-sets of size s whose shortest path
/// has length j, with j = kUnreachable for disconnected pairs. From it the
/// connection probability for any k and p follows without re-enumeration.
struct GammaTable {
  static constexpr int kUnreachable = -1;
  int num_tops = 0;
  std::vector<std::vector<std::uint64_t>> counts;  // [size][length], length kept up to max length
  std::vector<std::uint64_t> unreachable;          // [size]

  double probability(double p, int k) const;
};

inline constexpr int kGammaEnumerationLimit = 24;

/// Exhaustive enumeration over all 2^C(n,d+1) present-sets.
GammaTable gamma_table(int n, int d, const Simplex& sigma, const Simplex& sigma_prime);
/// Exact gamma_{k,n} for the canonical disjoint pair {0..d-1}, {d..2d-1}.
double gamma_exact(const ModelParams& params, int k);
double gamma_exact(const ModelParams& params, int k, const Simplex& sigma, const Simplex& sigma_prime);

/// The canonical disjoint (d-1)-simplices {0..d-1} and {d..2d-1}.
std::pair<Simplex, Simplex> canonical_face_pair(int n, int d);
/// The canonical disjoint d-simplices {0..d} and {d+1..2d+1}.
std::pair<Simplex, Simplex> canonical_top_pair(int n, int d);

}  // namespace rwc
