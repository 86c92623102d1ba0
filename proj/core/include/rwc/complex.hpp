#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rwc/simplex.hpp"

namespace rwc {

/// A weighted d-complex in K_n: the complete (d-1)-skeleton (implicit, never
/// stored) plus a set of present d-simplices with nonnegative weights.
///
/// Present simplices are kept as a sorted rank sequence with a parallel weight
/// array. Instances are immutable; the add/remove helpers return new values.
class WeightedComplex {
 public:
  WeightedComplex(int n, int d);
  /// Ranks need not be sorted; duplicates, out-of-range ranks, negative or
  /// non-finite weights throw std::invalid_argument.
  WeightedComplex(int n, int d, std::vector<Rank> present, std::vector<double> weights);

  int n() const { return indexer_->n(); }
  int d() const { return indexer_->d(); }
  const SimplexIndexer& indexer() const { return *indexer_; }
  std::shared_ptr<const SimplexIndexer> shared_indexer() const { return indexer_; }

  std::span<const Rank> present() const { return present_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return present_.size(); }
  bool empty() const { return present_.empty(); }

  bool contains(Rank tau) const;
  bool contains(const Simplex& tau) const;
  std::optional<double> weight(Rank tau) const;

  /// Number of present d-simplices containing the (d-1)-simplex sigma.
  int degree(const Simplex& sigma) const;

  WeightedComplex with_simplex(Rank tau, double w) const;
  WeightedComplex without_simplex(Rank tau) const;

  friend bool operator==(const WeightedComplex& a, const WeightedComplex& b);

  /// Internal constructor for producers that already hold sorted unique data.
  static WeightedComplex from_sorted(std::shared_ptr<const SimplexIndexer> indexer,
                                     std::vector<Rank> present, std::vector<double> weights);

 private:
  WeightedComplex(std::shared_ptr<const SimplexIndexer> indexer, std::vector<Rank> present,
                  std::vector<double> weights);

  std::shared_ptr<const SimplexIndexer> indexer_;
  std::vector<Rank> present_;
  std::vector<double> weights_;
};

/// A subcomplex described by explicit simplex lists.
///
/// When `faces` is empty-optional the view carries the full ambient
/// (d-1)-skeleton; otherwise it lists its (d-1)-simplices explicitly, which is
/// how the M-balls (X, sigma)_M and strongly connected components are held.
struct SubComplexView {
  int n = 0;
  int d = 0;
  std::vector<Rank> top;
  std::vector<double> weights;
  std::optional<std::vector<Rank>> faces;

  std::size_t num_faces() const;
};

/// A small weighted complex with vertices relabeled 0..num_vertices-1 in
/// ascending order of the original ids. This is the argument handed to local
/// functionals.
struct LocalComplex {
  int d = 0;
  int num_vertices = 0;
  std::vector<Simplex> faces;
  std::vector<Simplex> top;
  std::vector<double> weights;
};

/// Relabel a view with explicit faces into a LocalComplex. Simplex order is
/// colex in the new labels.
LocalComplex relabel(const SubComplexView& view);

/// Complex file: header `n=<int> d=<int>`, then `v0,...,vd,weight` per present
/// d-simplex in rank order, weights as shortest round-trip decimals.
void write_complex(std::ostream& os, const WeightedComplex& x);
WeightedComplex read_complex(std::istream& is);

/// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace rwc
