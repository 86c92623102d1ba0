#include "rwc/topology.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace rwc {

FaceAdjacency::FaceAdjacency(const WeightedComplex& x) : x_(&x) {
  const auto& idx = x.indexer();
  const auto w = static_cast<std::size_t>(x.d()) + 1;
  const auto present = x.present();
  face_ranks_.resize(present.size() * w);
  offsets_.assign(static_cast<std::size_t>(idx.num_faces()) + 1, 0);
  for (std::size_t i = 0; i < present.size(); ++i) {
    idx.face_ranks(idx.top(present[i]), face_ranks_.data() + i * w);
    for (std::size_t j = 0; j < w; ++j) ++offsets_[face_ranks_[i * w + j] + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  tops_.resize(present.size() * w);
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < present.size(); ++i) {
    for (std::size_t j = 0; j < w; ++j) tops_[cursor[face_ranks_[i * w + j]]++] = static_cast<std::uint32_t>(i);
  }
}

std::optional<int> PathDistanceMap::distance(Rank face) const {
  auto it = dist.find(face);
  if (it == dist.end()) return std::nullopt;
  return it->second;
}

PathDistanceMap bfs_distances(const FaceAdjacency& adj, std::span<const Rank> sources, int max_depth) {
  PathDistanceMap out;
  out.sources.assign(sources.begin(), sources.end());
  std::deque<Rank> queue;
  for (Rank s : sources) {
    if (out.dist.emplace(s, 0).second) queue.push_back(s);
  }
  while (!queue.empty()) {
    const Rank face = queue.front();
    queue.pop_front();
    const int dist = out.dist[face];
    if (max_depth >= 0 && dist >= max_depth) continue;
    for (std::uint32_t t : adj.cofacets(face)) {
      for (Rank other : adj.faces_of(t)) {
        if (out.dist.emplace(other, dist + 1).second) queue.push_back(other);
      }
    }
  }
  return out;
}

PathDistanceMap bfs_distances(const WeightedComplex& x, const Simplex& source, int max_depth) {
  if (source.dim() != x.d() - 1) throw std::domain_error("bfs_distances: source must be a (d-1)-simplex");
  const FaceAdjacency adj(x);
  const Rank r = x.indexer().rank_of(source);
  return bfs_distances(adj, std::span<const Rank>(&r, 1), max_depth);
}

bool connected_within(const FaceAdjacency& adj, Rank sigma, Rank sigma_prime, int k) {
  if (sigma == sigma_prime) return k >= 0;
  if (k <= 0) return false;
  const auto d = bfs_distances(adj, std::span<const Rank>(&sigma, 1), k);
  return d.dist.contains(sigma_prime);
}

bool connected_within(const WeightedComplex& x, const Simplex& sigma, const Simplex& sigma_prime, int k) {
  if (sigma.dim() != x.d() - 1 || sigma_prime.dim() != x.d() - 1) {
    throw std::domain_error("connected_within: arguments must be (d-1)-simplices");
  }
  const FaceAdjacency adj(x);
  return connected_within(adj, x.indexer().rank_of(sigma), x.indexer().rank_of(sigma_prime), k);
}

namespace {

std::vector<Rank> center_sources(const SimplexIndexer& idx, const Simplex& center) {
  if (center.dim() == idx.d() - 1) return {idx.rank_of(center)};
  if (center.dim() == idx.d()) return idx.face_ranks(center);
  throw std::domain_error("center must be a (d-1)- or d-simplex");
}

std::vector<std::uint32_t> reachable_tops(const FaceAdjacency& adj, const PathDistanceMap& dist, int max_face_dist) {
  std::vector<std::uint32_t> tops;
  for (const auto& [face, dd] : dist.dist) {
    if (dd > max_face_dist) continue;
    for (std::uint32_t t : adj.cofacets(face)) tops.push_back(t);
  }
  std::sort(tops.begin(), tops.end());
  tops.erase(std::unique(tops.begin(), tops.end()), tops.end());
  return tops;
}

}  // namespace

WeightedComplex ball_k(const FaceAdjacency& adj, const Simplex& center, int k) {
  const auto& x = adj.complex();
  if (k < 0) throw std::domain_error("ball_k: k must be >= 0");
  std::vector<Rank> present;
  std::vector<double> weights;
  if (k > 0) {
    const auto sources = center_sources(x.indexer(), center);
    const auto dist = bfs_distances(adj, sources, k - 1);
    for (std::uint32_t t : reachable_tops(adj, dist, k - 1)) {
      present.push_back(x.present()[t]);
      weights.push_back(x.weights()[t]);
    }
  }
  return WeightedComplex::from_sorted(x.shared_indexer(), std::move(present), std::move(weights));
}

WeightedComplex ball_k(const WeightedComplex& x, const Simplex& center, int k) {
  const FaceAdjacency adj(x);
  return ball_k(adj, center, k);
}

namespace {

SubComplexView m_ball_from_sources(const FaceAdjacency& adj, std::span<const Rank> sources, int M) {
  if (M < 1) throw std::domain_error("m_ball: M must be >= 1");
  const auto& x = adj.complex();
  const auto dist = bfs_distances(adj, sources, M - 1);
  SubComplexView view;
  view.n = x.n();
  view.d = x.d();
  std::vector<Rank> faces(sources.begin(), sources.end());
  for (std::uint32_t t : reachable_tops(adj, dist, M - 1)) {
    view.top.push_back(x.present()[t]);
    view.weights.push_back(x.weights()[t]);
    for (Rank f : adj.faces_of(t)) faces.push_back(f);
  }
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  view.faces = std::move(faces);
  return view;
}

}  // namespace

SubComplexView m_ball(const FaceAdjacency& adj, Rank sigma, int M) {
  return m_ball_from_sources(adj, std::span<const Rank>(&sigma, 1), M);
}

SubComplexView m_ball(const WeightedComplex& x, const Simplex& center, int M) {
  const FaceAdjacency adj(x);
  const auto sources = center_sources(x.indexer(), center);
  return m_ball_from_sources(adj, sources, M);
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::uint32_t{0}); }

  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }

  std::vector<std::uint32_t> parent;
};

}  // namespace

ComponentLabeling components(const FaceAdjacency& adj) {
  const auto& x = adj.complex();
  const auto num_faces = static_cast<std::size_t>(x.indexer().num_faces());
  UnionFind uf(num_faces);
  const auto present = x.present();
  for (std::size_t i = 0; i < present.size(); ++i) {
    const auto fs = adj.faces_of(i);
    for (std::size_t j = 1; j < fs.size(); ++j) {
      uf.unite(static_cast<std::uint32_t>(fs[0]), static_cast<std::uint32_t>(fs[j]));
    }
  }
  ComponentLabeling out;
  out.n = x.n();
  out.d = x.d();
  out.label.assign(num_faces, 0);
  std::vector<std::uint32_t> root_label(num_faces, UINT32_MAX);
  std::uint32_t next = 0;
  for (std::size_t f = 0; f < num_faces; ++f) {
    const auto r = uf.find(static_cast<std::uint32_t>(f));
    if (root_label[r] == UINT32_MAX) root_label[r] = next++;
    out.label[f] = root_label[r];
  }
  out.face_offsets.assign(next + 1, 0);
  out.top_offsets.assign(next + 1, 0);
  for (std::size_t f = 0; f < num_faces; ++f) ++out.face_offsets[out.label[f] + 1];
  for (std::size_t i = 0; i < present.size(); ++i) ++out.top_offsets[out.label[adj.faces_of(i)[0]] + 1];
  std::partial_sum(out.face_offsets.begin(), out.face_offsets.end(), out.face_offsets.begin());
  std::partial_sum(out.top_offsets.begin(), out.top_offsets.end(), out.top_offsets.begin());
  out.faces.resize(num_faces);
  out.tops.resize(present.size());
  std::vector<std::uint32_t> fc(out.face_offsets.begin(), out.face_offsets.end() - 1);
  std::vector<std::uint32_t> tc(out.top_offsets.begin(), out.top_offsets.end() - 1);
  for (std::size_t f = 0; f < num_faces; ++f) out.faces[fc[out.label[f]]++] = f;
  for (std::size_t i = 0; i < present.size(); ++i) out.tops[tc[out.label[adj.faces_of(i)[0]]]++] = present[i];
  return out;
}

ComponentLabeling components(const WeightedComplex& x) {
  const FaceAdjacency adj(x);
  return components(adj);
}

SubComplexView ComponentLabeling::view(std::size_t c, const WeightedComplex& x) const {
  SubComplexView v;
  v.n = n;
  v.d = d;
  const auto ts = tops_of(c);
  v.top.assign(ts.begin(), ts.end());
  v.weights.reserve(ts.size());
  for (Rank t : ts) v.weights.push_back(x.weight(t).value_or(1.0));
  const auto fs = faces_of(c);
  v.faces = std::vector<Rank>(fs.begin(), fs.end());
  return v;
}

void write_components_csv(std::ostream& os, const ComponentLabeling& labeling) {
  os << "component_id,simplex_rank,dim\n";
  for (std::size_t c = 0; c < labeling.size(); ++c) {
    for (Rank f : labeling.faces_of(c)) os << c << ',' << f << ',' << labeling.d - 1 << '\n';
    for (Rank t : labeling.tops_of(c)) os << c << ',' << t << ',' << labeling.d << '\n';
  }
}

double GammaTable::probability(double p, int k) const {
  double total = 0.0;
  for (int s = 0; s <= num_tops; ++s) {
    std::uint64_t hits = 0;
    const auto& row = counts[static_cast<std::size_t>(s)];
    for (int j = 0; j <= k && j < static_cast<int>(row.size()); ++j) hits += row[static_cast<std::size_t>(j)];
    if (hits == 0) continue;
    total += static_cast<double>(hits) * std::pow(p, s) * std::pow(1.0 - p, num_tops - s);
  }
  return total;
}

GammaTable gamma_table(int n, int d, const Simplex& sigma, const Simplex& sigma_prime) {
  const SimplexIndexer idx(n, d);
  if (idx.num_top() > static_cast<Rank>(kGammaEnumerationLimit)) {
    throw std::length_error("gamma_exact: C(n, d+1) = " + std::to_string(idx.num_top()) +
                            " exceeds the enumeration limit of " + std::to_string(kGammaEnumerationLimit));
  }
  if (idx.num_faces() > 64) throw std::length_error("gamma_exact: too many (d-1)-simplices");
  if (sigma.dim() != d - 1 || sigma_prime.dim() != d - 1 || sigma.span_bound() > static_cast<Vertex>(n) ||
      sigma_prime.span_bound() > static_cast<Vertex>(n)) {
    throw std::domain_error("gamma_exact: sigma and sigma' must be (d-1)-simplices on [0, n)");
  }
  const int num_tops = static_cast<int>(idx.num_top());
  std::vector<std::uint64_t> face_mask(static_cast<std::size_t>(num_tops));
  for (int t = 0; t < num_tops; ++t) {
    for (Rank f : idx.face_ranks(idx.top(static_cast<Rank>(t)))) face_mask[static_cast<std::size_t>(t)] |= 1ull << f;
  }
  const std::uint64_t start = 1ull << idx.rank_of(sigma);
  const std::uint64_t target = 1ull << idx.rank_of(sigma_prime);
  GammaTable table;
  table.num_tops = num_tops;
  table.counts.assign(static_cast<std::size_t>(num_tops) + 1, {});
  table.unreachable.assign(static_cast<std::size_t>(num_tops) + 1, 0);
  const std::uint64_t limit = 1ull << num_tops;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    const auto s = static_cast<std::size_t>(std::popcount(mask));
    int length = GammaTable::kUnreachable;
    std::uint64_t reach = start;
    if (reach & target) {
      length = 0;
    } else {
      for (int step = 1;; ++step) {
        std::uint64_t next = reach;
        for (std::uint64_t m = mask; m != 0; m &= m - 1) {
          const auto fm = face_mask[static_cast<std::size_t>(std::countr_zero(m))];
          if (fm & reach) next |= fm;
        }
        if (next & target) {
          length = step;
          break;
        }
        if (next == reach) break;
        reach = next;
      }
    }
    if (length == GammaTable::kUnreachable) {
      ++table.unreachable[s];
    } else {
      auto& row = table.counts[s];
      if (row.size() <= static_cast<std::size_t>(length)) row.resize(static_cast<std::size_t>(length) + 1, 0);
      ++row[static_cast<std::size_t>(length)];
    }
  }
  return table;
}

std::pair<Simplex, Simplex> canonical_face_pair(int n, int d) {
  if (n < 2 * d) throw std::domain_error("no disjoint pair of (d-1)-simplices: need n >= 2d");
  std::vector<Vertex> a(static_cast<std::size_t>(d));
  std::vector<Vertex> b(static_cast<std::size_t>(d));
  std::iota(a.begin(), a.end(), Vertex{0});
  std::iota(b.begin(), b.end(), static_cast<Vertex>(d));
  return {Simplex(std::span<const Vertex>(a)), Simplex(std::span<const Vertex>(b))};
}

std::pair<Simplex, Simplex> canonical_top_pair(int n, int d) {
  if (n < 2 * (d + 1)) throw std::domain_error("no disjoint pair of d-simplices: need n >= 2(d+1)");
  std::vector<Vertex> a(static_cast<std::size_t>(d) + 1);
  std::vector<Vertex> b(static_cast<std::size_t>(d) + 1);
  std::iota(a.begin(), a.end(), Vertex{0});
  std::iota(b.begin(), b.end(), static_cast<Vertex>(d + 1));
  return {Simplex(std::span<const Vertex>(a)), Simplex(std::span<const Vertex>(b))};
}

double gamma_exact(const ModelParams& params, int k, const Simplex& sigma, const Simplex& sigma_prime) {
  params.validate();
  return gamma_table(params.n, params.d, sigma, sigma_prime).probability(params.p, k);
}

double gamma_exact(const ModelParams& params, int k) {
  const auto [a, b] = canonical_face_pair(params.n, params.d);
  return gamma_exact(params, k, a, b);
}

}  // namespace rwc
