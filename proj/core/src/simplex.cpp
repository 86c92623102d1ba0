#include "rwc/simplex.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rwc {

namespace {

void check_increasing(std::span<const Vertex> vs) {
  if (vs.size() > kMaxSimplexVertices) {
    throw std::domain_error("simplex has more than " + std::to_string(kMaxSimplexVertices) +
                            " vertices");
  }
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (vs[i - 1] >= vs[i]) throw std::domain_error("simplex vertices must be strictly increasing");
  }
}

}  // namespace

Simplex::Simplex(std::initializer_list<Vertex> vertices)
    : Simplex(std::span<const Vertex>(vertices.begin(), vertices.size())) {}

Simplex::Simplex(std::span<const Vertex> vertices) {
  check_increasing(vertices);
  std::copy(vertices.begin(), vertices.end(), v_.begin());
  size_ = static_cast<std::uint8_t>(vertices.size());
}

bool Simplex::contains(Vertex v) const { return std::binary_search(begin(), end(), v); }

bool Simplex::contains(const Simplex& other) const {
  return std::includes(begin(), end(), other.begin(), other.end());
}

Simplex Simplex::without(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("Simplex::without: index out of range");
  Simplex out;
  std::size_t j = 0;
  for (std::size_t k = 0; k < size_; ++k) {
    if (k != i) out.v_[j++] = v_[k];
  }
  out.size_ = static_cast<std::uint8_t>(size_ - 1);
  return out;
}

Simplex Simplex::with(Vertex v) const {
  if (size_ == kMaxSimplexVertices) throw std::domain_error("Simplex::with: capacity exceeded");
  auto pos = std::lower_bound(begin(), end(), v);
  if (pos != end() && *pos == v) throw std::domain_error("Simplex::with: vertex already present");
  Simplex out;
  const auto at = static_cast<std::size_t>(pos - begin());
  std::copy(begin(), pos, out.v_.begin());
  out.v_[at] = v;
  std::copy(pos, end(), out.v_.begin() + static_cast<std::ptrdiff_t>(at) + 1);
  out.size_ = static_cast<std::uint8_t>(size_ + 1);
  return out;
}

bool operator==(const Simplex& a, const Simplex& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::ostream& operator<<(std::ostream& os, const Simplex& s) {
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  return os << '}';
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    // C(n, i+1) = C(n, i) * (n - i) / (i + 1) is exact at every step.
    c = c * (n - i) / (i + 1);
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                                ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

BinomialTable::BinomialTable(int n_max, int k_max)
    : n_max_(n_max), k_max_(k_max), stride_(static_cast<std::size_t>(n_max) + 1) {
  if (n_max < 0 || k_max < 0) throw std::domain_error("BinomialTable: negative bounds");
  table_.assign(stride_ * (static_cast<std::size_t>(k_max) + 1), 0);
  for (int v = 0; v <= n_max; ++v) {
    table_[static_cast<std::size_t>(v)] = 1;
  }
  for (int i = 1; i <= k_max; ++i) {
    for (int v = i; v <= n_max; ++v) {
      const std::uint64_t a = (*this)(v - 1, i - 1);
      const std::uint64_t b = (*this)(v - 1, i);
      if (a > std::numeric_limits<std::uint64_t>::max() - b) {
        throw std::overflow_error("BinomialTable: C(" + std::to_string(v) + ", " +
                                  std::to_string(i) + ") overflows 64 bits");
      }
      table_[static_cast<std::size_t>(i) * stride_ + static_cast<std::size_t>(v)] = a + b;
    }
  }
}

SimplexRank rank(const Simplex& simplex, int n) {
  if (simplex.empty()) throw std::domain_error("rank: empty simplex");
  if (n <= 0 || simplex.span_bound() > static_cast<Vertex>(n)) {
    throw std::domain_error("rank: vertex out of range [0, n)");
  }
  Rank r = 0;
  for (std::size_t i = 0; i < simplex.size(); ++i) r += binomial(simplex[i], i + 1);
  return {r, simplex.dim(), n};
}

Simplex unrank(const SimplexRank& r) {
  if (r.dim < 0 || r.n <= 0) throw std::domain_error("unrank: invalid dimension or n");
  const std::uint64_t total = binomial(static_cast<std::uint64_t>(r.n), r.dim + 1);
  if (r.value >= total) throw std::out_of_range("unrank: rank out of range");
  const BinomialTable binom(r.n, r.dim + 1);
  std::array<Vertex, kMaxSimplexVertices> vs{};
  Rank rest = r.value;
  Vertex v = static_cast<Vertex>(r.n);
  for (int i = r.dim + 1; i >= 1; --i) {
    do {
      --v;
    } while (binom(static_cast<int>(v), i) > rest);
    vs[static_cast<std::size_t>(i - 1)] = v;
    rest -= binom(static_cast<int>(v), i);
  }
  return Simplex(std::span<const Vertex>(vs.data(), static_cast<std::size_t>(r.dim) + 1));
}

std::vector<Simplex> faces(const Simplex& tau) {
  std::vector<Simplex> out;
  out.reserve(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) out.push_back(tau.without(i));
  return out;
}

std::vector<Simplex> cofacets(const Simplex& sigma, int n) {
  std::vector<Simplex> out;
  if (n < 0) return out;
  out.reserve(static_cast<std::size_t>(n) - std::min<std::size_t>(sigma.size(), n));
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    if (!sigma.contains(v)) out.push_back(sigma.with(v));
  }
  return out;
}

SimplexIndexer::SimplexIndexer(int n, int d) : n_(n), d_(d), binom_(std::max(n, 1), d + 2) {
  if (d < 1 || n <= d) throw std::domain_error("SimplexIndexer: need 1 <= d < n");
  if (static_cast<std::size_t>(d) + 1 > kMaxSimplexVertices) {
    throw std::domain_error("SimplexIndexer: dimension exceeds simplex capacity");
  }
  num_top_ = binom_(n, d + 1);
  num_faces_ = binom_(n, d);
}

Rank SimplexIndexer::rank_of(std::span<const Vertex> vertices) const {
  Rank r = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    r += binom_(static_cast<int>(vertices[i]), static_cast<int>(i) + 1);
  }
  return r;
}

Simplex SimplexIndexer::unrank(Rank r, int dim) const {
  std::array<Vertex, kMaxSimplexVertices> vs{};
  const int size = dim + 1;
  int hi = n_ - 1;
  for (int i = size; i >= 1; --i) {
    // Largest v in [i-1, hi] with C(v, i) <= r.
    int lo = i - 1;
    int top = hi;
    while (lo < top) {
      const int mid = lo + (top - lo + 1) / 2;
      if (binom_(mid, i) <= r) {
        lo = mid;
      } else {
        top = mid - 1;
      }
    }
    vs[static_cast<std::size_t>(i - 1)] = static_cast<Vertex>(lo);
    r -= binom_(lo, i);
    hi = lo - 1;
  }
  return Simplex(std::span<const Vertex>(vs.data(), static_cast<std::size_t>(size)));
}

void SimplexIndexer::face_ranks(const Simplex& tau, Rank* out) const {
  const std::size_t size = tau.size();
  // prefix[j] = sum_{i<j} C(v_i, i+1); suffix part shifts index down by one.
  Rank suffix = 0;
  std::array<Rank, kMaxSimplexVertices + 1> shifted{};
  for (std::size_t i = size; i-- > 0;) {
    shifted[i] = suffix;
    suffix += binom_(static_cast<int>(tau[i]), static_cast<int>(i));
  }
  Rank prefix = 0;
  for (std::size_t j = 0; j < size; ++j) {
    out[j] = prefix + shifted[j];
    prefix += binom_(static_cast<int>(tau[j]), static_cast<int>(j) + 1);
  }
}

std::vector<Rank> SimplexIndexer::face_ranks(const Simplex& tau) const {
  std::vector<Rank> out(tau.size());
  face_ranks(tau, out.data());
  return out;
}

ColexWalker::ColexWalker(int n, int size) : n_(n), size_(size) {
  if (size < 1 || size > static_cast<int>(kMaxSimplexVertices) || size > n) {
    done_ = true;
    return;
  }
  for (int i = 0; i < size; ++i) v_[static_cast<std::size_t>(i)] = static_cast<Vertex>(i);
  current_ = Simplex(std::span<const Vertex>(v_.data(), static_cast<std::size_t>(size)));
}

void ColexWalker::advance() {
  if (done_) return;
  const auto sz = static_cast<std::size_t>(size_);
  std::size_t i = 0;
  while (i < sz) {
    const Vertex limit = (i + 1 < sz) ? v_[i + 1] : static_cast<Vertex>(n_);
    if (v_[i] + 1 < limit) break;
    ++i;
  }
  if (i == sz) {
    done_ = true;
    return;
  }
  ++v_[i];
  for (std::size_t j = 0; j < i; ++j) v_[j] = static_cast<Vertex>(j);
  current_ = Simplex(std::span<const Vertex>(v_.data(), sz));
}

}  // namespace rwc
