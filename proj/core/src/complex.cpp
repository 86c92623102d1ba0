#include "rwc/complex.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

namespace rwc {

WeightedComplex::WeightedComplex(int n, int d)
    : indexer_(std::make_shared<const SimplexIndexer>(n, d)) {}

WeightedComplex::WeightedComplex(int n, int d, std::vector<Rank> present,
                                 std::vector<double> weights)
    : indexer_(std::make_shared<const SimplexIndexer>(n, d)) {
  if (present.size() != weights.size()) {
    throw std::invalid_argument("WeightedComplex: present/weights size mismatch");
  }
  std::vector<std::size_t> order(present.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return present[a] < present[b]; });
  present_.reserve(present.size());
  weights_.reserve(present.size());
  for (std::size_t i : order) {
    if (present[i] >= indexer_->num_top()) {
      throw std::invalid_argument("WeightedComplex: rank " + std::to_string(present[i]) +
                                  " is not a valid d-simplex rank");
    }
    if (!present_.empty() && present_.back() == present[i]) {
      throw std::invalid_argument("WeightedComplex: duplicate d-simplex rank " +
                                  std::to_string(present[i]));
    }
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw std::invalid_argument("WeightedComplex: weights must be finite and nonnegative");
    }
    present_.push_back(present[i]);
    weights_.push_back(weights[i]);
  }
}

WeightedComplex::WeightedComplex(std::shared_ptr<const SimplexIndexer> indexer,
                                 std::vector<Rank> present, std::vector<double> weights)
    : indexer_(std::move(indexer)), present_(std::move(present)), weights_(std::move(weights)) {}

WeightedComplex WeightedComplex::from_sorted(std::shared_ptr<const SimplexIndexer> indexer,
                                             std::vector<Rank> present,
                                             std::vector<double> weights) {
  return WeightedComplex(std::move(indexer), std::move(present), std::move(weights));
}

bool WeightedComplex::contains(Rank tau) const {
  return std::binary_search(present_.begin(), present_.end(), tau);
}

bool WeightedComplex::contains(const Simplex& tau) const {
  if (tau.dim() != d() || tau.span_bound() > static_cast<Vertex>(n())) return false;
  return contains(indexer_->rank_of(tau));
}

std::optional<double> WeightedComplex::weight(Rank tau) const {
  auto it = std::lower_bound(present_.begin(), present_.end(), tau);
  if (it == present_.end() || *it != tau) return std::nullopt;
  return weights_[static_cast<std::size_t>(it - present_.begin())];
}

int WeightedComplex::degree(const Simplex& sigma) const {
  if (sigma.dim() != d() - 1) throw std::domain_error("degree: sigma must be a (d-1)-simplex");
  int count = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(n()); ++v) {
    if (sigma.contains(v)) continue;
    if (contains(indexer_->rank_of(sigma.with(v)))) ++count;
  }
  return count;
}

WeightedComplex WeightedComplex::with_simplex(Rank tau, double w) const {
  if (tau >= indexer_->num_top()) throw std::out_of_range("with_simplex: invalid rank");
  if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("with_simplex: bad weight");
  auto it = std::lower_bound(present_.begin(), present_.end(), tau);
  const auto pos = static_cast<std::size_t>(it - present_.begin());
  std::vector<Rank> p = present_;
  std::vector<double> ws = weights_;
  if (it != present_.end() && *it == tau) {
    ws[pos] = w;
  } else {
    p.insert(p.begin() + static_cast<std::ptrdiff_t>(pos), tau);
    ws.insert(ws.begin() + static_cast<std::ptrdiff_t>(pos), w);
  }
  return WeightedComplex(indexer_, std::move(p), std::move(ws));
}

WeightedComplex WeightedComplex::without_simplex(Rank tau) const {
  auto it = std::lower_bound(present_.begin(), present_.end(), tau);
  if (it == present_.end() || *it != tau) return *this;
  const auto pos = static_cast<std::ptrdiff_t>(it - present_.begin());
  std::vector<Rank> p = present_;
  std::vector<double> ws = weights_;
  p.erase(p.begin() + pos);
  ws.erase(ws.begin() + pos);
  return WeightedComplex(indexer_, std::move(p), std::move(ws));
}

bool operator==(const WeightedComplex& a, const WeightedComplex& b) {
  return a.n() == b.n() && a.d() == b.d() && a.present_ == b.present_ && a.weights_ == b.weights_;
}

std::size_t SubComplexView::num_faces() const {
  if (faces) return faces->size();
  return static_cast<std::size_t>(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d)));
}

LocalComplex relabel(const SubComplexView& view) {
  if (!view.faces) throw std::invalid_argument("relabel: view must list its faces explicitly");
  const SimplexIndexer idx(view.n, view.d);
  std::vector<Simplex> top;
  std::vector<Simplex> fcs;
  top.reserve(view.top.size());
  fcs.reserve(view.faces->size());
  std::vector<Vertex> used;
  for (Rank r : view.top) {
    top.push_back(idx.top(r));
    used.insert(used.end(), top.back().begin(), top.back().end());
  }
  for (Rank r : *view.faces) {
    fcs.push_back(idx.face(r));
    used.insert(used.end(), fcs.back().begin(), fcs.back().end());
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  auto relabel_one = [&](const Simplex& s) {
    std::array<Vertex, kMaxSimplexVertices> vs{};
    for (std::size_t i = 0; i < s.size(); ++i) {
      vs[i] = static_cast<Vertex>(std::lower_bound(used.begin(), used.end(), s[i]) - used.begin());
    }
    return Simplex(std::span<const Vertex>(vs.data(), s.size()));
  };
  LocalComplex out;
  out.d = view.d;
  out.num_vertices = static_cast<int>(used.size());
  const int nv = std::max(out.num_vertices, view.d + 1);
  const BinomialTable binom(nv, view.d + 1);
  auto colex_key = [&](const Simplex& s) {
    Rank r = 0;
    for (std::size_t i = 0; i < s.size(); ++i) r += binom(static_cast<int>(s[i]), static_cast<int>(i) + 1);
    return r;
  };
  std::vector<std::pair<Rank, std::size_t>> order;
  order.reserve(top.size());
  for (std::size_t i = 0; i < top.size(); ++i) {
    top[i] = relabel_one(top[i]);
    order.emplace_back(colex_key(top[i]), i);
  }
  std::sort(order.begin(), order.end());
  for (auto [key, i] : order) {
    out.top.push_back(top[i]);
    out.weights.push_back(view.weights.empty() ? 1.0 : view.weights[i]);
  }
  order.clear();
  for (std::size_t i = 0; i < fcs.size(); ++i) {
    fcs[i] = relabel_one(fcs[i]);
    order.emplace_back(colex_key(fcs[i]), i);
  }
  std::sort(order.begin(), order.end());
  for (auto [key, i] : order) out.faces.push_back(fcs[i]);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

void write_complex(std::ostream& os, const WeightedComplex& x) {
  os << "n=" << x.n() << " d=" << x.d() << '\n';
  const auto present = x.present();
  const auto weights = x.weights();
  for (std::size_t i = 0; i < present.size(); ++i) {
    const Simplex tau = x.indexer().top(present[i]);
    for (Vertex v : tau) os << v << ',';
    os << format_double(weights[i]) << '\n';
  }
}

namespace {

[[noreturn]] void format_error(std::size_t line, const std::string& what) {
  throw std::runtime_error("complex file line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(std::string_view text, std::size_t line) {
  T value{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    format_error(line, "cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

WeightedComplex read_complex(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  int n = -1;
  int d = -1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream header(line);
    std::string a;
    std::string b;
    header >> a >> b;
    if (a.rfind("n=", 0) != 0 || b.rfind("d=", 0) != 0) format_error(line_no, "expected header 'n=<int> d=<int>'");
    n = parse_number<int>(std::string_view(a).substr(2), line_no);
    d = parse_number<int>(std::string_view(b).substr(2), line_no);
    break;
  }
  if (n < 0) throw std::runtime_error("complex file: missing header");
  if (d < 1 || n <= d) format_error(line_no, "need 1 <= d < n");
  const SimplexIndexer idx(n, d);
  std::vector<Rank> ranks;
  std::vector<double> weights;
  std::set<Rank> seen;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != static_cast<std::size_t>(d) + 2) {
      format_error(line_no, "expected " + std::to_string(d + 1) + " vertices and a weight");
    }
    std::array<Vertex, kMaxSimplexVertices> vs{};
    for (int i = 0; i <= d; ++i) {
      const auto v = parse_number<long long>(fields[static_cast<std::size_t>(i)], line_no);
      if (v < 0 || v >= n) format_error(line_no, "vertex out of range");
      vs[static_cast<std::size_t>(i)] = static_cast<Vertex>(v);
      if (i > 0 && vs[static_cast<std::size_t>(i)] <= vs[static_cast<std::size_t>(i) - 1]) {
        format_error(line_no, "vertices must be strictly ascending");
      }
    }
    const double w = parse_number<double>(fields.back(), line_no);
    if (!(w >= 0.0) || !std::isfinite(w)) format_error(line_no, "weight must be finite and >= 0");
    const Rank r = idx.rank_of(std::span<const Vertex>(vs.data(), static_cast<std::size_t>(d) + 1));
    if (!seen.insert(r).second) format_error(line_no, "duplicate simplex");
    ranks.push_back(r);
    weights.push_back(w);
  }
  return WeightedComplex(n, d, std::move(ranks), std::move(weights));
}

}  // namespace rwc
