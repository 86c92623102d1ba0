#include "rwc/statistics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rwc/cohomology.hpp"
#include "rwc/topology.hpp"

namespace rwc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void add_value(ExactSum& sum, const LocalValue& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    sum.add(*d);
  } else {
    sum.add(std::get<Rational>(v));
  }
}

Rational to_rational(const LocalValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return Rational(*d);
  return std::get<Rational>(v);
}

/// Visit every d-simplex of K_n in rank order with its face ranks.
template <typename Fn>
void for_each_top(const SimplexIndexer& idx, Fn&& fn) {
  std::array<Rank, kMaxSimplexVertices> fr{};
  Rank r = 0;
  for (ColexWalker walk(idx.n(), idx.d() + 1); !walk.done(); walk.advance(), ++r) {
    idx.face_ranks(walk.current(), fr.data());
    fn(r, std::span<const Rank>(fr.data(), static_cast<std::size_t>(idx.d()) + 1));
  }
}

LocalComplex singleton_local(int d) {
  LocalComplex l;
  l.d = d;
  l.num_vertices = d;
  std::vector<Vertex> vs(static_cast<std::size_t>(d));
  std::iota(vs.begin(), vs.end(), Vertex{0});
  l.faces.push_back(Simplex(std::span<const Vertex>(vs)));
  return l;
}

double parse_positive(std::string_view text, std::string_view what) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + ": expected a positive number, got '" + std::string(text) + "'");
  }
  return v;
}

int parse_radius(std::string_view text, std::string_view what) {
  int v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || v < 1) {
    throw std::invalid_argument(std::string(what) + ": expected an integer M >= 1, got '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

LocalFunctional builtin_local(std::string_view g_name, int M, int d) {
  if (M < 1) throw std::invalid_argument("local functional: M must be >= 1");
  LocalFunctional lf;
  lf.name = std::string(g_name);
  lf.M = M;
  if (g_name == "isolated") {
    lf.g = [](const LocalComplex& l) -> LocalValue { return l.top.empty() ? 1.0 : 0.0; };
    lf.H = d + 1.0;
  } else if (g_name == "cocycle") {
    lf.g = [M](const LocalComplex& l) -> LocalValue {
      const auto f = static_cast<std::int64_t>(l.faces.size());
      if (f == 0 || f > M) return Rational(0);
      return Rational(static_cast<std::int64_t>(cocycle_dim(l)), f);
    };
    lf.H = (d + 1.0) * M;
  } else if (g_name == "one") {
    lf.g = [](const LocalComplex&) -> LocalValue { return 1.0; };
    lf.H = 0.0;
  } else {
    throw std::invalid_argument("unknown local functional '" + std::string(g_name) +
                                "' (expected isolated, cocycle or one)");
  }
  return lf;
}

std::unique_ptr<Statistic> parse_statistic(std::string_view text, int d) {
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;
  if (head == "nn" && !has_arg) return std::make_unique<NearestNeighborStatistic>();
  if (head == "isolated" && !has_arg) return std::make_unique<IsolatedCount>();
  if (head == "nn-alpha" && has_arg) return std::make_unique<DilutedNearestNeighbor>(parse_positive(rest, "nn-alpha"));
  if (head == "cocycle" && has_arg) return std::make_unique<CocycleCount>(parse_radius(rest, "cocycle"));
  if (head == "betti" && has_arg) return std::make_unique<BettiBounded>(parse_radius(rest, "betti"));
  if (head == "local" && has_arg) {
    const auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw std::invalid_argument("local: expected local:<g>:<M>");
    return std::make_unique<LocalStatistic>(builtin_local(rest.substr(0, c2), parse_radius(rest.substr(c2 + 1), "local"), d));
  }
  throw std::invalid_argument("unknown statistic '" + std::string(text) +
                              "' (expected nn, nn-alpha:<a>, isolated, cocycle:<M>, betti:<M>, local:<g>:<M>)");
}

double nn_face(const PairedSample& s, const Simplex& sigma) {
  const auto& idx = s.indexer();
  if (sigma.dim() != idx.d() - 1) throw std::domain_error("nn_face: sigma must be a (d-1)-simplex");
  double best = kInf;
  for (Vertex v = 0; v < static_cast<Vertex>(idx.n()); ++v) {
    if (sigma.contains(v)) continue;
    const auto [b, w] = s.draw(idx.rank_of(sigma.with(v)), Copy::primary);
    if (b) best = std::min(best, w);
  }
  if (best == kInf) throw std::domain_error("nn_face: sigma has no present cofacet");
  return best;
}

std::vector<double> nn_faces(const PairedSample& s) {
  const auto& idx = s.indexer();
  std::vector<double> best(static_cast<std::size_t>(idx.num_faces()), kInf);
  for_each_top(idx, [&](Rank r, std::span<const Rank> fr) {
    const auto [b, w] = s.draw(r, Copy::primary);
    if (!b) return;
    for (Rank f : fr) best[f] = std::min(best[f], w);
  });
  if (std::find(best.begin(), best.end(), kInf) != best.end()) {
    throw std::domain_error("nn: some (d-1)-simplex has no present cofacet");
  }
  return best;
}

double nn_total(const PairedSample& s) {
  ExactSum sum;
  for (double v : nn_faces(s)) sum.add(v);
  return sum.to_double();
}

ExactSum nn_total_exact(const WeightedComplex& x) {
  const auto& idx = x.indexer();
  std::vector<double> best(static_cast<std::size_t>(idx.num_faces()), kInf);
  std::vector<Rank> fr(static_cast<std::size_t>(x.d()) + 1);
  const auto present = x.present();
  const auto weights = x.weights();
  for (std::size_t i = 0; i < present.size(); ++i) {
    idx.face_ranks(idx.top(present[i]), fr.data());
    for (Rank f : fr) best[f] = std::min(best[f], weights[i]);
  }
  ExactSum sum;
  for (double v : best) {
    if (v == kInf) throw std::domain_error("nn: some (d-1)-simplex has no present cofacet");
    sum.add(v);
  }
  return sum;
}

std::vector<double> nn_alpha_faces(const WeightedComplex& x, double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("f_alpha: alpha must be > 0");
  const auto& idx = x.indexer();
  std::vector<double> best(static_cast<std::size_t>(idx.num_faces()), alpha);
  std::vector<Rank> fr(static_cast<std::size_t>(x.d()) + 1);
  const auto present = x.present();
  const auto weights = x.weights();
  for (std::size_t i = 0; i < present.size(); ++i) {
    idx.face_ranks(idx.top(present[i]), fr.data());
    for (Rank f : fr) best[f] = std::min(best[f], weights[i]);
  }
  return best;
}

ExactSum f_alpha_exact(const WeightedComplex& x, double alpha) {
  ExactSum sum;
  for (double v : nn_alpha_faces(x, alpha)) sum.add(v);
  return sum;
}

double f_alpha(const WeightedComplex& x, double alpha) { return f_alpha_exact(x, alpha).to_double(); }

ExactSum local_statistic_exact(const WeightedComplex& x, const LocalFunctional& lf) {
  if (lf.M < 1) throw std::invalid_argument("local statistic: M must be >= 1");
  const FaceAdjacency adj(x);
  const Rank num_faces = x.indexer().num_faces();
  ExactSum sum;
  std::int64_t isolated = 0;
  for (Rank f = 0; f < num_faces; ++f) {
    if (adj.degree(f) == 0) {
      ++isolated;
      continue;
    }
    add_value(sum, lf.g(relabel(m_ball(adj, f, lf.M))));
  }
  if (isolated > 0) sum.add(Rational(to_rational(lf.g(singleton_local(x.d())))) * isolated);
  return sum;
}

double local_statistic(const WeightedComplex& x, const LocalFunctional& lf) {
  return local_statistic_exact(x, lf).to_double();
}

std::int64_t isolated_count(const WeightedComplex& x) {
  const auto& idx = x.indexer();
  std::vector<char> covered(static_cast<std::size_t>(idx.num_faces()), 0);
  std::vector<Rank> fr(static_cast<std::size_t>(x.d()) + 1);
  for (Rank t : x.present()) {
    idx.face_ranks(idx.top(t), fr.data());
    for (Rank f : fr) covered[f] = 1;
  }
  return static_cast<std::int64_t>(std::count(covered.begin(), covered.end(), 0));
}

std::int64_t isolated_count(const PairedSample& s) {
  const auto& idx = s.indexer();
  std::vector<char> covered(static_cast<std::size_t>(idx.num_faces()), 0);
  for_each_top(idx, [&](Rank r, std::span<const Rank> fr) {
    if (!s.bit(r)) return;
    for (Rank f : fr) covered[f] = 1;
  });
  return static_cast<std::int64_t>(std::count(covered.begin(), covered.end(), 0));
}

std::int64_t cocycle_count_bounded(const WeightedComplex& x, int M) {
  if (M < 1) throw std::invalid_argument("cocycle count: M must be >= 1");
  const auto labels = components(x);
  std::int64_t total = 0;
  for (std::size_t c = 0; c < labels.size(); ++c) {
    const auto nf = labels.faces_of(c).size();
    if (nf > static_cast<std::size_t>(M)) continue;
    if (labels.tops_of(c).empty()) {
      total += 1;
      continue;
    }
    total += static_cast<std::int64_t>(cocycle_dim(labels.view(c, x), x.indexer()));
  }
  return total;
}

std::int64_t betti_bounded(const WeightedComplex& x, int M) {
  return cocycle_count_bounded(x, M) -
         static_cast<std::int64_t>(binomial(static_cast<std::uint64_t>(x.n()) - 1, static_cast<std::uint64_t>(x.d()) - 1));
}

double NearestNeighborStatistic::lipschitz(double w, double w_prime, int d) const {
  return (d + 1) * std::max(w, w_prime);
}

DilutedNearestNeighbor::DilutedNearestNeighbor(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("nn-alpha: alpha must be > 0");
}

std::string DilutedNearestNeighbor::name() const { return "nn-alpha:" + format_double(alpha_); }

ExactSum IsolatedCount::evaluate_exact(const WeightedComplex& x) const {
  ExactSum s;
  s.add(isolated_count(x));
  return s;
}

double IsolatedCount::evaluate_sample(const PairedSample& s) const {
  return static_cast<double>(isolated_count(s));
}

CocycleCount::CocycleCount(int M) : M_(M) {
  if (M < 1) throw std::invalid_argument("cocycle: M must be >= 1");
}

ExactSum CocycleCount::evaluate_exact(const WeightedComplex& x) const {
  ExactSum s;
  s.add(cocycle_count_bounded(x, M_));
  return s;
}

BettiBounded::BettiBounded(int M) : M_(M) {
  if (M < 1) throw std::invalid_argument("betti: M must be >= 1");
}

ExactSum BettiBounded::evaluate_exact(const WeightedComplex& x) const {
  ExactSum s;
  s.add(betti_bounded(x, M_));
  return s;
}

LocalStatistic::LocalStatistic(LocalFunctional lf) : lf_(std::move(lf)) {
  if (!lf_.g) throw std::invalid_argument("local statistic: g is empty");
  if (lf_.M < 1) throw std::invalid_argument("local statistic: M must be >= 1");
}

double LocalStatistic::lipschitz(double, double, int) const { return lf_.H.value_or(kInf); }

std::optional<double> LocalStatistic::lipschitz_constant(int) const { return lf_.H; }

}  // namespace rwc
