#include "rwc/cohomology.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rwc {

CoboundaryMatrix::CoboundaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

void CoboundaryMatrix::set(std::size_t r, std::size_t c, int v) {
  if (v < -1 || v > 1) throw std::domain_error("CoboundaryMatrix: entries must lie in {-1, 0, 1}");
  entries_[r * cols_ + c] = static_cast<std::int8_t>(v);
}

CoboundaryMatrix CoboundaryMatrix::from_view(const SubComplexView& view) {
  return from_view(view, SimplexIndexer(view.n, view.d));
}

CoboundaryMatrix CoboundaryMatrix::from_view(const SubComplexView& view, const SimplexIndexer& idx) {
  if (!view.faces) throw std::invalid_argument("coboundary: view must list its (d-1)-simplices");
  if (idx.n() != view.n || idx.d() != view.d) throw std::invalid_argument("coboundary: indexer does not match view");
  const auto& faces = *view.faces;
  CoboundaryMatrix m(view.top.size(), faces.size());
  std::vector<Rank> fr(static_cast<std::size_t>(view.d) + 1);
  for (std::size_t r = 0; r < view.top.size(); ++r) {
    idx.face_ranks(idx.top(view.top[r]), fr.data());
    for (std::size_t i = 0; i < fr.size(); ++i) {
      auto it = std::lower_bound(faces.begin(), faces.end(), fr[i]);
      if (it == faces.end() || *it != fr[i]) throw std::invalid_argument("coboundary: view is missing a face");
      m.set(r, static_cast<std::size_t>(it - faces.begin()), i % 2 == 0 ? 1 : -1);
    }
  }
  return m;
}

CoboundaryMatrix CoboundaryMatrix::from_local(const LocalComplex& local) {
  CoboundaryMatrix m(local.top.size(), local.faces.size());
  for (std::size_t r = 0; r < local.top.size(); ++r) {
    for (std::size_t i = 0; i < local.top[r].size(); ++i) {
      const Simplex f = local.top[r].without(i);
      auto it = std::find(local.faces.begin(), local.faces.end(), f);
      if (it == local.faces.end()) throw std::invalid_argument("coboundary: local complex is missing a face");
      m.set(r, static_cast<std::size_t>(it - local.faces.begin()), i % 2 == 0 ? 1 : -1);
    }
  }
  return m;
}

CoboundaryMatrix CoboundaryMatrix::from_complex(const WeightedComplex& x) {
  const auto& idx = x.indexer();
  CoboundaryMatrix m(x.size(), static_cast<std::size_t>(idx.num_faces()));
  std::vector<Rank> fr(static_cast<std::size_t>(x.d()) + 1);
  const auto present = x.present();
  for (std::size_t r = 0; r < present.size(); ++r) {
    idx.face_ranks(idx.top(present[r]), fr.data());
    for (std::size_t i = 0; i < fr.size(); ++i) m.set(r, static_cast<std::size_t>(fr[i]), i % 2 == 0 ? 1 : -1);
  }
  return m;
}

void write_matrix(std::ostream& os, const CoboundaryMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m.at(r, c);
    os << '\n';
  }
}

CoboundaryMatrix read_matrix(std::istream& is) {
  long long rows = -1;
  long long cols = -1;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) throw std::runtime_error("matrix file: bad header");
  CoboundaryMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (long long r = 0; r < rows; ++r) {
    for (long long c = 0; c < cols; ++c) {
      int v = 0;
      if (!(is >> v)) throw std::runtime_error("matrix file: truncated at row " + std::to_string(r));
      m.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), v);
    }
  }
  return m;
}

namespace {

constexpr std::uint64_t kPrime = (1ull << 31) - 1;

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1;
  }
  return r;
}

}  // namespace

std::size_t rank_pm1(const CoboundaryMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const int v = m.at(r, c);
      a[r * cols + c] = v >= 0 ? static_cast<std::uint64_t>(v) : kPrime - 1;
    }
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
    }
    const std::uint64_t inv = mod_pow(a[rank * cols + c], kPrime - 2);
    for (std::size_t j = c; j < cols; ++j) a[rank * cols + j] = a[rank * cols + j] * inv % kPrime;
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t f = a[r * cols + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        a[r * cols + j] = (a[r * cols + j] + (kPrime - f) * a[rank * cols + j]) % kPrime;
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_fraction_free(const CoboundaryMatrix& m) {
  using boost::multiprecision::cpp_int;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<cpp_int> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = m.at(r, c);
  }
  cpp_int prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
    }
    const cpp_int pivot = a[rank * cols + c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const cpp_int lead = a[r * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[r * cols + j] = (pivot * a[r * cols + j] - lead * a[rank * cols + j]) / prev;
      }
      a[r * cols + c] = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

std::size_t cocycle_dim(const SubComplexView& view) {
  if (!view.faces) throw std::invalid_argument("cocycle_dim: view must list its (d-1)-simplices");
  return view.faces->size() - rank_pm1(CoboundaryMatrix::from_view(view));
}

std::size_t cocycle_dim(const SubComplexView& view, const SimplexIndexer& idx) {
  if (!view.faces) throw std::invalid_argument("cocycle_dim: view must list its (d-1)-simplices");
  return view.faces->size() - rank_pm1(CoboundaryMatrix::from_view(view, idx));
}

std::size_t cocycle_dim(const LocalComplex& local) {
  return local.faces.size() - rank_pm1(CoboundaryMatrix::from_local(local));
}

std::size_t cocycle_dim(const WeightedComplex& x) {
  return static_cast<std::size_t>(x.indexer().num_faces()) - rank_pm1(CoboundaryMatrix::from_complex(x));
}

}  // namespace rwc
