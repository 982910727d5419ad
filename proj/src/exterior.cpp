#include "syslat/exterior.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace syslat {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

const std::vector<std::vector<int>>& wedge_index_table(int n, int p) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({n, p});
  if (it != cache.end()) return it->second;

  std::vector<std::vector<int>> subsets;
  std::vector<int> current(p);
  for (int i = 0; i < p; ++i) current[i] = i;
  if (p == 0) {
    subsets.push_back({});
  } else if (p <= n) {
    while (true) {
      subsets.push_back(current);
      int i = p - 1;
      while (i >= 0 && current[i] == n - p + i) --i;
      if (i < 0) break;
      ++current[i];
      for (int j = i + 1; j < p; ++j) current[j] = current[j - 1] + 1;
    }
  }
  return cache.emplace(std::make_pair(n, p), std::move(subsets)).first->second;
}

int wedge_index_rank(int n, const std::vector<int>& subset) {
  // Lexicographic rank: count subsets preceding this one.
  const int p = static_cast<int>(subset.size());
  std::int64_t rank = 0;
  int prev = -1;
  for (int i = 0; i < p; ++i) {
    for (int v = prev + 1; v < subset[i]; ++v) {
      rank += binomial(n - 1 - v, p - 1 - i);
    }
    prev = subset[i];
  }
  return static_cast<int>(rank);
}

PVector PVector::zero(int n, int p) {
  if (p < 0 || p > n) throw InputError("PVector degree must satisfy 0 <= p <= n");
  PVector v;
  v.ambient_dim = n;
  v.degree = p;
  v.coords = Eigen::VectorXd::Zero(binomial(n, p));
  return v;
}

PVector PVector::basis_element(int n, const std::vector<int>& subset) {
  PVector v = zero(n, static_cast<int>(subset.size()));
  v.coords(wedge_index_rank(n, subset)) = 1.0;
  return v;
}

PVector PVector::from_coords(int n, int p, Eigen::VectorXd coords) {
  if (coords.size() != binomial(n, p)) {
    std::ostringstream msg;
    msg << "PVector coords length " << coords.size() << " != C(" << n << ","
        << p << ") = " << binomial(n, p);
    throw InputError(msg.str());
  }
  PVector v;
  v.ambient_dim = n;
  v.degree = p;
  v.coords = std::move(coords);
  return v;
}

namespace {

// Sign of the shuffle merging sorted disjoint S and T: (-1)^{#inversions}.
int merge_sign(const std::vector<int>& s, const std::vector<int>& t) {
  int inversions = 0;
  for (int tv : t) {
    for (int sv : s) {
      if (sv > tv) ++inversions;
    }
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

PVector wedge(const PVector& a, const PVector& b) {
  if (a.ambient_dim != b.ambient_dim) {
    throw InputError("wedge: ambient dimensions differ");
  }
  const int n = a.ambient_dim;
  const int p = a.degree, q = b.degree;
  if (p + q > n) throw InputError("wedge: degrees exceed ambient dimension");
  PVector result = PVector::zero(n, p + q);
  const auto& sa = wedge_index_table(n, p);
  const auto& sb = wedge_index_table(n, q);
  std::vector<int> merged(p + q);
  for (size_t i = 0; i < sa.size(); ++i) {
    if (a.coords(i) == 0.0) continue;
    for (size_t j = 0; j < sb.size(); ++j) {
      if (b.coords(j) == 0.0) continue;
      const auto& s = sa[i];
      const auto& t = sb[j];
      bool disjoint = true;
      for (int tv : t) {
        if (std::binary_search(s.begin(), s.end(), tv)) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      std::merge(s.begin(), s.end(), t.begin(), t.end(), merged.begin());
      result.coords(wedge_index_rank(n, merged)) +=
          merge_sign(s, t) * a.coords(i) * b.coords(j);
    }
  }
  return result;
}

PVector hodge_star(const PVector& a) {
  const int n = a.ambient_dim;
  const int p = a.degree;
  PVector result = PVector::zero(n, n - p);
  const auto& subsets = wedge_index_table(n, p);
  std::vector<int> complement;
  complement.reserve(n - p);
  for (size_t i = 0; i < subsets.size(); ++i) {
    if (a.coords(i) == 0.0) continue;
    const auto& s = subsets[i];
    complement.clear();
    size_t si = 0;
    for (int v = 0; v < n; ++v) {
      if (si < s.size() && s[si] == v) {
        ++si;
      } else {
        complement.push_back(v);
      }
    }
    // e_S ^ e_{S^c} = sign * e_{0...n-1} with sign = (-1)^{sum(S) - p(p-1)/2}.
    long long exponent = -static_cast<long long>(p) * (p - 1) / 2;
    for (int v : s) exponent += v;
    const double sign = (exponent % 2 == 0) ? 1.0 : -1.0;
    result.coords(wedge_index_rank(n, complement)) += sign * a.coords(i);
  }
  return result;
}

double inner(const PVector& a, const PVector& b) {
  if (a.ambient_dim != b.ambient_dim || a.degree != b.degree) {
    throw InputError("inner: p-vectors live in different spaces");
  }
  return a.coords.dot(b.coords);
}

PVector wedge_of_columns(const Eigen::MatrixXd& frame) {
  const int n = static_cast<int>(frame.rows());
  const int p = static_cast<int>(frame.cols());
  PVector result = PVector::zero(n, p);
  const auto& subsets = wedge_index_table(n, p);
  Eigen::MatrixXd minor(p, p);
  for (size_t r = 0; r < subsets.size(); ++r) {
    for (int i = 0; i < p; ++i) minor.row(i) = frame.row(subsets[r][i]);
    result.coords(r) = minor.determinant();
  }
  return result;
}

Lattice exterior_power_lattice(const Lattice& lattice, int p) {
  const int n = lattice.dim();
  if (p < 1 || p > n) {
    throw InputError("exterior_power_lattice requires 1 <= p <= dim");
  }
  const auto& subsets = wedge_index_table(n, p);
  const int m = static_cast<int>(subsets.size());
  Eigen::MatrixXd basis(m, m);
  Eigen::MatrixXd rows(n, p);
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i < p; ++i) rows.col(i) = lattice.basis().row(subsets[r][i]);
    basis.row(r) = wedge_of_columns(rows).coords;
  }
  try {
    return Lattice(std::move(basis));
  } catch (const DegenerateLatticeError&) {
    throw DegenerateLatticeError(
        "exterior power basis is rank-deficient; input lattice too degenerate");
  }
}

}  // namespace syslat
