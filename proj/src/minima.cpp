#include "syslat/minima.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace syslat {

namespace {

bool coeff_lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

void sign_normalize(Eigen::VectorXi& coeffs) {
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    if (coeffs(i) > 0) return;
    if (coeffs(i) < 0) {
      coeffs = -coeffs;
      return;
    }
  }
}

// Depth-first Fincke-Pohst over the reduced basis; emits one coefficient
// vector per +-pair (outermost nonzero coordinate kept positive).
class BallEnumerator {
 public:
  BallEnumerator(const Eigen::MatrixXd& r, double radius, std::int64_t budget)
      : r_(r), dim_(static_cast<int>(r.rows())), radius2_(radius * radius),
        budget_(budget), x_(Eigen::VectorXi::Zero(dim_)) {}

  void run(std::vector<Eigen::VectorXi>& out) {
    descend(dim_ - 1, 0.0, true, out);
  }

  std::int64_t nodes() const { return nodes_; }

 private:
  void descend(int level, double used, bool all_zero_above,
               std::vector<Eigen::VectorXi>& out) {
    double center = 0.0;
    for (int j = level + 1; j < dim_; ++j) center -= r_(level, j) * x_(j);
    center /= r_(level, level);
    const double room = radius2_ - used;
    if (room < 0) return;
    const double halfwidth = std::sqrt(room) / r_(level, level);
    long long lo = static_cast<long long>(std::ceil(center - halfwidth - 1e-9));
    const long long hi =
        static_cast<long long>(std::floor(center + halfwidth + 1e-9));
    if (all_zero_above) lo = std::max(lo, 0LL);  // one representative per pair
    for (long long value = lo; value <= hi; ++value) {
      if (++nodes_ > budget_) {
        throw BudgetExceededError("enumeration exceeded node budget", nodes_);
      }
      x_(level) = static_cast<int>(value);
      const double leg = r_(level, level) * (value - center);
      const double used_next = used + leg * leg;
      if (used_next > radius2_ * (1 + 1e-12) + 1e-12) continue;
      const bool zero_chain = all_zero_above && value == 0;
      if (level == 0) {
        if (!zero_chain) out.push_back(x_);
      } else {
        descend(level - 1, used_next, zero_chain, out);
      }
    }
    x_(level) = 0;
  }

  const Eigen::MatrixXd& r_;
  int dim_;
  double radius2_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  Eigen::VectorXi x_;
};

}  // namespace

std::vector<LatticePoint> enumerate_points(const Lattice& lattice,
                                           const NormSpec& norm, double radius,
                                           const EnumerationOptions& opts) {
  if (!(radius > 0)) throw InputError("enumeration radius must be positive");
  const int dim = lattice.dim();
  const double euclid_radius = radius * norm.euclidean_radius_factor();

  const LllResult reduced = lll_reduce_with_transform(lattice);
  const Eigen::MatrixXd gram = reduced.lattice.gram();
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw DegenerateLatticeError("Gram matrix is not positive definite");
  }
  const Eigen::MatrixXd r = llt.matrixU();

  std::vector<Eigen::VectorXi> raw;
  BallEnumerator enumerator(r, euclid_radius, opts.node_budget);
  enumerator.run(raw);

  std::vector<LatticePoint> points;
  points.reserve(raw.size());
  for (const Eigen::VectorXi& x : raw) {
    LatticePoint pt;
    pt.coeffs = reduced.transform.transpose() * x;  // back to input-basis coeffs
    sign_normalize(pt.coeffs);
    pt.coords = lattice.vector(pt.coeffs);
    pt.norm = norm.evaluate(pt.coords, opts.optimizer);
    if (pt.norm.value <= radius * (1 + 1e-12)) points.push_back(std::move(pt));
  }
  std::sort(points.begin(), points.end(),
            [](const LatticePoint& a, const LatticePoint& b) {
              if (a.norm.value != b.norm.value) return a.norm.value < b.norm.value;
              return coeff_lex_less(a.coeffs, b.coeffs);
            });
  return points;
}

MinimaProfile successive_minima(const Lattice& lattice, const NormSpec& norm,
                                int count, const EnumerationOptions& opts) {
  const int dim = lattice.dim();
  if (count < 1 || count > dim) {
    throw InputError("successive_minima requires 1 <= count <= dim");
  }
  const Lattice reduced = lll_reduce(lattice);
  double radius = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd row = reduced.basis().row(i);
    radius = std::min(radius, norm.evaluate(row, opts.optimizer).value);
  }

  MinimaProfile profile;
  profile.norm = norm;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto points = enumerate_points(lattice, norm, radius, opts);
    // Greedy: next minimum is the shortest point independent of the selection.
    Eigen::MatrixXd ortho(dim, dim);
    int selected = 0;
    profile.values.clear();
    profile.vectors.clear();
    profile.bounds.clear();
    for (const LatticePoint& pt : points) {
      Eigen::VectorXd residual = pt.coords;
      for (int j = 0; j < selected; ++j) {
        residual -= residual.dot(ortho.row(j)) * ortho.row(j).transpose();
      }
      if (residual.norm() <= kRankTolerance * pt.coords.norm()) continue;
      ortho.row(selected) = residual / residual.norm();
      ++selected;
      profile.values.push_back(pt.norm.value);
      profile.bounds.push_back({pt.norm.lower, pt.norm.upper});
      profile.vectors.push_back(pt);
      if (selected == count) break;
    }
    if (selected == count) {
      profile.heuristic = !norm.exact();
      return profile;
    }
    radius *= 2;
  }
  throw InternalError("successive_minima: radius doubling did not terminate");
}

namespace {

// Column-style Hermite elimination: X * W = T lower triangular with W
// unimodular; rows of the returned V = W^{-1} satisfy X = T * V, so
// v_1..v_i generate the lattice slice spanned by the first i minima.
struct FlagBasis {
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> t;
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> v;
};

FlagBasis flag_basis(Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> t) {
  const int b = static_cast<int>(t.rows());
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> v =
      Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Identity(b, b);
  for (int r = 0; r < b; ++r) {
    while (true) {
      int pivot = -1;
      for (int c = r; c < b; ++c) {
        if (t(r, c) != 0 && (pivot < 0 || std::abs(t(r, c)) < std::abs(t(r, pivot))))
          pivot = c;
      }
      if (pivot < 0) {
        throw InternalError("minima vectors are not linearly independent");
      }
      if (pivot != r) {
        t.col(r).swap(t.col(pivot));
        v.row(r).swap(v.row(pivot));
      }
      bool clean = true;
      for (int c = r + 1; c < b; ++c) {
        const long long q = t(r, c) / t(r, r);
        if (q != 0) {
          t.col(c) -= q * t.col(r);
          v.row(r) += q * v.row(c);
        }
        if (t(r, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (t(r, r) < 0) {
      t.col(r) *= -1;
      v.row(r) *= -1;
    }
  }
  return {std::move(t), std::move(v)};
}

long long integer_determinant(
    const Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>& m) {
  // Bareiss fraction-free elimination.
  const int n = static_cast<int>(m.rows());
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> a = m;
  long long sign = 1;
  long long prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i) {
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      }
      if (swap < 0) return 0;
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace

MinimaBasis minima_basis(const MinimaProfile& profile, const Lattice& lattice) {
  const int b = lattice.dim();
  if (static_cast<int>(profile.vectors.size()) != b) {
    throw InputError("minima_basis requires a full profile (count == dim)");
  }
  using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
  IntMatrix x(b, b);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) x(i, j) = profile.vectors[i].coeffs(j);

  FlagBasis flag = flag_basis(x);
  IntMatrix v = flag.v;

  const Eigen::MatrixXd x_real = x.cast<double>();
  const Eigen::PartialPivLU<Eigen::MatrixXd> x_lu(x_real.transpose());
  for (int i = 0; i < b; ++i) {
    // Leading coefficient of u_i in the current flag basis.
    const Eigen::MatrixXd v_real = v.cast<double>();
    const Eigen::VectorXd a_real =
        v_real.transpose().partialPivLu().solve(x_real.row(i).transpose());
    const long long a_i = std::llround(a_real(i));
    if (std::abs(a_real(i) - a_i) > 1e-6) {
      throw InternalError("minima_basis: non-integer change of basis");
    }
    if (std::abs(a_i) == 1) {
      // u_i itself extends the flag basis; it attains lambda_i.
      for (int j = 0; j < b; ++j) v(i, j) = x(i, j);
      continue;
    }
    // Reduce v_i modulo the earlier minima vectors: coefficients of v_i in
    // the u-basis shrink to |theta_j| <= 1/2 for j < i.
    Eigen::VectorXd theta = x_lu.solve(v.row(i).cast<double>().transpose());
    for (int j = i - 1; j >= 0; --j) {
      const long long m = std::llround(theta(j));
      if (m != 0) {
        v.row(i) -= m * x.row(j);
        theta(j) -= static_cast<double>(m);
      }
    }
  }

  const long long det = integer_determinant(v);
  if (std::abs(det) != 1) {
    throw InternalError("minima_basis: extracted coefficient matrix is not unimodular");
  }
  for (int i = 0; i < b; ++i) {
    Eigen::VectorXi coeffs(b);
    for (int j = 0; j < b; ++j) coeffs(j) = static_cast<int>(v(i, j));
    const double norm_value =
        profile.norm.evaluate(lattice.vector(coeffs)).value;
    const double bound = std::max(1.0, (i + 1) / 2.0) * profile.values[i];
    if (norm_value > bound * (1 + 1e-9) + 1e-12) {
      throw InternalError("minima_basis: Cassels bound violated");
    }
  }

  Eigen::MatrixXi coeffs(b, b);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) coeffs(i, j) = static_cast<int>(v(i, j));
  Eigen::MatrixXd basis = v.cast<double>() * lattice.basis();
  return MinimaBasis{Lattice(std::move(basis)), std::move(coeffs)};
}

std::vector<TransferenceProduct> transference_products(
    const Lattice& lattice, const NormSpec& norm,
    const EnumerationOptions& opts) {
  const int b = lattice.dim();
  const MinimaProfile primal = successive_minima(lattice, norm, b, opts);
  const MinimaProfile polar =
      successive_minima(dual(lattice), norm.dual_norm(), b, opts);
  std::vector<TransferenceProduct> products;
  products.reserve(b);
  for (int i = 0; i < b; ++i) {
    TransferenceProduct tp;
    tp.index = i + 1;
    tp.product = primal.values[i] * polar.values[b - 1 - i];
    tp.primal = primal.vectors[i];
    tp.dual_vector = polar.vectors[b - 1 - i];
    tp.bounds = {primal.bounds[i][0] * polar.bounds[b - 1 - i][0],
                 primal.bounds[i][1] * polar.bounds[b - 1 - i][1]};
    tp.heuristic = primal.heuristic || polar.heuristic;
    products.push_back(std::move(tp));
  }
  return products;
}

}  // namespace syslat
