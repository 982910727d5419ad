#include "syslat/norms.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rng.hpp"
#include "simplex.hpp"

namespace syslat {

namespace {

constexpr double kPlaneTol = 1e-12;
constexpr double kFeasibilityTol = 1e-9;
constexpr int kCuttingPlaneCap = 400;

// Skew matrix A with <w, x ^ y> = x^T A y for a 2-vector w.
Eigen::MatrixXd skew_from_two_vector(const PVector& w) {
  const int n = w.ambient_dim;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  const auto& subsets = wedge_index_table(n, 2);
  for (size_t r = 0; r < subsets.size(); ++r) {
    a(subsets[r][0], subsets[r][1]) = w.coords(r);
    a(subsets[r][1], subsets[r][0]) = -w.coords(r);
  }
  return a;
}

struct Plane {
  double theta = 0.0;
  Eigen::MatrixXd frame;  // n x 2, <w, col0 ^ col1> = theta
};

// Orthogonal decomposition w = sum theta_k u_k ^ v_k by plane deflation.
std::vector<Plane> two_vector_planes(const PVector& w) {
  Eigen::MatrixXd a = skew_from_two_vector(w);
  const int n = w.ambient_dim;
  std::vector<Plane> planes;
  for (int k = 0; k < n / 2; ++k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a.transpose() * a);
    const double mu = eig.eigenvalues()(n - 1);
    if (mu < kPlaneTol * kPlaneTol) break;
    const double theta = std::sqrt(mu);
    Eigen::VectorXd v = eig.eigenvectors().col(n - 1);
    Eigen::VectorXd u = a * v / theta;
    Plane plane;
    plane.theta = theta;
    plane.frame.resize(n, 2);
    plane.frame.col(0) = u;
    plane.frame.col(1) = v;
    planes.push_back(plane);
    a -= theta * (u * v.transpose() - v * u.transpose());
  }
  return planes;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& v) {
  const int n = static_cast<int>(v.rows());
  const int p = static_cast<int>(v.cols());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
  for (int j = 0; j < p; ++j) {
    if (qr.matrixQR()(j, j) < 0) q.col(j) *= -1.0;
  }
  return q;
}

// Columns extending `given` (orthonormal n x k) to an orthonormal basis.
// Unpivoted QR keeps the given columns in the leading block, so the trailing
// columns of Q span exactly the orthogonal complement.
Eigen::MatrixXd complete_frame(const Eigen::MatrixXd& given) {
  const int n = static_cast<int>(given.rows());
  const int k = static_cast<int>(given.cols());
  Eigen::MatrixXd full(n, n + k);
  full.leftCols(k) = given;
  full.rightCols(n) = Eigen::MatrixXd::Identity(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(full);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(n - k);
}

Eigen::MatrixXd cofactor_matrix(const Eigen::MatrixXd& m) {
  const int p = static_cast<int>(m.rows());
  Eigen::MatrixXd c(p, p);
  if (p == 1) {
    c(0, 0) = 1.0;
    return c;
  }
  Eigen::MatrixXd minor(p - 1, p - 1);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      int mr = 0;
      for (int r = 0; r < p; ++r) {
        if (r == i) continue;
        int mc = 0;
        for (int col = 0; col < p; ++col) {
          if (col == j) continue;
          minor(mr, mc++) = m(r, col);
        }
        ++mr;
      }
      c(i, j) = (((i + j) % 2) ? -1.0 : 1.0) * minor.determinant();
    }
  }
  return c;
}

Eigen::MatrixXd pairing_gradient(const PVector& w, const Eigen::MatrixXd& v) {
  const int n = w.ambient_dim;
  const int p = w.degree;
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, p);
  const auto& subsets = wedge_index_table(n, p);
  Eigen::MatrixXd sub(p, p);
  for (size_t r = 0; r < subsets.size(); ++r) {
    const double ws = w.coords(r);
    if (ws == 0.0) continue;
    for (int i = 0; i < p; ++i) sub.row(i) = v.row(subsets[r][i]);
    const Eigen::MatrixXd cof = cofactor_matrix(sub);
    for (int i = 0; i < p; ++i) grad.row(subsets[r][i]) += ws * cof.row(i);
  }
  return grad;
}

bool frame_lex_less(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) < b(i, j)) return true;
      if (a(i, j) > b(i, j)) return false;
    }
  }
  return false;
}

Eigen::MatrixXd sign_fixed(Eigen::MatrixXd frame, const PVector& w, double* value) {
  const double s = frame_pairing(w, frame);
  if (s < 0) frame.col(frame.cols() - 1) *= -1.0;
  if (value != nullptr) *value = std::abs(s);
  return frame;
}

bool has_closed_form(int n, int p) {
  return p == 1 || p == 2 || p == n - 2 || p == n - 1 || p == n;
}

// Unit simple covectors supporting the comass ball at w; used as cuts.
std::vector<Eigen::MatrixXd> support_frames(const PVector& w,
                                            const OptimizerOptions& opts) {
  const int n = w.ambient_dim;
  const int p = w.degree;
  std::vector<Eigen::MatrixXd> frames;
  if (p == 1) {
    const double norm = w.coords.norm();
    if (norm > kPlaneTol) frames.push_back(w.coords / norm);
  } else if (p == 2) {
    for (const Plane& plane : two_vector_planes(w)) frames.push_back(plane.frame);
  } else if (p == n - 2) {
    for (const Plane& plane : two_vector_planes(hodge_star(w))) {
      frames.push_back(complete_frame(plane.frame));
    }
  } else if (p == n - 1) {
    const PVector star = hodge_star(w);
    const double norm = star.coords.norm();
    if (norm > kPlaneTol) {
      frames.push_back(complete_frame(Eigen::MatrixXd(star.coords / norm)));
    }
  } else if (p == n) {
    frames.push_back(Eigen::MatrixXd::Identity(n, n));
  } else {
    frames.push_back(comass_by_ascent(w, opts).frame);
  }
  return frames;
}

}  // namespace

double frame_pairing(const PVector& w, const Eigen::MatrixXd& frame) {
  const int p = w.degree;
  const auto& subsets = wedge_index_table(w.ambient_dim, p);
  double value = 0.0;
  Eigen::MatrixXd sub(p, p);
  for (size_t r = 0; r < subsets.size(); ++r) {
    if (w.coords(r) == 0.0) continue;
    for (int i = 0; i < p; ++i) sub.row(i) = frame.row(subsets[r][i]);
    value += w.coords(r) * sub.determinant();
  }
  return value;
}

std::vector<double> two_vector_canonical_coefficients(const PVector& w) {
  if (w.degree != 2) {
    throw InputError("two_vector_canonical_coefficients requires degree 2");
  }
  // Eigenvalues of A^T A come in pairs theta_k^2; no eigenvectors needed.
  const Eigen::MatrixXd a = skew_from_two_vector(w);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a.transpose() * a,
                                                     Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  const int n = w.ambient_dim;
  std::vector<double> thetas;
  for (int k = 0; n - 2 - k >= 0; k += 2) {
    const double theta =
        std::sqrt(std::max(0.0, 0.5 * (ev(n - 1 - k) + ev(n - 2 - k))));
    if (theta <= kPlaneTol) break;
    thetas.push_back(theta);
  }
  return thetas;
}

ComassResult comass_by_ascent(const PVector& w, const OptimizerOptions& opts) {
  const int n = w.ambient_dim;
  const int p = w.degree;
  ComassResult best;
  best.value = -1.0;
  bool any_converged = false;
  for (int start = 0; start < opts.starts; ++start) {
    std::mt19937_64 rng(detail::mix_seed(opts.seed, start));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd v(n, p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < p; ++j) v(i, j) = gauss(rng);
    v = orthonormalize(v);
    double f = frame_pairing(w, v);
    if (f < 0) {
      v.col(0) *= -1.0;
      f = -f;
    }
    bool converged = false;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
      const Eigen::MatrixXd grad = pairing_gradient(w, v);
      double step = opts.step;
      Eigen::MatrixXd next = v;
      double fn = f;
      while (step > 1e-15) {
        next = orthonormalize(v + step * grad);
        fn = frame_pairing(w, next);
        if (fn >= f) break;
        step *= 0.5;
      }
      if (!(fn >= f)) {  // no ascent direction left
        converged = true;
        break;
      }
      const double delta = (next - v).norm();
      v = next;
      f = fn;
      if (delta < opts.tol) {
        converged = true;
        break;
      }
    }
    any_converged = any_converged || converged;
    if (f > best.value + 1e-12 ||
        (std::abs(f - best.value) <= 1e-12 &&
         (best.frame.size() == 0 || frame_lex_less(v, best.frame)))) {
      best.value = f;
      best.frame = v;
    }
  }
  best.heuristic = true;
  if (!any_converged) {
    throw OptimizerFailureError(
        "comass ascent: no start converged within the iteration cap", best.value);
  }
  return best;
}

ComassResult comass(const PVector& w, const OptimizerOptions& opts) {
  const int n = w.ambient_dim;
  const int p = w.degree;
  if (p < 1) throw InputError("comass requires degree p >= 1");
  ComassResult result;
  result.heuristic = false;
  if (p == n) {
    const double c = w.coords(0);
    result.value = std::abs(c);
    result.frame = Eigen::MatrixXd::Identity(n, n);
    if (c < 0) result.frame.col(n - 1) *= -1.0;
    return result;
  }
  if (p == 1) {
    result.value = w.coords.norm();
    if (result.value > kPlaneTol) {
      result.frame = w.coords / result.value;
    } else {
      result.frame = Eigen::MatrixXd::Identity(n, 1);
    }
    return result;
  }
  if (p == 2) {
    const auto planes = two_vector_planes(w);
    if (planes.empty()) {
      result.value = 0.0;
      result.frame = Eigen::MatrixXd::Identity(n, 2);
    } else {
      result.value = planes.front().theta;
      result.frame = planes.front().frame;
    }
    return result;
  }
  if (p == n - 1) {
    const PVector star = hodge_star(w);
    result.value = star.coords.norm();
    if (result.value > kPlaneTol) {
      Eigen::MatrixXd axis = star.coords / result.value;
      result.frame = sign_fixed(complete_frame(axis), w, nullptr);
    } else {
      result.frame = Eigen::MatrixXd::Identity(n, n - 1);
    }
    return result;
  }
  if (p == n - 2) {
    const auto planes = two_vector_planes(hodge_star(w));
    if (planes.empty()) {
      result.value = 0.0;
      result.frame = Eigen::MatrixXd::Identity(n, n - 2);
    } else {
      result.value = planes.front().theta;
      result.frame = sign_fixed(complete_frame(planes.front().frame), w, nullptr);
    }
    return result;
  }
  return comass_by_ascent(w, opts);
}

MassResult mass_by_cutting_plane(const PVector& v, const OptimizerOptions& opts) {
  const int n = v.ambient_dim;
  const int p = v.degree;
  const int m = static_cast<int>(binomial(n, p));
  const double euclid = v.coords.norm();
  const double federer = std::sqrt(static_cast<double>(m));
  MassResult result;
  if (euclid < kPlaneTol) {
    return result;
  }

  std::vector<Eigen::VectorXd> cuts;
  cuts.reserve(2 * m + 4 * kCuttingPlaneCap);
  for (int s = 0; s < m; ++s) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e(s) = 1.0;
    cuts.push_back(e);
    cuts.push_back(-e);
  }

  double lower = euclid;
  double lp_value = 0.0;
  bool converged = false;
  bool cut_oracle_exact = has_closed_form(n, p);
  for (int round = 0; round < kCuttingPlaneCap; ++round) {
    Eigen::MatrixXd a(cuts.size(), m);
    for (size_t i = 0; i < cuts.size(); ++i) a.row(i) = cuts[i];
    const auto lp = detail::simplex_maximize(
        a, Eigen::VectorXd::Ones(cuts.size()), v.coords);
    if (!lp.optimal) {
      throw InternalError("mass cutting plane: LP failed on a bounded polytope");
    }
    lp_value = lp.value;
    const PVector w = PVector::from_coords(n, p, lp.x);
    const ComassResult cm = comass(w, opts);
    cut_oracle_exact = cut_oracle_exact && !cm.heuristic;
    if (!cm.heuristic && cm.value > kPlaneTol) {
      lower = std::max(lower, v.coords.dot(lp.x) / cm.value);
    }
    if (cm.value <= 1.0 + kFeasibilityTol) {
      converged = true;
      break;
    }
    for (const Eigen::MatrixXd& frame : support_frames(w, opts)) {
      const Eigen::VectorXd xi = wedge_of_columns(frame).coords;
      lower = std::max(lower, std::abs(v.coords.dot(xi)));
      cuts.push_back(xi);
      cuts.push_back(-xi);
    }
  }

  result.value = lp_value;
  result.lower = lower;
  result.upper = std::min(lp_value, federer * euclid);
  result.heuristic = !(converged && cut_oracle_exact);
  return result;
}

MassResult mass(const PVector& v, const OptimizerOptions& opts) {
  const int n = v.ambient_dim;
  const int p = v.degree;
  if (p < 1) throw InputError("mass requires degree p >= 1");
  MassResult result;
  if (p == 1 || p == n - 1 || p == n) {
    result.value = v.coords.norm();
    result.lower = result.upper = result.value;
    return result;
  }
  if (p == 2 || p == n - 2) {
    const PVector rep = (p == 2) ? v : hodge_star(v);
    double sum = 0.0;
    for (double theta : two_vector_canonical_coefficients(rep)) sum += theta;
    result.value = sum;
    result.lower = result.upper = sum;
    return result;
  }
  return mass_by_cutting_plane(v, opts);
}

NormSpec::NormSpec(Kind kind, int n, int p, double scale, std::string name)
    : kind_(kind), ambient_dim_(n), degree_(p), scale_(scale),
      name_(std::move(name)) {}

NormSpec NormSpec::euclidean() {
  return NormSpec(Kind::Euclidean, 0, 0, 1.0, "euclidean");
}

namespace {
void check_degree(int n, int p, const char* what) {
  if (p < 1 || p > n) {
    std::ostringstream msg;
    msg << what << " norm requires 1 <= p <= n, got p=" << p << " n=" << n;
    throw InputError(msg.str());
  }
}
}  // namespace

NormSpec NormSpec::mass_norm(int n, int p) {
  check_degree(n, p, "mass");
  return NormSpec(Kind::Mass, n, p, 1.0, "mass:" + std::to_string(p));
}

NormSpec NormSpec::comass_norm(int n, int p) {
  check_degree(n, p, "comass");
  return NormSpec(Kind::Comass, n, p, 1.0, "comass:" + std::to_string(p));
}

NormSpec NormSpec::l2_homology(int n, int p, double volume) {
  check_degree(n, p, "l2-homology");
  if (!(volume > 0)) throw InputError("l2 norm requires positive volume");
  return NormSpec(Kind::Euclidean, n, p, 1.0 / std::sqrt(volume),
                  "l2-homology:" + std::to_string(p));
}

NormSpec NormSpec::l2_dual(int n, int p, double volume) {
  check_degree(n, p, "l2-dual");
  if (!(volume > 0)) throw InputError("l2 norm requires positive volume");
  return NormSpec(Kind::Mass, n, p, 1.0 / std::sqrt(volume),
                  "l2-dual:" + std::to_string(p));
}

bool NormSpec::exact() const {
  if (kind_ == Kind::Euclidean) return true;
  return has_closed_form(ambient_dim_, degree_);
}

NormValue NormSpec::evaluate(const Eigen::VectorXd& coords,
                             const OptimizerOptions& opts) const {
  NormValue out;
  if (kind_ == Kind::Euclidean) {
    out.value = scale_ * coords.norm();
    out.lower = out.upper = out.value;
    out.exact = true;
    return out;
  }
  const PVector v = PVector::from_coords(ambient_dim_, degree_, coords);
  if (kind_ == Kind::Mass) {
    const MassResult r = mass(v, opts);
    out.value = scale_ * r.value;
    out.lower = scale_ * r.lower;
    out.upper = scale_ * r.upper;
    out.exact = !r.heuristic;
  } else {
    const ComassResult r = comass(v, opts);
    out.value = scale_ * r.value;
    out.lower = out.value;
    out.upper = r.heuristic ? scale_ * v.coords.norm() : out.value;
    out.exact = !r.heuristic;
  }
  return out;
}

double NormSpec::euclidean_radius_factor() const {
  switch (kind_) {
    case Kind::Euclidean:
    case Kind::Mass:
      // Euclid <= mass pointwise, so the Euclidean ball of the same radius covers.
      return 1.0 / scale_;
    case Kind::Comass:
      return std::sqrt(static_cast<double>(binomial(ambient_dim_, degree_))) /
             scale_;
  }
  throw InternalError("unknown norm kind");
}

NormSpec NormSpec::dual_norm() const {
  const double s = 1.0 / scale_;
  const std::string dual_name =
      (name_ == "euclidean") ? "euclidean" : name_ + "*";
  switch (kind_) {
    case Kind::Euclidean:
      return NormSpec(Kind::Euclidean, ambient_dim_, degree_, s, dual_name);
    case Kind::Mass:
      if (name_ == "mass:" + std::to_string(degree_)) {
        return comass_norm(ambient_dim_, degree_);
      }
      return NormSpec(Kind::Comass, ambient_dim_, degree_, s, dual_name);
    case Kind::Comass:
      if (name_ == "comass:" + std::to_string(degree_)) {
        return mass_norm(ambient_dim_, degree_);
      }
      return NormSpec(Kind::Mass, ambient_dim_, degree_, s, dual_name);
  }
  throw InternalError("unknown norm kind");
}

NormSpec NormSpec::parse(const std::string& text, int ambient_dim) {
  if (text == "euclidean") return euclidean();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    int degree = 0;
    try {
      degree = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw InputError("norm degree is not an integer in '" + text + "'");
    }
    if (head == "mass") return mass_norm(ambient_dim, degree);
    if (head == "comass") return comass_norm(ambient_dim, degree);
  }
  throw InputError("unrecognized norm '" + text +
                   "'; expected euclidean | mass:P | comass:P");
}

}  // namespace syslat
