#include "ftvd/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "ftvd/error.hpp"

namespace ftvd::oracle {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void require_dense_size(std::size_t n) {
  if (n > kMaxDenseSide) {
    throw Error(Errc::kTooLarge, "dense oracle limited to n <= " + std::to_string(kMaxDenseSide));
  }
  if (n < 2) throw Error(Errc::kInvalidArgument, "image side must be at least 2");
}

Eigen::Index wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<Eigen::Index>(((i % m) + m) % m);
}

MatrixXd assemble_d(std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n * n);
  MatrixXd d = MatrixXd::Zero(2 * nn, nn);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto i = static_cast<Eigen::Index>(r * n + c);
      const Eigen::Index right = static_cast<Eigen::Index>(r * n) + wrap(static_cast<std::ptrdiff_t>(c) + 1, n);
      const Eigen::Index down = wrap(static_cast<std::ptrdiff_t>(r) + 1, n) * static_cast<Eigen::Index>(n) +
                                static_cast<Eigen::Index>(c);
      d(i, i) -= 1.0;
      d(i, right) += 1.0;
      d(nn + i, i) -= 1.0;
      d(nn + i, down) += 1.0;
    }
  }
  return d;
}

MatrixXd assemble_k(std::size_t n, const Kernel& k) {
  if (k.size() > n) throw Error(Errc::kKernelTooLarge, "kernel exceeds image");
  const auto nn = static_cast<Eigen::Index>(n * n);
  const auto h = static_cast<std::ptrdiff_t>(k.anchor());
  MatrixXd m = MatrixXd::Zero(nn, nn);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto row = static_cast<Eigen::Index>(r * n + c);
      for (std::size_t a = 0; a < k.size(); ++a) {
        for (std::size_t b = 0; b < k.size(); ++b) {
          const Eigen::Index rr = wrap(static_cast<std::ptrdiff_t>(r) - static_cast<std::ptrdiff_t>(a) + h, n);
          const Eigen::Index cc = wrap(static_cast<std::ptrdiff_t>(c) - static_cast<std::ptrdiff_t>(b) + h, n);
          m(row, rr * static_cast<Eigen::Index>(n) + cc) += k(a, b);
        }
      }
    }
  }
  return m;
}

// Dense model of the smoothed TV/L2 objective.
class SmoothedProblem {
 public:
  SmoothedProblem(const Image& f, const Kernel& k, double mu, TvVariant variant)
      : n_(f.size()), d_(assemble_d(n_)), k_(assemble_k(n_, k)), f_(vectorize(f)), mu_(mu), variant_(variant) {
    ktk_ = k_.transpose() * k_;
    ktf_ = k_.transpose() * f_;
  }

  double value(const VectorXd& u, double eps) const {
    const VectorXd g = d_ * u;
    const VectorXd r = k_ * u - f_;
    const Eigen::Index nn = u.size();
    double tv = 0.0;
    for (Eigen::Index i = 0; i < nn; ++i) {
      const double gx = g(i);
      const double gy = g(nn + i);
      if (variant_ == TvVariant::kIsotropic) {
        tv += std::sqrt(gx * gx + gy * gy + eps * eps);
      } else {
        tv += std::sqrt(gx * gx + eps * eps) + std::sqrt(gy * gy + eps * eps);
      }
    }
    return tv + 0.5 * mu_ * r.squaredNorm();
  }

  VectorXd gradient(const VectorXd& u, double eps) const {
    const VectorXd g = d_ * u;
    const Eigen::Index nn = u.size();
    VectorXd p(2 * nn);
    for (Eigen::Index i = 0; i < nn; ++i) {
      const double gx = g(i);
      const double gy = g(nn + i);
      if (variant_ == TvVariant::kIsotropic) {
        const double s = std::sqrt(gx * gx + gy * gy + eps * eps);
        p(i) = gx / s;
        p(nn + i) = gy / s;
      } else {
        p(i) = gx / std::sqrt(gx * gx + eps * eps);
        p(nn + i) = gy / std::sqrt(gy * gy + eps * eps);
      }
    }
    return d_.transpose() * p + mu_ * (ktk_ * u - ktf_);
  }

  // D^T H D assembled pixel by pixel from the 2x2 curvature blocks, plus mu K^T K.
  MatrixXd hessian(const VectorXd& u, double eps) const {
    MatrixXd h = mu_ * ktk_;
    const VectorXd g = d_ * u;
    const Eigen::Index nn = u.size();
    const auto side = static_cast<std::ptrdiff_t>(n_);
    for (Eigen::Index i = 0; i < nn; ++i) {
      const auto r = static_cast<std::ptrdiff_t>(i) / side;
      const auto c = static_cast<std::ptrdiff_t>(i) % side;
      const Eigen::Index right = r * side + wrap(c + 1, n_);
      const Eigen::Index down = wrap(r + 1, n_) * side + c;
      const double gx = g(i);
      const double gy = g(nn + i);
      double hxx = 0.0;
      double hxy = 0.0;
      double hyy = 0.0;
      if (variant_ == TvVariant::kIsotropic) {
        const double s = std::sqrt(gx * gx + gy * gy + eps * eps);
        const double s3 = s * s * s;
        hxx = 1.0 / s - gx * gx / s3;
        hyy = 1.0 / s - gy * gy / s3;
        hxy = -gx * gy / s3;
      } else {
        const double sx = std::sqrt(gx * gx + eps * eps);
        const double sy = std::sqrt(gy * gy + eps * eps);
        hxx = eps * eps / (sx * sx * sx);
        hyy = eps * eps / (sy * sy * sy);
      }
      // Row of D for dx at pixel i is e_right - e_i, for dy it is e_down - e_i.
      const std::array<Eigen::Index, 2> ex{i, right};
      const std::array<Eigen::Index, 2> ey{i, down};
      const std::array<double, 2> sign{-1.0, 1.0};
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const double s = sign[a] * sign[b];
          h(ex[a], ex[b]) += s * hxx;
          h(ey[a], ey[b]) += s * hyy;
          h(ex[a], ey[b]) += s * hxy;
          h(ey[a], ex[b]) += s * hxy;
        }
      }
    }
    return h;
  }

 private:
  std::size_t n_;
  MatrixXd d_;
  MatrixXd k_;
  MatrixXd ktk_;
  VectorXd f_;
  VectorXd ktf_;
  double mu_;
  TvVariant variant_;
};

}  // namespace

Eigen::MatrixXd dense_operator(OperatorKind kind, std::size_t n, const Kernel* k) {
  require_dense_size(n);
  switch (kind) {
    case OperatorKind::kD: return assemble_d(n);
    case OperatorKind::kDt: return assemble_d(n).transpose();
    case OperatorKind::kK:
      if (k == nullptr) throw Error(Errc::kInvalidArgument, "K operator needs a kernel");
      return assemble_k(n, *k);
  }
  throw Error(Errc::kInvalidArgument, "unknown operator kind");
}

Eigen::VectorXd vectorize(const Image& u) {
  const auto v = u.values();
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::VectorXd vectorize(const GradientField& g) {
  const auto nn = static_cast<Eigen::Index>(g.dx().pixels());
  VectorXd out(2 * nn);
  out.head(nn) = vectorize(g.dx());
  out.tail(nn) = vectorize(g.dy());
  return out;
}

Image to_image(const Eigen::VectorXd& v, std::size_t n) {
  return Image(n, std::vector<double>(v.data(), v.data() + v.size()));
}

GradientField to_field(const Eigen::VectorXd& v, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n * n);
  return GradientField(to_image(v.head(nn), n), to_image(v.tail(nn), n));
}

Image dense_solve_u(const Image& f, const GradientField& w, const GradientField& lambda, double mu, double beta,
                    const Kernel& k) {
  const std::size_t n = f.size();
  require_dense_size(n);
  const MatrixXd d = assemble_d(n);
  const MatrixXd km = assemble_k(n, k);
  const MatrixXd a = mu * km.transpose() * km + beta * d.transpose() * d;
  const VectorXd rhs = mu * km.transpose() * vectorize(f) + d.transpose() * (beta * vectorize(w) - vectorize(lambda));
  return to_image(a.partialPivLu().solve(rhs), n);
}

double smoothed_tv_objective(const Image& u, const Image& f, const Kernel& k, double mu, double epsilon,
                             TvVariant variant) {
  require_dense_size(f.size());
  return SmoothedProblem(f, k, mu, variant).value(vectorize(u), epsilon);
}

Image reference_tv_solve(const Image& f, const Kernel& k, double mu, TvVariant variant,
                         const ReferenceOptions& options) {
  const std::size_t n = f.size();
  require_dense_size(n);
  if (!(options.epsilon > 0.0)) throw Error(Errc::kInvalidArgument, "smoothing epsilon must be positive");
  const SmoothedProblem problem(f, k, mu, variant);

  std::vector<double> levels;
  for (double eps = 1e-1; eps > options.epsilon; eps *= 0.1) levels.push_back(eps);
  levels.push_back(options.epsilon);

  const double final_tol = options.gradient_tol_per_side * static_cast<double>(n);
  VectorXd u = vectorize(f);
  int iterations = 0;
  for (std::size_t level = 0; level < levels.size(); ++level) {
    const double eps = levels[level];
    const bool last = level + 1 == levels.size();
    const double tol = last ? final_tol : std::max(final_tol, 1e-6 * static_cast<double>(n));
    double value = problem.value(u, eps);
    VectorXd grad = problem.gradient(u, eps);
    while (grad.norm() >= tol) {
      if (++iterations > options.max_iterations) {
        throw Error(Errc::kNoConvergence, "reference TV solve hit its iteration cap");
      }
      MatrixXd hess = problem.hessian(u, eps);
      Eigen::LLT<MatrixXd> llt(hess);
      VectorXd step = llt.info() == Eigen::Success ? VectorXd(-llt.solve(grad)) : VectorXd(-grad);
      double slope = grad.dot(step);
      if (!(slope < 0.0)) {
        step = -grad;
        slope = -grad.squaredNorm();
      }

      // Armijo backtracking; near the optimum the decrease drops below the
      // resolution of the objective, so also accept a step that reduces the
      // gradient norm.
      double t = 1.0;
      bool accepted = false;
      for (int trial = 0; trial < 60; ++trial, t *= 0.5) {
        const VectorXd candidate = u + t * step;
        const double cand_value = problem.value(candidate, eps);
        if (cand_value <= value + 1e-4 * t * slope) {
          u = candidate;
          value = cand_value;
          accepted = true;
          break;
        }
        const VectorXd cand_grad = problem.gradient(candidate, eps);
        if (cand_value <= value + 1e-12 * std::abs(value) && cand_grad.norm() < grad.norm()) {
          u = candidate;
          value = cand_value;
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        throw Error(Errc::kNoConvergence, "reference TV solve stalled in line search");
      }
      grad = problem.gradient(u, eps);
    }
  }
  return to_image(u, n);
}

}  // namespace ftvd::oracle
