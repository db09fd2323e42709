#include "ftvd/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ftvd/error.hpp"

namespace ftvd {

namespace {

void require_same_shape(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(Errc::kShapeMismatch,
                "image sizes differ (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::kKernelTooLarge: return "KernelTooLarge";
    case Errc::kBadSpec: return "BadSpec";
    case Errc::kSingularSystem: return "SingularSystem";
    case Errc::kNonpositiveThreshold: return "NonpositiveThreshold";
    case Errc::kDegenerateReference: return "DegenerateReference";
    case Errc::kMissingScores: return "MissingScores";
    case Errc::kShapeMismatch: return "ShapeMismatch";
    case Errc::kTooLarge: return "TooLarge";
    case Errc::kNoConvergence: return "NoConvergence";
    case Errc::kIo: return "IOError";
    case Errc::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Image::Image(std::size_t n, double fill) : n_(n), data_(n * n, fill) {
  if (n < 2) throw Error(Errc::kInvalidArgument, "image side must be at least 2");
}

Image::Image(std::size_t n, std::vector<double> data) : n_(n), data_(std::move(data)) {
  if (n < 2) throw Error(Errc::kInvalidArgument, "image side must be at least 2");
  if (data_.size() != n * n) {
    throw Error(Errc::kShapeMismatch, "pixel buffer does not hold n*n values");
  }
}

bool Image::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Image::mean() const noexcept {
  if (data_.empty()) return 0.0;
  return std::accumulate(data_.begin(), data_.end(), 0.0) / static_cast<double>(data_.size());
}

double Image::norm() const noexcept { return std::sqrt(dot(*this, *this)); }

Image& Image::operator+=(const Image& other) {
  require_same_shape(n_, other.n_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Image& Image::operator-=(const Image& other) {
  require_same_shape(n_, other.n_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Image& Image::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

Image operator+(Image a, const Image& b) { return a += b; }
Image operator-(Image a, const Image& b) { return a -= b; }
Image operator*(double s, Image a) { return a *= s; }

double dot(const Image& a, const Image& b) {
  require_same_shape(a.size(), b.size());
  const auto av = a.values();
  const auto bv = b.values();
  return std::inner_product(av.begin(), av.end(), bv.begin(), 0.0);
}

double max_abs_diff(const Image& a, const Image& b) {
  require_same_shape(a.size(), b.size());
  double m = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) m = std::max(m, std::abs(av[i] - bv[i]));
  return m;
}

GradientField::GradientField(std::size_t n) : dx_(n), dy_(n) {}

GradientField::GradientField(Image dx, Image dy) : dx_(std::move(dx)), dy_(std::move(dy)) {
  require_same_shape(dx_.size(), dy_.size());
}

double GradientField::norm() const noexcept { return std::sqrt(dot(*this, *this)); }

GradientField& GradientField::operator+=(const GradientField& other) {
  dx_ += other.dx_;
  dy_ += other.dy_;
  return *this;
}

GradientField& GradientField::operator-=(const GradientField& other) {
  dx_ -= other.dx_;
  dy_ -= other.dy_;
  return *this;
}

GradientField& GradientField::operator*=(double s) noexcept {
  dx_ *= s;
  dy_ *= s;
  return *this;
}

GradientField operator+(GradientField a, const GradientField& b) { return a += b; }
GradientField operator-(GradientField a, const GradientField& b) { return a -= b; }
GradientField operator*(double s, GradientField a) { return a *= s; }

double dot(const GradientField& a, const GradientField& b) {
  return dot(a.dx(), b.dx()) + dot(a.dy(), b.dy());
}

double max_abs_diff(const GradientField& a, const GradientField& b) {
  return std::max(max_abs_diff(a.dx(), b.dx()), max_abs_diff(a.dy(), b.dy()));
}

double max_pointwise_distance(const GradientField& a, const GradientField& b) {
  require_same_shape(a.size(), b.size());
  const auto ax = a.dx().values();
  const auto ay = a.dy().values();
  const auto bx = b.dx().values();
  const auto by = b.dy().values();
  double m = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    m = std::max(m, std::hypot(ax[i] - bx[i], ay[i] - by[i]));
  }
  return m;
}

}  // namespace ftvd
