#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ftvd {

/// Square n x n grey-scale image, row-major, (row, col) indexing.
class Image {
 public:
  Image() = default;
  explicit Image(std::size_t n, double fill = 0.0);
  Image(std::size_t n, std::vector<double> data);

  std::size_t size() const noexcept { return n_; }
  std::size_t pixels() const noexcept { return data_.size(); }

  double& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * n_ + col]; }
  double operator()(std::size_t row, std::size_t col) const noexcept { return data_[row * n_ + col]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool all_finite() const noexcept;
  double mean() const noexcept;
  double norm() const noexcept;

  Image& operator+=(const Image& other);
  Image& operator-=(const Image& other);
  Image& operator*=(double s) noexcept;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

Image operator+(Image a, const Image& b);
Image operator-(Image a, const Image& b);
Image operator*(double s, Image a);

double dot(const Image& a, const Image& b);
double max_abs_diff(const Image& a, const Image& b);

/// Per-pixel 2-vectors (dx, dy). Holds D u, the split variable w and the
/// multiplier lambda.
class GradientField {
 public:
  GradientField() = default;
  explicit GradientField(std::size_t n);
  GradientField(Image dx, Image dy);

  std::size_t size() const noexcept { return dx_.size(); }

  Image& dx() noexcept { return dx_; }
  Image& dy() noexcept { return dy_; }
  const Image& dx() const noexcept { return dx_; }
  const Image& dy() const noexcept { return dy_; }

  bool all_finite() const noexcept { return dx_.all_finite() && dy_.all_finite(); }
  double norm() const noexcept;

  GradientField& operator+=(const GradientField& other);
  GradientField& operator-=(const GradientField& other);
  GradientField& operator*=(double s) noexcept;

  friend bool operator==(const GradientField&, const GradientField&) = default;

 private:
  Image dx_;
  Image dy_;
};

GradientField operator+(GradientField a, const GradientField& b);
GradientField operator-(GradientField a, const GradientField& b);
GradientField operator*(double s, GradientField a);

double dot(const GradientField& a, const GradientField& b);
double max_abs_diff(const GradientField& a, const GradientField& b);

/// max over pixels of the Euclidean length of (a_i - b_i).
double max_pointwise_distance(const GradientField& a, const GradientField& b);

}  // namespace ftvd
