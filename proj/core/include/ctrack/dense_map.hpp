#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ctrack {

/// Dense (channel, row, col) grid of doubles stored row-major in that order.
class DenseMap {
 public:
  DenseMap() = default;
  DenseMap(std::size_t channels, std::size_t rows, std::size_t cols, double fill = 0.0);

  std::size_t channels() const { return channels_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  bool same_shape(const DenseMap& other) const {
    return channels_ == other.channels_ && rows_ == other.rows_ && cols_ == other.cols_;
  }

  std::size_t index(std::size_t c, std::size_t r, std::size_t x) const {
    return (c * rows_ + r) * cols_ + x;
  }

  double& operator()(std::size_t c, std::size_t r, std::size_t x) { return data_[index(c, r, x)]; }
  double operator()(std::size_t c, std::size_t r, std::size_t x) const {
    return data_[index(c, r, x)];
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  friend bool operator==(const DenseMap&, const DenseMap&) = default;

 private:
  std::size_t channels_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace ctrack
