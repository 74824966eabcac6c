#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "stieltjes/linalg.hpp"

namespace stieltjes {

/// Richardson tableau for samples v(h_k) with h_k = h_0 / 2^k, eliminating
/// the h, h^2, ..., h^order error terms. push() returns the current
/// extrapolant R[k][min(k, order)].
class RichardsonTableau {
 public:
  explicit RichardsonTableau(int order = 2) : order_(order) {}

  const Mat& push(const Mat& v) {
    std::vector<Mat> row;
    const int depth = std::min<int>(static_cast<int>(row_.size()), order_);
    row.reserve(depth + 1);
    row.push_back(v);
    double factor = 1.0;
    for (int j = 1; j <= depth; ++j) {
      factor *= 2.0;
      row.push_back(row[j - 1] + (row[j - 1] - row_[j - 1]) / (factor - 1.0));
    }
    row_ = std::move(row);
    if (count_ > 0) previous_ = current_;
    current_ = row_.back();
    ++count_;
    return current_;
  }

  int count() const noexcept { return count_; }
  const Mat& current() const noexcept { return current_; }
  const Mat& previous() const noexcept { return previous_; }
  /// ||E_k - E_{k-1}||_2; infinite before the second sample.
  double increment() const {
    return count_ < 2 ? std::numeric_limits<double>::infinity() : opnorm(current_ - previous_);
  }

 private:
  int order_;
  int count_ = 0;
  std::vector<Mat> row_;
  Mat current_;
  Mat previous_;
};

}  // namespace stieltjes
