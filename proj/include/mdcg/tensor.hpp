// mdcg/tensor.hpp

// Copyright 2026  The mdcg authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mdcg/error.hpp"

namespace mdcg {

// Dense row-major tensor of rank <= 4. Feature maps use [batch, channel,
// freq, time] order throughout the library.
template <typename T>
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
    for (int d : shape_) require(d >= 0, "Tensor: negative dimension");
    data_.assign(static_cast<size_t>(numel_of(shape_)), T(0));
  }

  static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }

  static Tensor zeros_like(const Tensor& other) { return Tensor(other.shape_); }

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_[static_cast<size_t>(i)]; }
  int64_t numel() const { return static_cast<int64_t>(data_.size()); }
  bool empty() const { return data_.empty(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

  T& operator[](int64_t i) { return data_[static_cast<size_t>(i)]; }
  const T& operator[](int64_t i) const { return data_[static_cast<size_t>(i)]; }

  T& at(int a, int b) { return data_[static_cast<size_t>(a) * shape_[1] + b]; }
  const T& at(int a, int b) const {
    return data_[static_cast<size_t>(a) * shape_[1] + b];
  }
  T& at(int a, int b, int c) {
    return data_[(static_cast<size_t>(a) * shape_[1] + b) * shape_[2] + c];
  }
  const T& at(int a, int b, int c) const {
    return data_[(static_cast<size_t>(a) * shape_[1] + b) * shape_[2] + c];
  }
  T& at(int a, int b, int c, int d) {
    return data_[((static_cast<size_t>(a) * shape_[1] + b) * shape_[2] + c) *
                     shape_[3] +
                 d];
  }
  const T& at(int a, int b, int c, int d) const {
    return data_[((static_cast<size_t>(a) * shape_[1] + b) * shape_[2] + c) *
                     shape_[3] +
                 d];
  }

  void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

  bool all_finite() const {
    for (const T& v : data_)
      if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
  }

  static int64_t numel_of(const std::vector<int>& shape) {
    int64_t n = 1;
    for (int d : shape) n *= d;
    return shape.empty() ? 0 : n;
  }

 private:
  std::vector<int> shape_;
  std::vector<T> data_;
};

template <typename T>
Tensor<T> operator-(const Tensor<T>& a, const Tensor<T>& b) {
  require(a.same_shape(b), "Tensor: shape mismatch in subtraction");
  Tensor<T> out = Tensor<T>::zeros_like(a);
  for (int64_t i = 0; i < a.numel(); ++i) out[i] = a[i] - b[i];
  return out;
}

template <typename T>
double max_abs_diff(const Tensor<T>& a, const Tensor<T>& b) {
  require(a.same_shape(b), "Tensor: shape mismatch in max_abs_diff");
  double m = 0;
  for (int64_t i = 0; i < a.numel(); ++i)
    m = std::max(m, std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i])));
  return m;
}

template <typename T>
double mean_abs(const Tensor<T>& a) {
  require(a.numel() > 0, "Tensor: mean of empty tensor");
  double s = 0;
  for (int64_t i = 0; i < a.numel(); ++i) s += std::abs(static_cast<double>(a[i]));
  return s / static_cast<double>(a.numel());
}

}  // namespace mdcg
