// mdcg/nn.hpp

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

#include <Eigen/Dense>

#include "mdcg/tensor.hpp"

namespace mdcg {
namespace nn {

template <typename T>
using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using RowMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using RowMap = Eigen::Map<RowMat<T>>;
template <typename T>
using ConstRowMap = Eigen::Map<const RowMat<T>>;
template <typename T>
using VecMap = Eigen::Map<Eigen::Matrix<T, Eigen::Dynamic, 1>>;
template <typename T>
using ConstVecMap = Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>>;

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

// "Same"-padded strided convolution geometry: output size is the ceiling of
// input/stride, leading pad gets the smaller half.
struct ConvGeom {
  int c_in = 0, c_out = 0;
  int in_f = 0, in_t = 0;
  int out_f = 0, out_t = 0;
  int k_f = 0, k_t = 0;
  int s_f = 0, s_t = 0;
  int pad_f = 0, pad_t = 0;

  int patch() const { return c_in * k_f * k_t; }
  int64_t out_spatial() const { return static_cast<int64_t>(out_f) * out_t; }
};

inline ConvGeom same_conv_geom(int c_in, int c_out, int in_f, int in_t, int k_f,
                               int k_t, int s_f, int s_t) {
  require(c_in >= 1 && c_out >= 1 && in_f >= 1 && in_t >= 1,
          "conv: invalid input geometry");
  require(k_f >= 1 && k_t >= 1 && s_f >= 1 && s_t >= 1,
          "conv: invalid kernel/stride");
  ConvGeom g;
  g.c_in = c_in;
  g.c_out = c_out;
  g.in_f = in_f;
  g.in_t = in_t;
  g.k_f = k_f;
  g.k_t = k_t;
  g.s_f = s_f;
  g.s_t = s_t;
  g.out_f = ceil_div(in_f, s_f);
  g.out_t = ceil_div(in_t, s_t);
  int total_f = std::max((g.out_f - 1) * s_f + k_f - in_f, 0);
  int total_t = std::max((g.out_t - 1) * s_t + k_t - in_t, 0);
  g.pad_f = total_f / 2;
  g.pad_t = total_t / 2;
  return g;
}

// Unrolls one sample into a [patch x out_spatial] column-major matrix.
template <typename T>
void im2col(const T* x, const ConvGeom& g, MatX<T>& col) {
  col.resize(g.patch(), g.out_spatial());
  const int64_t in_plane = static_cast<int64_t>(g.in_f) * g.in_t;
  for (int of = 0; of < g.out_f; ++of) {
    const int f0 = of * g.s_f - g.pad_f;
    for (int ot = 0; ot < g.out_t; ++ot) {
      const int t0 = ot * g.s_t - g.pad_t;
      T* dst = col.data() +
               (static_cast<int64_t>(of) * g.out_t + ot) * g.patch();
      for (int c = 0; c < g.c_in; ++c) {
        const T* xc = x + c * in_plane;
        for (int kf = 0; kf < g.k_f; ++kf) {
          const int fi = f0 + kf;
          if (fi < 0 || fi >= g.in_f) {
            for (int kt = 0; kt < g.k_t; ++kt) *dst++ = T(0);
            continue;
          }
          const T* xr = xc + static_cast<int64_t>(fi) * g.in_t;
          for (int kt = 0; kt < g.k_t; ++kt) {
            const int ti = t0 + kt;
            *dst++ = (ti >= 0 && ti < g.in_t) ? xr[ti] : T(0);
          }
        }
      }
    }
  }
}

// Adjoint of im2col: scatter-adds columns back into the sample buffer.
template <typename T>
void col2im_add(const MatX<T>& col, const ConvGeom& g, T* x) {
  const int64_t in_plane = static_cast<int64_t>(g.in_f) * g.in_t;
  for (int of = 0; of < g.out_f; ++of) {
    const int f0 = of * g.s_f - g.pad_f;
    for (int ot = 0; ot < g.out_t; ++ot) {
      const int t0 = ot * g.s_t - g.pad_t;
      const T* src = col.data() +
                     (static_cast<int64_t>(of) * g.out_t + ot) * g.patch();
      for (int c = 0; c < g.c_in; ++c) {
        T* xc = x + c * in_plane;
        for (int kf = 0; kf < g.k_f; ++kf) {
          const int fi = f0 + kf;
          if (fi < 0 || fi >= g.in_f) {
            src += g.k_t;
            continue;
          }
          T* xr = xc + static_cast<int64_t>(fi) * g.in_t;
          for (int kt = 0; kt < g.k_t; ++kt) {
            const int ti = t0 + kt;
            if (ti >= 0 && ti < g.in_t) xr[ti] += src[kt];
          }
          src += g.k_t;
        }
      }
    }
  }
}

// x: [B, c_in, in_f, in_t], w: [c_out, c_in, k_f, k_t], b: [c_out].
template <typename T>
Tensor<T> conv_forward(const Tensor<T>& x, const Tensor<T>& w,
                       const Tensor<T>& bias, const ConvGeom& g) {
  const int batch = x.dim(0);
  Tensor<T> y({batch, g.c_out, g.out_f, g.out_t});
  ConstRowMap<T> wm(w.data(), g.c_out, g.patch());
  ConstVecMap<T> bv(bias.data(), g.c_out);
  const int64_t in_sz = static_cast<int64_t>(g.c_in) * g.in_f * g.in_t;
  const int64_t out_sz = static_cast<int64_t>(g.c_out) * g.out_spatial();
  MatX<T> col;
  for (int b = 0; b < batch; ++b) {
    im2col(x.data() + b * in_sz, g, col);
    RowMap<T> ym(y.data() + b * out_sz, g.c_out, g.out_spatial());
    ym.noalias() = wm * col;
    ym.colwise() += bv;
  }
  return y;
}

// Gradient w.r.t. the convolution input; also the forward pass of the
// corresponding transposed convolution.
template <typename T>
Tensor<T> conv_grad_input(const Tensor<T>& gy, const Tensor<T>& w,
                          const ConvGeom& g) {
  const int batch = gy.dim(0);
  Tensor<T> gx({batch, g.c_in, g.in_f, g.in_t});
  ConstRowMap<T> wm(w.data(), g.c_out, g.patch());
  const int64_t in_sz = static_cast<int64_t>(g.c_in) * g.in_f * g.in_t;
  const int64_t out_sz = static_cast<int64_t>(g.c_out) * g.out_spatial();
  MatX<T> dcol;
  for (int b = 0; b < batch; ++b) {
    ConstRowMap<T> gym(gy.data() + b * out_sz, g.c_out, g.out_spatial());
    dcol.noalias() = wm.transpose() * gym;
    col2im_add(dcol, g, gx.data() + b * in_sz);
  }
  return gx;
}

// Accumulates weight/bias gradients (gw, gb must be pre-sized, zero or
// partial sums).
template <typename T>
void conv_grad_params(const Tensor<T>& x, const Tensor<T>& gy,
                      const ConvGeom& g, Tensor<T>& gw, Tensor<T>& gb) {
  const int batch = x.dim(0);
  RowMap<T> gwm(gw.data(), g.c_out, g.patch());
  VecMap<T> gbv(gb.data(), g.c_out);
  const int64_t in_sz = static_cast<int64_t>(g.c_in) * g.in_f * g.in_t;
  const int64_t out_sz = static_cast<int64_t>(g.c_out) * g.out_spatial();
  MatX<T> col;
  for (int b = 0; b < batch; ++b) {
    im2col(x.data() + b * in_sz, g, col);
    ConstRowMap<T> gym(gy.data() + b * out_sz, g.c_out, g.out_spatial());
    gwm.noalias() += gym * col.transpose();
    gbv.noalias() += gym.rowwise().sum();
  }
}

template <typename T>
Tensor<T> relu(const Tensor<T>& x) {
  Tensor<T> y = Tensor<T>::zeros_like(x);
  for (int64_t i = 0; i < x.numel(); ++i) y[i] = x[i] > T(0) ? x[i] : T(0);
  return y;
}

// Uses the activation output as the mask: relu(x) > 0 iff x > 0.
template <typename T>
Tensor<T> relu_backward(const Tensor<T>& activated, const Tensor<T>& grad) {
  Tensor<T> g = Tensor<T>::zeros_like(grad);
  for (int64_t i = 0; i < grad.numel(); ++i)
    g[i] = activated[i] > T(0) ? grad[i] : T(0);
  return g;
}

template <typename T>
Tensor<T> leaky_relu(const Tensor<T>& x, T slope) {
  Tensor<T> y = Tensor<T>::zeros_like(x);
  for (int64_t i = 0; i < x.numel(); ++i)
    y[i] = x[i] > T(0) ? x[i] : slope * x[i];
  return y;
}

// Leaky output keeps the input's sign for slope > 0, so the output doubles
// as the mask here too.
template <typename T>
Tensor<T> leaky_relu_backward(const Tensor<T>& activated, const Tensor<T>& grad,
                              T slope) {
  Tensor<T> g = Tensor<T>::zeros_like(grad);
  for (int64_t i = 0; i < grad.numel(); ++i)
    g[i] = activated[i] > T(0) ? grad[i] : slope * grad[i];
  return g;
}

}  // namespace nn
}  // namespace mdcg
