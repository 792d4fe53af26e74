#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ieeg/tensor.hpp"

// Data-parallel kernels behind all layer math. Each kernel exists twice:
// the OpenMP version in ieeg::kern used by the library, and a plain serial
// reference in ieeg::kern::ref kept for testing and benchmarking. Both
// accumulate in the same fixed per-element order (left-to-right over the
// contraction axis), so their outputs are bitwise identical and every
// seeded run reproduces exactly.

namespace ieeg {

enum class Activation { identity, relu, leaky_relu, sigmoid, tanh };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

namespace kern {

// y[m x n] = a[m x k] * b[k x n], plus-equals when accumulate
template <typename T>
void matmul(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
            bool accumulate = false);

// y[m x n] = a^T[k x m] * b[k x n]
template <typename T>
void matmul_tn(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
               bool accumulate = false);

// y[m x n] = a[m x k] * b^T[n x k]
template <typename T>
void matmul_nt(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
               bool accumulate = false);

template <typename T>
void transpose(const T* a, T* y, std::size_t rows, std::size_t cols);

template <typename T>
void hadamard(const T* a, const T* b, T* y, std::size_t n);

template <typename T>
void activation_forward(Activation kind, T alpha, const T* x, T* y, std::size_t n);

// gx = gy .* sigma'(pre); relu' at exactly 0 is 0, leaky_relu' at 0 is alpha
template <typename T>
void activation_backward(Activation kind, T alpha, const T* pre, const T* gy, T* gx,
                         std::size_t n);

// Mean cross-entropy over the batch via max-shifted log-sum-exp.
// grad[b x c] = (softmax - onehot) / batch.
template <typename T>
T softmax_cross_entropy(const T* logits, const int* labels, std::size_t batch,
                        std::size_t classes, T* grad);

// 1-D convolution over time, layout [t x b x c], stride 1, zero padding
// (kernel_len - 1) / 2 on both sides (odd kernel_len keeps t unchanged).
// weights [kernel_len x c_in x c_out].
template <typename T>
void conv1d_forward(const T* in, const T* weights, const T* bias, T* out, std::size_t t,
                    std::size_t b, std::size_t c_in, std::size_t c_out, std::size_t kernel_len);

template <typename T>
void conv1d_backward_input(const T* gout, const T* weights, T* gin, std::size_t t, std::size_t b,
                           std::size_t c_in, std::size_t c_out, std::size_t kernel_len);

template <typename T>
void conv1d_backward_params(const T* in, const T* gout, T* gweights, T* gbias, std::size_t t,
                            std::size_t b, std::size_t c_in, std::size_t c_out,
                            std::size_t kernel_len);

// Ceil-mode max pool over time, layout [t x b x f]; t_out = ceil(t / stride),
// trailing partial window pools what remains. argmax holds the flat input
// time index of the first maximum per output, for the backward route.
template <typename T>
void maxpool_time_forward(const T* in, T* out, std::size_t* argmax, std::size_t t, std::size_t b,
                          std::size_t f, std::size_t window, std::size_t stride);

template <typename T>
void maxpool_time_backward(const T* gout, const std::size_t* argmax, T* gin, std::size_t t,
                           std::size_t t_out, std::size_t b, std::size_t f);

template <typename T>
void avgpool_time_forward(const T* in, T* out, std::size_t t, std::size_t b, std::size_t f);

template <typename T>
void avgpool_time_backward(const T* gout, T* gin, std::size_t t, std::size_t b, std::size_t f);

// Per-feature mean / population variance over the merged (t x b) axis.
template <typename T>
void feature_moments(const T* in, T* mean, T* var, std::size_t rows, std::size_t f);

// y = x * scale + shift, per feature, layout [rows x f]
template <typename T>
void feature_affine(const T* x, const T* scale, const T* shift, T* y, std::size_t rows,
                    std::size_t f);

template <typename T>
void scale_add(T* y, const T* x, T factor, std::size_t n);  // y += factor * x

namespace ref {

template <typename T>
void matmul(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
            bool accumulate = false);
template <typename T>
void matmul_tn(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
               bool accumulate = false);
template <typename T>
void matmul_nt(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
               bool accumulate = false);
template <typename T>
void hadamard(const T* a, const T* b, T* y, std::size_t n);
template <typename T>
void activation_forward(Activation kind, T alpha, const T* x, T* y, std::size_t n);
template <typename T>
void activation_backward(Activation kind, T alpha, const T* pre, const T* gy, T* gx,
                         std::size_t n);
template <typename T>
T softmax_cross_entropy(const T* logits, const int* labels, std::size_t batch,
                        std::size_t classes, T* grad);
template <typename T>
void conv1d_forward(const T* in, const T* weights, const T* bias, T* out, std::size_t t,
                    std::size_t b, std::size_t c_in, std::size_t c_out, std::size_t kernel_len);
template <typename T>
void conv1d_backward_input(const T* gout, const T* weights, T* gin, std::size_t t, std::size_t b,
                           std::size_t c_in, std::size_t c_out, std::size_t kernel_len);
template <typename T>
void conv1d_backward_params(const T* in, const T* gout, T* gweights, T* gbias, std::size_t t,
                            std::size_t b, std::size_t c_in, std::size_t c_out,
                            std::size_t kernel_len);
template <typename T>
void maxpool_time_forward(const T* in, T* out, std::size_t* argmax, std::size_t t, std::size_t b,
                          std::size_t f, std::size_t window, std::size_t stride);
template <typename T>
void maxpool_time_backward(const T* gout, const std::size_t* argmax, T* gin, std::size_t t,
                           std::size_t t_out, std::size_t b, std::size_t f);
template <typename T>
void avgpool_time_forward(const T* in, T* out, std::size_t t, std::size_t b, std::size_t f);
template <typename T>
void avgpool_time_backward(const T* gout, T* gin, std::size_t t, std::size_t b, std::size_t f);
template <typename T>
void feature_moments(const T* in, T* mean, T* var, std::size_t rows, std::size_t f);
template <typename T>
void feature_affine(const T* x, const T* scale, const T* shift, T* y, std::size_t rows,
                    std::size_t f);

}  // namespace ref

inline std::size_t pooled_len(std::size_t t, std::size_t stride) {
  return (t + stride - 1) / stride;  // ceil mode
}

}  // namespace kern

// Tensor-level wrappers with shape checking (the core_numerics surface).

template <typename T>
TensorT<T> matmul(const TensorT<T>& a, const TensorT<T>& b);

template <typename T>
TensorT<T> hadamard(const TensorT<T>& a, const TensorT<T>& b);

template <typename T>
TensorT<T> activation(const TensorT<T>& x, Activation kind, T alpha = T(0.01));

template <typename T>
TensorT<T> activation_derivative(const TensorT<T>& x, Activation kind, T alpha = T(0.01));

template <typename T>
struct XentResult {
  T loss;
  TensorT<T> grad_logits;
};

template <typename T>
XentResult<T> softmax_cross_entropy(const TensorT<T>& logits, const std::vector<int>& labels);

}  // namespace ieeg
