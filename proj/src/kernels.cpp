// OpenMP kernels used by the library. Same per-element accumulation order
// as the serial reference (parallelism only ever splits independent output
// elements), so results match ieeg::kern::ref bitwise at any thread count.

#include <omp.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ieeg/kernels.hpp"
#include "kernel_detail.hpp"

namespace ieeg {

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::identity: return "identity";
    case Activation::relu: return "relu";
    case Activation::leaky_relu: return "leaky_relu";
    case Activation::sigmoid: return "sigmoid";
    case Activation::tanh: return "tanh";
  }
  return "identity";
}

Activation activation_from_name(const std::string& name) {
  if (name == "identity") return Activation::identity;
  if (name == "relu") return Activation::relu;
  if (name == "leaky_relu") return Activation::leaky_relu;
  if (name == "sigmoid") return Activation::sigmoid;
  if (name == "tanh") return Activation::tanh;
  throw std::invalid_argument("unknown activation: " + name);
}

namespace kern {

using detail::act_deriv_one;
using detail::act_one;

// Below this many scalar ops the fork/join overhead dominates.
constexpr std::size_t kGrain = 1 << 15;

using idx = std::ptrdiff_t;

template <typename T>
void matmul(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
            bool accumulate) {
  const bool par = m * k * n > kGrain && m > 1;
#pragma omp parallel for schedule(static) if (par)
  for (idx i = 0; i < static_cast<idx>(m); ++i) {
    T* y_row = y + i * n;
    if (!accumulate) {
      for (std::size_t j = 0; j < n; ++j) y_row[j] = T(0);
    }
    const T* a_row = a + i * k;
    for (std::size_t kk = 0; kk < k; ++kk) {
      const T av = a_row[kk];
      const T* b_row = b + kk * n;
      for (std::size_t j = 0; j < n; ++j) {
        y_row[j] += av * b_row[j];
      }
    }
  }
}

template <typename T>
void transpose(const T* a, T* y, std::size_t rows, std::size_t cols) {
#pragma omp parallel for schedule(static) if (rows * cols > kGrain)
  for (idx r = 0; r < static_cast<idx>(rows); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      y[c * rows + r] = a[r * cols + c];
    }
  }
}

template <typename T>
void matmul_tn(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
               bool accumulate) {
  std::vector<T> at(m * k);
  transpose(a, at.data(), k, m);
  matmul(at.data(), b, y, m, k, n, accumulate);
}

template <typename T>
void matmul_nt(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
               bool accumulate) {
  std::vector<T> bt(k * n);
  transpose(b, bt.data(), n, k);
  matmul(a, bt.data(), y, m, k, n, accumulate);
}

template <typename T>
void hadamard(const T* a, const T* b, T* y, std::size_t n) {
#pragma omp parallel for schedule(static) if (n > kGrain)
  for (idx i = 0; i < static_cast<idx>(n); ++i) y[i] = a[i] * b[i];
}

template <typename T>
void activation_forward(Activation kind, T alpha, const T* x, T* y, std::size_t n) {
#pragma omp parallel for schedule(static) if (n > kGrain)
  for (idx i = 0; i < static_cast<idx>(n); ++i) y[i] = act_one(kind, alpha, x[i]);
}

template <typename T>
void activation_backward(Activation kind, T alpha, const T* pre, const T* gy, T* gx,
                         std::size_t n) {
#pragma omp parallel for schedule(static) if (n > kGrain)
  for (idx i = 0; i < static_cast<idx>(n); ++i) gx[i] = gy[i] * act_deriv_one(kind, alpha, pre[i]);
}

template <typename T>
T softmax_cross_entropy(const T* logits, const int* labels, std::size_t batch,
                        std::size_t classes, T* grad) {
  std::vector<T> row_loss(batch);
#pragma omp parallel for schedule(static) if (batch * classes > kGrain)
  for (idx r = 0; r < static_cast<idx>(batch); ++r) {
    const T* row = logits + r * classes;
    T mx = row[0];
    for (std::size_t c = 1; c < classes; ++c) mx = row[c] > mx ? row[c] : mx;
    T sum = T(0);
    for (std::size_t c = 0; c < classes; ++c) sum += std::exp(row[c] - mx);
    row_loss[r] = std::log(sum) - (row[labels[r]] - mx);
    if (grad) {
      for (std::size_t c = 0; c < classes; ++c) {
        T p = std::exp(row[c] - mx) / sum;
        grad[r * classes + c] =
            (p - (static_cast<int>(c) == labels[r] ? T(1) : T(0))) / static_cast<T>(batch);
      }
    }
  }
  // serial tail sum keeps the batch reduction order fixed
  T loss = T(0);
  for (std::size_t r = 0; r < batch; ++r) loss += row_loss[r];
  return loss / static_cast<T>(batch);
}

template <typename T>
void conv1d_forward(const T* in, const T* weights, const T* bias, T* out, std::size_t t,
                    std::size_t b, std::size_t c_in, std::size_t c_out, std::size_t kernel_len) {
  const idx pad = static_cast<idx>((kernel_len - 1) / 2);
  const idx rows_total = static_cast<idx>(t * b);
#pragma omp parallel for schedule(static) if (rows_total * static_cast<idx>(c_out) > static_cast<idx>(kGrain))
  for (idx r = 0; r < rows_total; ++r) {
    T* o = out + r * c_out;
    for (std::size_t co = 0; co < c_out; ++co) o[co] = bias ? bias[co] : T(0);
  }
  // one shifted accumulate-matmul per kernel tap; tap order matches the
  // reference kernel's per-element order
  for (std::size_t kk = 0; kk < kernel_len; ++kk) {
    const idx off = static_cast<idx>(kk) - pad;
    const idx t0 = off < 0 ? -off : 0;
    const idx t1 = off > 0 ? static_cast<idx>(t) - off : static_cast<idx>(t);
    if (t1 <= t0) continue;
    const std::size_t rows = static_cast<std::size_t>(t1 - t0) * b;
    matmul(in + static_cast<std::size_t>(t0 + off) * b * c_in, weights + kk * c_in * c_out,
           out + static_cast<std::size_t>(t0) * b * c_out, rows, c_in, c_out, true);
  }
}

template <typename T>
void conv1d_backward_input(const T* gout, const T* weights, T* gin, std::size_t t, std::size_t b,
                           std::size_t c_in, std::size_t c_out, std::size_t kernel_len) {
  const idx pad = static_cast<idx>((kernel_len - 1) / 2);
  const idx n_total = static_cast<idx>(t * b * c_in);
#pragma omp parallel for schedule(static) if (n_total > static_cast<idx>(kGrain))
  for (idx i = 0; i < n_total; ++i) gin[i] = T(0);
  for (std::size_t kk = 0; kk < kernel_len; ++kk) {
    const idx off = pad - static_cast<idx>(kk);  // gout time = gin time + off
    const idx s0 = off < 0 ? -off : 0;
    const idx s1 = off > 0 ? static_cast<idx>(t) - off : static_cast<idx>(t);
    if (s1 <= s0) continue;
    const std::size_t rows = static_cast<std::size_t>(s1 - s0) * b;
    matmul_nt(gout + static_cast<std::size_t>(s0 + off) * b * c_out, weights + kk * c_in * c_out,
              gin + static_cast<std::size_t>(s0) * b * c_in, rows, c_out, c_in, true);
  }
}

template <typename T>
void conv1d_backward_params(const T* in, const T* gout, T* gweights, T* gbias, std::size_t t,
                            std::size_t b, std::size_t c_in, std::size_t c_out,
                            std::size_t kernel_len) {
  const idx pad = static_cast<idx>((kernel_len - 1) / 2);
  for (std::size_t i = 0; i < kernel_len * c_in * c_out; ++i) gweights[i] = T(0);
  for (std::size_t kk = 0; kk < kernel_len; ++kk) {
    const idx off = static_cast<idx>(kk) - pad;
    const idx t0 = off < 0 ? -off : 0;
    const idx t1 = off > 0 ? static_cast<idx>(t) - off : static_cast<idx>(t);
    if (t1 <= t0) continue;
    const std::size_t rows = static_cast<std::size_t>(t1 - t0) * b;
    matmul_tn(in + static_cast<std::size_t>(t0 + off) * b * c_in,
              gout + static_cast<std::size_t>(t0) * b * c_out, gweights + kk * c_in * c_out,
              c_in, rows, c_out, true);
  }
  if (gbias) {
#pragma omp parallel for schedule(static) if (t * b * c_out > kGrain)
    for (idx co = 0; co < static_cast<idx>(c_out); ++co) {
      T acc = T(0);
      for (std::size_t r = 0; r < t * b; ++r) acc += gout[r * c_out + co];
      gbias[co] = acc;
    }
  }
}

template <typename T>
void maxpool_time_forward(const T* in, T* out, std::size_t* argmax, std::size_t t, std::size_t b,
                          std::size_t f, std::size_t window, std::size_t stride) {
  const std::size_t t_out = pooled_len(t, stride);
  const std::size_t cols = b * f;
#pragma omp parallel for schedule(static) if (t * cols > kGrain)
  for (idx col = 0; col < static_cast<idx>(cols); ++col) {
    for (std::size_t to = 0; to < t_out; ++to) {
      std::size_t begin = to * stride;
      std::size_t end = begin + window;
      if (end > t) end = t;
      std::size_t best = begin;
      T best_v = in[begin * cols + col];
      for (std::size_t ti = begin + 1; ti < end; ++ti) {
        T v = in[ti * cols + col];
        if (v > best_v) {
          best_v = v;
          best = ti;
        }
      }
      out[to * cols + col] = best_v;
      if (argmax) argmax[to * cols + col] = best;
    }
  }
}

template <typename T>
void maxpool_time_backward(const T* gout, const std::size_t* argmax, T* gin, std::size_t t,
                           std::size_t t_out, std::size_t b, std::size_t f) {
  const std::size_t cols = b * f;
#pragma omp parallel for schedule(static) if (t * cols > kGrain)
  for (idx i = 0; i < static_cast<idx>(t * cols); ++i) gin[i] = T(0);
#pragma omp parallel for schedule(static) if (t_out * cols > kGrain)
  for (idx col = 0; col < static_cast<idx>(cols); ++col) {
    for (std::size_t to = 0; to < t_out; ++to) {
      gin[argmax[to * cols + col] * cols + col] += gout[to * cols + col];
    }
  }
}

template <typename T>
void avgpool_time_forward(const T* in, T* out, std::size_t t, std::size_t b, std::size_t f) {
  const std::size_t cols = b * f;
#pragma omp parallel for schedule(static) if (t * cols > kGrain)
  for (idx col = 0; col < static_cast<idx>(cols); ++col) {
    T acc = T(0);
    for (std::size_t ti = 0; ti < t; ++ti) acc += in[ti * cols + col];
    out[col] = acc / static_cast<T>(t);
  }
}

template <typename T>
void avgpool_time_backward(const T* gout, T* gin, std::size_t t, std::size_t b, std::size_t f) {
  const std::size_t cols = b * f;
#pragma omp parallel for schedule(static) if (t * cols > kGrain)
  for (idx ti = 0; ti < static_cast<idx>(t); ++ti) {
    for (std::size_t col = 0; col < cols; ++col) {
      gin[ti * cols + col] = gout[col] / static_cast<T>(t);
    }
  }
}

template <typename T>
void feature_moments(const T* in, T* mean, T* var, std::size_t rows, std::size_t f) {
#pragma omp parallel for schedule(static) if (rows * f > kGrain)
  for (idx j = 0; j < static_cast<idx>(f); ++j) {
    T acc = T(0);
    for (std::size_t r = 0; r < rows; ++r) acc += in[r * f + j];
    T mu = acc / static_cast<T>(rows);
    mean[j] = mu;
    T vacc = T(0);
    for (std::size_t r = 0; r < rows; ++r) {
      T d = in[r * f + j] - mu;
      vacc += d * d;
    }
    var[j] = vacc / static_cast<T>(rows);
  }
}

template <typename T>
void feature_affine(const T* x, const T* scale, const T* shift, T* y, std::size_t rows,
                    std::size_t f) {
#pragma omp parallel for schedule(static) if (rows * f > kGrain)
  for (idx r = 0; r < static_cast<idx>(rows); ++r) {
    for (std::size_t j = 0; j < f; ++j) {
      y[r * f + j] = x[r * f + j] * scale[j] + shift[j];
    }
  }
}

template <typename T>
void scale_add(T* y, const T* x, T factor, std::size_t n) {
#pragma omp parallel for schedule(static) if (n > kGrain)
  for (idx i = 0; i < static_cast<idx>(n); ++i) y[i] += factor * x[i];
}

#define IEEG_INSTANTIATE_KERN(T)                                                                 \
  template void matmul<T>(const T*, const T*, T*, std::size_t, std::size_t, std::size_t, bool); \
  template void matmul_tn<T>(const T*, const T*, T*, std::size_t, std::size_t, std::size_t,     \
                             bool);                                                             \
  template void matmul_nt<T>(const T*, const T*, T*, std::size_t, std::size_t, std::size_t,     \
                             bool);                                                             \
  template void transpose<T>(const T*, T*, std::size_t, std::size_t);                           \
  template void hadamard<T>(const T*, const T*, T*, std::size_t);                               \
  template void activation_forward<T>(Activation, T, const T*, T*, std::size_t);                \
  template void activation_backward<T>(Activation, T, const T*, const T*, T*, std::size_t);     \
  template T softmax_cross_entropy<T>(const T*, const int*, std::size_t, std::size_t, T*);      \
  template void conv1d_forward<T>(const T*, const T*, const T*, T*, std::size_t, std::size_t,   \
                                  std::size_t, std::size_t, std::size_t);                       \
  template void conv1d_backward_input<T>(const T*, const T*, T*, std::size_t, std::size_t,      \
                                         std::size_t, std::size_t, std::size_t);                \
  template void conv1d_backward_params<T>(const T*, const T*, T*, T*, std::size_t, std::size_t, \
                                          std::size_t, std::size_t, std::size_t);               \
  template void maxpool_time_forward<T>(const T*, T*, std::size_t*, std::size_t, std::size_t,   \
                                        std::size_t, std::size_t, std::size_t);                 \
  template void maxpool_time_backward<T>(const T*, const std::size_t*, T*, std::size_t,         \
                                         std::size_t, std::size_t, std::size_t);                \
  template void avgpool_time_forward<T>(const T*, T*, std::size_t, std::size_t, std::size_t);   \
  template void avgpool_time_backward<T>(const T*, T*, std::size_t, std::size_t, std::size_t);  \
  template void feature_moments<T>(const T*, T*, T*, std::size_t, std::size_t);                 \
  template void feature_affine<T>(const T*, const T*, const T*, T*, std::size_t, std::size_t);  \
  template void scale_add<T>(T*, const T*, T, std::size_t);

IEEG_INSTANTIATE_KERN(float)
IEEG_INSTANTIATE_KERN(double)

}  // namespace kern

// ---- tensor-level wrappers ----

template <typename T>
TensorT<T> matmul(const TensorT<T>& a, const TensorT<T>& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0)) {
    throw std::invalid_argument("matmul: incompatible shapes " + shape_string(a.shape()) +
                                " and " + shape_string(b.shape()));
  }
  TensorT<T> y({a.dim(0), b.dim(1)});
  kern::matmul(a.data(), b.data(), y.data(), a.dim(0), a.dim(1), b.dim(1));
  return y;
}

template <typename T>
TensorT<T> hadamard(const TensorT<T>& a, const TensorT<T>& b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("hadamard: shape mismatch " + shape_string(a.shape()) + " vs " +
                                shape_string(b.shape()));
  }
  TensorT<T> y(a.shape());
  kern::hadamard(a.data(), b.data(), y.data(), a.size());
  return y;
}

template <typename T>
TensorT<T> activation(const TensorT<T>& x, Activation kind, T alpha) {
  if (kind == Activation::leaky_relu && !(alpha > T(0))) {
    throw std::invalid_argument("activation: leaky_relu alpha must be positive");
  }
  TensorT<T> y(x.shape());
  kern::activation_forward(kind, alpha, x.data(), y.data(), x.size());
  return y;
}

template <typename T>
TensorT<T> activation_derivative(const TensorT<T>& x, Activation kind, T alpha) {
  if (kind == Activation::leaky_relu && !(alpha > T(0))) {
    throw std::invalid_argument("activation: leaky_relu alpha must be positive");
  }
  TensorT<T> y(x.shape());
  std::vector<T> ones(x.size(), T(1));
  kern::activation_backward(kind, alpha, x.data(), ones.data(), y.data(), x.size());
  return y;
}

template <typename T>
XentResult<T> softmax_cross_entropy(const TensorT<T>& logits, const std::vector<int>& labels) {
  if (logits.rank() != 2 || logits.dim(0) != labels.size()) {
    throw std::invalid_argument("softmax_cross_entropy: logits " + shape_string(logits.shape()) +
                                " vs " + std::to_string(labels.size()) + " labels");
  }
  for (int l : labels) {
    if (l < 0 || static_cast<std::size_t>(l) >= logits.dim(1)) {
      throw std::invalid_argument("softmax_cross_entropy: label out of range");
    }
  }
  XentResult<T> r{T(0), TensorT<T>(logits.shape())};
  r.loss = kern::softmax_cross_entropy(logits.data(), labels.data(), logits.dim(0), logits.dim(1),
                                       r.grad_logits.data());
  return r;
}

#define IEEG_INSTANTIATE_WRAP(T)                                                       \
  template TensorT<T> matmul<T>(const TensorT<T>&, const TensorT<T>&);                 \
  template TensorT<T> hadamard<T>(const TensorT<T>&, const TensorT<T>&);               \
  template TensorT<T> activation<T>(const TensorT<T>&, Activation, T);                 \
  template TensorT<T> activation_derivative<T>(const TensorT<T>&, Activation, T);      \
  template XentResult<T> softmax_cross_entropy<T>(const TensorT<T>&, const std::vector<int>&);

IEEG_INSTANTIATE_WRAP(float)
IEEG_INSTANTIATE_WRAP(double)

}  // namespace ieeg
