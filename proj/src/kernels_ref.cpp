// Serial reference kernels. Plain loops, no OpenMP, kept as the oracle the
// parallel kernels are tested against: both sides must agree bitwise.

#include <cmath>
#include <cstddef>

#include "ieeg/kernels.hpp"
#include "kernel_detail.hpp"

namespace ieeg::kern::ref {

using detail::act_deriv_one;
using detail::act_one;

template <typename T>
void matmul(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
            bool accumulate) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T acc = accumulate ? y[i * n + j] : T(0);
      for (std::size_t kk = 0; kk < k; ++kk) {
        acc += a[i * k + kk] * b[kk * n + j];
      }
      y[i * n + j] = acc;
    }
  }
}

template <typename T>
void matmul_tn(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
               bool accumulate) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T acc = accumulate ? y[i * n + j] : T(0);
      for (std::size_t kk = 0; kk < k; ++kk) {
        acc += a[kk * m + i] * b[kk * n + j];
      }
      y[i * n + j] = acc;
    }
  }
}

template <typename T>
void matmul_nt(const T* a, const T* b, T* y, std::size_t m, std::size_t k, std::size_t n,
               bool accumulate) {
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T acc = accumulate ? y[i * n + j] : T(0);
      for (std::size_t kk = 0; kk < k; ++kk) {
        acc += a[i * k + kk] * b[j * k + kk];
      }
      y[i * n + j] = acc;
    }
  }
}

template <typename T>
void hadamard(const T* a, const T* b, T* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * b[i];
}

template <typename T>
void activation_forward(Activation kind, T alpha, const T* x, T* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = act_one(kind, alpha, x[i]);
}

template <typename T>
void activation_backward(Activation kind, T alpha, const T* pre, const T* gy, T* gx,
                         std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) gx[i] = gy[i] * act_deriv_one(kind, alpha, pre[i]);
}

template <typename T>
T softmax_cross_entropy(const T* logits, const int* labels, std::size_t batch,
                        std::size_t classes, T* grad) {
  T loss = T(0);
  for (std::size_t r = 0; r < batch; ++r) {
    const T* row = logits + r * classes;
    T mx = row[0];
    for (std::size_t c = 1; c < classes; ++c) mx = row[c] > mx ? row[c] : mx;
    T sum = T(0);
    for (std::size_t c = 0; c < classes; ++c) sum += std::exp(row[c] - mx);
    T log_sum = std::log(sum);
    loss += log_sum - (row[labels[r]] - mx);
    if (grad) {
      for (std::size_t c = 0; c < classes; ++c) {
        T p = std::exp(row[c] - mx) / sum;
        grad[r * classes + c] =
            (p - (static_cast<int>(c) == labels[r] ? T(1) : T(0))) / static_cast<T>(batch);
      }
    }
  }
  return loss / static_cast<T>(batch);
}

template <typename T>
void conv1d_forward(const T* in, const T* weights, const T* bias, T* out, std::size_t t,
                    std::size_t b, std::size_t c_in, std::size_t c_out, std::size_t kernel_len) {
  const std::size_t pad = (kernel_len - 1) / 2;
  for (std::size_t ti = 0; ti < t; ++ti) {
    for (std::size_t bi = 0; bi < b; ++bi) {
      for (std::size_t co = 0; co < c_out; ++co) {
        T acc = bias ? bias[co] : T(0);
        for (std::size_t kk = 0; kk < kernel_len; ++kk) {
          std::ptrdiff_t s = static_cast<std::ptrdiff_t>(ti + kk) - static_cast<std::ptrdiff_t>(pad);
          if (s < 0 || s >= static_cast<std::ptrdiff_t>(t)) continue;
          const T* in_row = in + (static_cast<std::size_t>(s) * b + bi) * c_in;
          const T* w_row = weights + (kk * c_in) * c_out + co;
          for (std::size_t ci = 0; ci < c_in; ++ci) {
            acc += in_row[ci] * w_row[ci * c_out];
          }
        }
        out[(ti * b + bi) * c_out + co] = acc;
      }
    }
  }
}

template <typename T>
void conv1d_backward_input(const T* gout, const T* weights, T* gin, std::size_t t, std::size_t b,
                           std::size_t c_in, std::size_t c_out, std::size_t kernel_len) {
  const std::size_t pad = (kernel_len - 1) / 2;
  for (std::size_t si = 0; si < t; ++si) {
    for (std::size_t bi = 0; bi < b; ++bi) {
      for (std::size_t ci = 0; ci < c_in; ++ci) {
        T acc = T(0);
        for (std::size_t kk = 0; kk < kernel_len; ++kk) {
          std::ptrdiff_t ti = static_cast<std::ptrdiff_t>(si + pad) - static_cast<std::ptrdiff_t>(kk);
          if (ti < 0 || ti >= static_cast<std::ptrdiff_t>(t)) continue;
          const T* g_row = gout + (static_cast<std::size_t>(ti) * b + bi) * c_out;
          const T* w_row = weights + (kk * c_in + ci) * c_out;
          for (std::size_t co = 0; co < c_out; ++co) {
            acc += g_row[co] * w_row[co];
          }
        }
        gin[(si * b + bi) * c_in + ci] = acc;
      }
    }
  }
}

template <typename T>
void conv1d_backward_params(const T* in, const T* gout, T* gweights, T* gbias, std::size_t t,
                            std::size_t b, std::size_t c_in, std::size_t c_out,
                            std::size_t kernel_len) {
  const std::size_t pad = (kernel_len - 1) / 2;
  for (std::size_t kk = 0; kk < kernel_len; ++kk) {
    for (std::size_t ci = 0; ci < c_in; ++ci) {
      for (std::size_t co = 0; co < c_out; ++co) {
        T acc = T(0);
        for (std::size_t ti = 0; ti < t; ++ti) {
          std::ptrdiff_t s = static_cast<std::ptrdiff_t>(ti + kk) - static_cast<std::ptrdiff_t>(pad);
          if (s < 0 || s >= static_cast<std::ptrdiff_t>(t)) continue;
          for (std::size_t bi = 0; bi < b; ++bi) {
            acc += in[(static_cast<std::size_t>(s) * b + bi) * c_in + ci] *
                   gout[(ti * b + bi) * c_out + co];
          }
        }
        gweights[(kk * c_in + ci) * c_out + co] = acc;
      }
    }
  }
  if (gbias) {
    for (std::size_t co = 0; co < c_out; ++co) {
      T acc = T(0);
      for (std::size_t ti = 0; ti < t; ++ti) {
        for (std::size_t bi = 0; bi < b; ++bi) {
          acc += gout[(ti * b + bi) * c_out + co];
        }
      }
      gbias[co] = acc;
    }
  }
}

template <typename T>
void maxpool_time_forward(const T* in, T* out, std::size_t* argmax, std::size_t t, std::size_t b,
                          std::size_t f, std::size_t window, std::size_t stride) {
  const std::size_t t_out = pooled_len(t, stride);
  const std::size_t cols = b * f;
  for (std::size_t col = 0; col < cols; ++col) {
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
  for (std::size_t i = 0; i < t * cols; ++i) gin[i] = T(0);
  for (std::size_t col = 0; col < cols; ++col) {
    for (std::size_t to = 0; to < t_out; ++to) {
      gin[argmax[to * cols + col] * cols + col] += gout[to * cols + col];
    }
  }
}

template <typename T>
void avgpool_time_forward(const T* in, T* out, std::size_t t, std::size_t b, std::size_t f) {
  const std::size_t cols = b * f;
  for (std::size_t col = 0; col < cols; ++col) {
    T acc = T(0);
    for (std::size_t ti = 0; ti < t; ++ti) acc += in[ti * cols + col];
    out[col] = acc / static_cast<T>(t);
  }
}

template <typename T>
void avgpool_time_backward(const T* gout, T* gin, std::size_t t, std::size_t b, std::size_t f) {
  const std::size_t cols = b * f;
  for (std::size_t ti = 0; ti < t; ++ti) {
    for (std::size_t col = 0; col < cols; ++col) {
      gin[ti * cols + col] = gout[col] / static_cast<T>(t);
    }
  }
}

template <typename T>
void feature_moments(const T* in, T* mean, T* var, std::size_t rows, std::size_t f) {
  for (std::size_t j = 0; j < f; ++j) {
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
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < f; ++j) {
      y[r * f + j] = x[r * f + j] * scale[j] + shift[j];
    }
  }
}

#define IEEG_INSTANTIATE_REF(T)                                                                  \
  template void matmul<T>(const T*, const T*, T*, std::size_t, std::size_t, std::size_t, bool); \
  template void matmul_tn<T>(const T*, const T*, T*, std::size_t, std::size_t, std::size_t,     \
                             bool);                                                             \
  template void matmul_nt<T>(const T*, const T*, T*, std::size_t, std::size_t, std::size_t,     \
                             bool);                                                             \
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
  template void feature_affine<T>(const T*, const T*, const T*, T*, std::size_t, std::size_t);

IEEG_INSTANTIATE_REF(float)
IEEG_INSTANTIATE_REF(double)

}  // namespace ieeg::kern::ref
