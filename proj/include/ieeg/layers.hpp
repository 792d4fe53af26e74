#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ieeg/kernels.hpp"
#include "ieeg/rng.hpp"
#include "ieeg/tensor.hpp"

// Layer math. Sequence tensors are time-major [t x b x features]; pooled
// features are [b x features]. Every forward has a cache + exact backward
// pair; gradients are checked against central finite differences.

namespace ieeg {

enum class Mode { train, eval };

// ---------- independently recurrent layer ----------
// h_t = act(x_t * W + u .* h_{t-1} + b); the recurrence is elementwise, so
// dh_t/dh_{t-1} is the diagonal u .* act'(pre_t).

template <typename T>
struct IndRnnParams {
  TensorT<T> input_weights;      // [input_dim x hidden]
  TensorT<T> recurrent_weights;  // [hidden]
  TensorT<T> bias;               // [hidden]
  Activation act = Activation::relu;
  T act_alpha = T(0.01);
  T recurrent_clip = T(1);  // |u| bound applied after each optimizer step

  std::size_t input_dim() const { return input_weights.dim(0); }
  std::size_t hidden() const { return input_weights.dim(1); }
};

template <typename T>
struct IndRnnCache {
  TensorT<T> input;   // [t x b x d]
  TensorT<T> pre;     // [t x b x h] pre-activations
  TensorT<T> hidden;  // [t x b x h]
  TensorT<T> h0;      // [b x h]
};

template <typename T>
struct IndRnnGrads {
  TensorT<T> input_weights;
  TensorT<T> recurrent_weights;
  TensorT<T> bias;
  TensorT<T> input;
};

template <typename T>
TensorT<T> indrnn_forward(const IndRnnParams<T>& p, const TensorT<T>& input,
                          const TensorT<T>& h0, IndRnnCache<T>* cache);

template <typename T>
IndRnnGrads<T> indrnn_backward(const IndRnnParams<T>& p, const IndRnnCache<T>& cache,
                               const TensorT<T>& grad_hidden_seq);

// ---------- batch normalization ----------
// Normalizes each feature over the merged (t x b) sample axis.

template <typename T>
struct BatchNormState {
  TensorT<T> gamma;  // [f]
  TensorT<T> beta;   // [f]
  TensorT<T> running_mean;
  TensorT<T> running_var;
  T eps = T(1e-5);
  T momentum = T(0.9);
  bool initialized = false;  // running stats seen at least one train batch

  explicit BatchNormState(std::size_t features = 1)
      : gamma(TensorT<T>::full({features}, T(1))),
        beta({features}),
        running_mean({features}),
        running_var({features}) {}
};

template <typename T>
struct BatchNormCache {
  TensorT<T> xhat;  // [rows x f]
  TensorT<T> mean;  // [f], batch stats
  TensorT<T> var;   // [f]
  std::vector<std::size_t> in_shape;
};

// Train mode: batch statistics, running <- momentum*running + (1-momentum)*batch.
// Eval mode: running statistics; rejected until initialized (or loaded).
template <typename T>
TensorT<T> batchnorm_apply(BatchNormState<T>& st, const TensorT<T>& seq, Mode mode,
                           BatchNormCache<T>* cache);

template <typename T>
struct BatchNormGrads {
  TensorT<T> gamma, beta, input;
};

template <typename T>
BatchNormGrads<T> batchnorm_backward(const BatchNormState<T>& st, const BatchNormCache<T>& cache,
                                     const TensorT<T>& grad_out);

// ---------- pooling over time ----------

struct MaxPoolCache {
  std::vector<std::size_t> argmax;  // first maximal input index per output
  std::size_t t_in = 0, t_out = 0, b = 0, f = 0;
};

// Ceil mode: t_out = ceil(t/stride), trailing partial window pools what is
// there, t == 1 is the identity.
template <typename T>
TensorT<T> maxpool_time(const TensorT<T>& seq, std::size_t window, std::size_t stride,
                        MaxPoolCache* cache);

template <typename T>
TensorT<T> maxpool_time_grad(const MaxPoolCache& cache, const TensorT<T>& grad_out);

template <typename T>
TensorT<T> avgpool_time(const TensorT<T>& seq);  // [t x b x f] -> [b x f]

template <typename T>
TensorT<T> avgpool_time_grad(std::size_t t, const TensorT<T>& grad_out);

// ---------- fully connected ----------

template <typename T>
struct FcParams {
  TensorT<T> weights;  // [in x out]
  TensorT<T> bias;     // [out]
  Activation act = Activation::identity;
  T act_alpha = T(0.01);
};

template <typename T>
struct FcCache {
  TensorT<T> input;  // [n x in]
  TensorT<T> pre;    // [n x out]
};

template <typename T>
TensorT<T> fc_apply(const FcParams<T>& p, const TensorT<T>& x, FcCache<T>* cache);

template <typename T>
struct FcGrads {
  TensorT<T> weights, bias, input;
};

template <typename T>
FcGrads<T> fc_backward(const FcParams<T>& p, const FcCache<T>& cache, const TensorT<T>& grad_out);

// ---------- LSTM (baseline) ----------
// Standard gate equations, gate order (input, forget, cell, output).

template <typename T>
struct LstmParams {
  TensorT<T> w_input;      // [d x 4h]
  TensorT<T> w_recurrent;  // [h x 4h]
  TensorT<T> bias;         // [4h]

  std::size_t input_dim() const { return w_input.dim(0); }
  std::size_t hidden() const { return w_recurrent.dim(0); }
};

template <typename T>
struct LstmCache {
  TensorT<T> input;   // [t x b x d]
  TensorT<T> gates;   // [t x b x 4h] post-nonlinearity (i, f, g, o)
  TensorT<T> cell;    // [t x b x h]
  TensorT<T> hidden;  // [t x b x h]
};

template <typename T>
TensorT<T> lstm_forward(const LstmParams<T>& p, const TensorT<T>& input, LstmCache<T>* cache);

template <typename T>
struct LstmGrads {
  TensorT<T> w_input, w_recurrent, bias, input;
};

template <typename T>
LstmGrads<T> lstm_backward(const LstmParams<T>& p, const LstmCache<T>& cache,
                           const TensorT<T>& grad_hidden_seq);

// ---------- 1-D convolution over time (baseline) ----------

template <typename T>
struct Conv1dParams {
  TensorT<T> weights;  // [kernel x c_in x c_out]
  TensorT<T> bias;     // [c_out]

  std::size_t kernel_len() const { return weights.dim(0); }
  std::size_t c_in() const { return weights.dim(1); }
  std::size_t c_out() const { return weights.dim(2); }
};

template <typename T>
struct Conv1dCache {
  TensorT<T> input;  // [t x b x c_in]
};

template <typename T>
TensorT<T> conv1d_apply(const Conv1dParams<T>& p, const TensorT<T>& seq, Conv1dCache<T>* cache);

template <typename T>
struct Conv1dGrads {
  TensorT<T> weights, bias, input;
};

template <typename T>
Conv1dGrads<T> conv1d_backward(const Conv1dParams<T>& p, const Conv1dCache<T>& cache,
                               const TensorT<T>& grad_out);

// ---------- parameter initialization ----------

template <typename T>
TensorT<T> init_uniform(SeededRng& rng, std::vector<std::size_t> shape, double lo, double hi);

// zero-mean normal with variance 2 / fan_in
template <typename T>
TensorT<T> init_he(SeededRng& rng, std::vector<std::size_t> shape, std::size_t fan_in);

}  // namespace ieeg
