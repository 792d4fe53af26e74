#include "ieeg/layers.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kernel_detail.hpp"

namespace ieeg {

using kern::detail::act_deriv_one;
using kern::detail::act_one;
using idx = std::ptrdiff_t;

namespace {

void check_seq3(const char* who, const std::vector<std::size_t>& shape) {
  if (shape.size() != 3) {
    throw std::invalid_argument(std::string(who) + ": expected [t x b x f] input, got " +
                                shape_string(shape));
  }
}

}  // namespace

// ---------- IndRNN ----------

template <typename T>
TensorT<T> indrnn_forward(const IndRnnParams<T>& p, const TensorT<T>& input,
                          const TensorT<T>& h0, IndRnnCache<T>* cache) {
  check_seq3("indrnn_forward", input.shape());
  const std::size_t t = input.dim(0), b = input.dim(1), d = input.dim(2);
  const std::size_t h = p.hidden();
  if (d != p.input_dim()) {
    throw std::invalid_argument("indrnn_forward: input feature dim " + std::to_string(d) +
                                " does not match weights " + shape_string(p.input_weights.shape()));
  }
  if (h0.rank() != 2 || h0.dim(0) != b || h0.dim(1) != h) {
    throw std::invalid_argument("indrnn_forward: h0 shape " + shape_string(h0.shape()) +
                                " does not match [b x h] = [" + std::to_string(b) + "x" +
                                std::to_string(h) + "]");
  }

  // one big input projection, then the cheap elementwise recurrence
  TensorT<T> xw({t * b, h});
  kern::matmul(input.data(), p.input_weights.data(), xw.data(), t * b, d, h);

  TensorT<T> pre({t, b, h});
  TensorT<T> hidden({t, b, h});
  const T* u = p.recurrent_weights.data();
  const T* bias = p.bias.data();
  const T* hprev = h0.data();
  for (std::size_t ti = 0; ti < t; ++ti) {
    const T* xw_t = xw.data() + ti * b * h;
    T* pre_t = pre.data() + ti * b * h;
    T* hid_t = hidden.data() + ti * b * h;
#pragma omp parallel for schedule(static) if (b * h > 32768)
    for (idx i = 0; i < static_cast<idx>(b * h); ++i) {
      const std::size_t hi = static_cast<std::size_t>(i) % h;
      T v = xw_t[i] + u[hi] * hprev[i] + bias[hi];
      pre_t[i] = v;
      hid_t[i] = act_one(p.act, p.act_alpha, v);
    }
    hprev = hid_t;
  }

  if (cache) {
    cache->input = input;
    cache->pre = pre;
    cache->hidden = hidden;
    cache->h0 = h0;
  }
  return hidden;
}

template <typename T>
IndRnnGrads<T> indrnn_backward(const IndRnnParams<T>& p, const IndRnnCache<T>& cache,
                               const TensorT<T>& grad_hidden_seq) {
  const auto& shape = cache.hidden.shape();
  if (grad_hidden_seq.shape() != shape) {
    throw std::invalid_argument("indrnn_backward: upstream gradient shape " +
                                shape_string(grad_hidden_seq.shape()) + " does not match cache " +
                                shape_string(shape));
  }
  const std::size_t t = shape[0], b = shape[1], h = shape[2];
  const std::size_t d = p.input_dim();

  const T* u = p.recurrent_weights.data();
  TensorT<T> dpre({t, b, h});
  std::vector<T> carry(b * h, T(0));  // u .* dpre_{t+1}
  for (std::size_t ti = t; ti-- > 0;) {
    const T* g_t = grad_hidden_seq.data() + ti * b * h;
    const T* pre_t = cache.pre.data() + ti * b * h;
    T* dpre_t = dpre.data() + ti * b * h;
#pragma omp parallel for schedule(static) if (b * h > 32768)
    for (idx i = 0; i < static_cast<idx>(b * h); ++i) {
      const std::size_t hi = static_cast<std::size_t>(i) % h;
      T dh = g_t[i] + carry[i];
      T dp = dh * act_deriv_one(p.act, p.act_alpha, pre_t[i]);
      dpre_t[i] = dp;
      carry[i] = u[hi] * dp;
    }
  }

  IndRnnGrads<T> g;
  g.bias = TensorT<T>({h});
  g.recurrent_weights = TensorT<T>({h});
  T* gb = g.bias.data();
  T* gu = g.recurrent_weights.data();
#pragma omp parallel for schedule(static) if (t * b * h > 32768)
  for (idx hi = 0; hi < static_cast<idx>(h); ++hi) {
    T acc_b = T(0);
    T acc_u = T(0);
    for (std::size_t ti = 0; ti < t; ++ti) {
      const T* dpre_t = dpre.data() + ti * b * h;
      const T* hprev = ti == 0 ? cache.h0.data() : cache.hidden.data() + (ti - 1) * b * h;
      for (std::size_t bi = 0; bi < b; ++bi) {
        acc_b += dpre_t[bi * h + hi];
        acc_u += dpre_t[bi * h + hi] * hprev[bi * h + hi];
      }
    }
    gb[hi] = acc_b;
    gu[hi] = acc_u;
  }

  g.input_weights = TensorT<T>({d, h});
  kern::matmul_tn(cache.input.data(), dpre.data(), g.input_weights.data(), d, t * b, h);
  g.input = TensorT<T>({t, b, d});
  kern::matmul_nt(dpre.data(), p.input_weights.data(), g.input.data(), t * b, h, d);
  return g;
}

// ---------- batch normalization ----------

template <typename T>
TensorT<T> batchnorm_apply(BatchNormState<T>& st, const TensorT<T>& seq, Mode mode,
                           BatchNormCache<T>* cache) {
  if (seq.rank() < 2) {
    throw std::invalid_argument("batchnorm: expected rank >= 2 input, got " +
                                shape_string(seq.shape()));
  }
  const std::size_t f = seq.shape().back();
  const std::size_t rows = seq.size() / f;
  if (f != st.gamma.size()) {
    throw std::invalid_argument("batchnorm: feature dim " + std::to_string(f) +
                                " does not match state " + std::to_string(st.gamma.size()));
  }

  TensorT<T> mean({f}), var({f});
  if (mode == Mode::train) {
    if (rows < 2) {
      throw std::invalid_argument("batchnorm: train mode needs at least 2 samples per feature");
    }
    kern::feature_moments(seq.data(), mean.data(), var.data(), rows, f);
    for (std::size_t j = 0; j < f; ++j) {
      st.running_mean[j] = st.momentum * st.running_mean[j] + (T(1) - st.momentum) * mean[j];
      st.running_var[j] = st.momentum * st.running_var[j] + (T(1) - st.momentum) * var[j];
    }
    st.initialized = true;
  } else {
    if (!st.initialized) {
      throw std::runtime_error(
          "batchnorm: eval mode before any train-mode call and no loaded running statistics");
    }
    mean = st.running_mean;
    var = st.running_var;
  }

  TensorT<T> inv_std({f}), neg_mean({f}), ones = TensorT<T>::full({f}, T(1));
  for (std::size_t j = 0; j < f; ++j) {
    inv_std[j] = T(1) / std::sqrt(var[j] + st.eps);
    neg_mean[j] = -mean[j];
  }

  // center first so a constant input maps to exactly zero
  TensorT<T> xhat(seq.shape());
  kern::feature_affine(seq.data(), ones.data(), neg_mean.data(), xhat.data(), rows, f);
  TensorT<T> zeros({f});
  kern::feature_affine(xhat.data(), inv_std.data(), zeros.data(), xhat.data(), rows, f);

  TensorT<T> out(seq.shape());
  kern::feature_affine(xhat.data(), st.gamma.data(), st.beta.data(), out.data(), rows, f);

  if (cache) {
    cache->xhat = std::move(xhat);
    cache->mean = std::move(mean);
    cache->var = std::move(var);
    cache->in_shape = seq.shape();
  }
  return out;
}

template <typename T>
BatchNormGrads<T> batchnorm_backward(const BatchNormState<T>& st, const BatchNormCache<T>& cache,
                                     const TensorT<T>& grad_out) {
  if (grad_out.shape() != cache.in_shape) {
    throw std::invalid_argument("batchnorm_backward: gradient shape " +
                                shape_string(grad_out.shape()) + " does not match cache " +
                                shape_string(cache.in_shape));
  }
  const std::size_t f = cache.mean.size();
  const std::size_t rows = grad_out.size() / f;
  const T n = static_cast<T>(rows);

  BatchNormGrads<T> g;
  g.gamma = TensorT<T>({f});
  g.beta = TensorT<T>({f});
  g.input = TensorT<T>(cache.in_shape);

  const T* go = grad_out.data();
  const T* xh = cache.xhat.data();
#pragma omp parallel for schedule(static) if (rows * f > 32768)
  for (idx j = 0; j < static_cast<idx>(f); ++j) {
    T sum_g = T(0), sum_gx = T(0);
    for (std::size_t r = 0; r < rows; ++r) {
      sum_g += go[r * f + j];
      sum_gx += go[r * f + j] * xh[r * f + j];
    }
    g.beta[j] = sum_g;
    g.gamma[j] = sum_gx;
    const T inv_std = T(1) / std::sqrt(cache.var[j] + st.eps);
    const T gamma = st.gamma[j];
    T* gi = g.input.data();
    for (std::size_t r = 0; r < rows; ++r) {
      const T dxhat = go[r * f + j] * gamma;
      gi[r * f + j] = inv_std * (dxhat - sum_g * gamma / n - xh[r * f + j] * sum_gx * gamma / n);
    }
  }
  return g;
}

// ---------- pooling ----------

template <typename T>
TensorT<T> maxpool_time(const TensorT<T>& seq, std::size_t window, std::size_t stride,
                        MaxPoolCache* cache) {
  check_seq3("maxpool_time", seq.shape());
  if (window == 0 || stride == 0) {
    throw std::invalid_argument("maxpool_time: window and stride must be positive");
  }
  const std::size_t t = seq.dim(0), b = seq.dim(1), f = seq.dim(2);
  const std::size_t t_out = kern::pooled_len(t, stride);
  TensorT<T> out({t_out, b, f});
  std::vector<std::size_t> argmax(t_out * b * f);
  kern::maxpool_time_forward(seq.data(), out.data(), argmax.data(), t, b, f, window, stride);
  if (cache) {
    cache->argmax = std::move(argmax);
    cache->t_in = t;
    cache->t_out = t_out;
    cache->b = b;
    cache->f = f;
  }
  return out;
}

template <typename T>
TensorT<T> maxpool_time_grad(const MaxPoolCache& cache, const TensorT<T>& grad_out) {
  if (grad_out.rank() != 3 || grad_out.dim(0) != cache.t_out || grad_out.dim(1) != cache.b ||
      grad_out.dim(2) != cache.f) {
    throw std::invalid_argument("maxpool_time_grad: gradient shape " +
                                shape_string(grad_out.shape()) + " does not match cache");
  }
  TensorT<T> gin({cache.t_in, cache.b, cache.f});
  kern::maxpool_time_backward(grad_out.data(), cache.argmax.data(), gin.data(), cache.t_in,
                              cache.t_out, cache.b, cache.f);
  return gin;
}

template <typename T>
TensorT<T> avgpool_time(const TensorT<T>& seq) {
  check_seq3("avgpool_time", seq.shape());
  TensorT<T> out({seq.dim(1), seq.dim(2)});
  kern::avgpool_time_forward(seq.data(), out.data(), seq.dim(0), seq.dim(1), seq.dim(2));
  return out;
}

template <typename T>
TensorT<T> avgpool_time_grad(std::size_t t, const TensorT<T>& grad_out) {
  if (grad_out.rank() != 2) {
    throw std::invalid_argument("avgpool_time_grad: expected [b x f] gradient");
  }
  TensorT<T> gin({t, grad_out.dim(0), grad_out.dim(1)});
  kern::avgpool_time_backward(grad_out.data(), gin.data(), t, grad_out.dim(0), grad_out.dim(1));
  return gin;
}

// ---------- fully connected ----------

template <typename T>
TensorT<T> fc_apply(const FcParams<T>& p, const TensorT<T>& x, FcCache<T>* cache) {
  if (x.rank() != 2 || x.dim(1) != p.weights.dim(0)) {
    throw std::invalid_argument("fc_apply: input " + shape_string(x.shape()) +
                                " does not match weights " + shape_string(p.weights.shape()));
  }
  const std::size_t n = x.dim(0), out_dim = p.weights.dim(1);
  TensorT<T> pre({n, out_dim});
  kern::matmul(x.data(), p.weights.data(), pre.data(), n, x.dim(1), out_dim);
  const T* bias = p.bias.data();
#pragma omp parallel for schedule(static) if (n * out_dim > 32768)
  for (idx r = 0; r < static_cast<idx>(n); ++r) {
    for (std::size_t o = 0; o < out_dim; ++o) pre.data()[r * out_dim + o] += bias[o];
  }
  TensorT<T> y(pre.shape());
  kern::activation_forward(p.act, p.act_alpha, pre.data(), y.data(), pre.size());
  if (cache) {
    cache->input = x;
    cache->pre = std::move(pre);
  }
  return y;
}

template <typename T>
FcGrads<T> fc_backward(const FcParams<T>& p, const FcCache<T>& cache, const TensorT<T>& grad_out) {
  if (grad_out.shape() != cache.pre.shape()) {
    throw std::invalid_argument("fc_backward: gradient shape " + shape_string(grad_out.shape()) +
                                " does not match cache " + shape_string(cache.pre.shape()));
  }
  const std::size_t n = cache.input.dim(0), in_dim = cache.input.dim(1),
                    out_dim = cache.pre.dim(1);
  TensorT<T> dpre(grad_out.shape());
  kern::activation_backward(p.act, p.act_alpha, cache.pre.data(), grad_out.data(), dpre.data(),
                            dpre.size());
  FcGrads<T> g;
  g.weights = TensorT<T>({in_dim, out_dim});
  kern::matmul_tn(cache.input.data(), dpre.data(), g.weights.data(), in_dim, n, out_dim);
  g.bias = TensorT<T>({out_dim});
#pragma omp parallel for schedule(static) if (n * out_dim > 32768)
  for (idx o = 0; o < static_cast<idx>(out_dim); ++o) {
    T acc = T(0);
    for (std::size_t r = 0; r < n; ++r) acc += dpre.data()[r * out_dim + o];
    g.bias[o] = acc;
  }
  g.input = TensorT<T>({n, in_dim});
  kern::matmul_nt(dpre.data(), p.weights.data(), g.input.data(), n, out_dim, in_dim);
  return g;
}

// ---------- LSTM ----------

template <typename T>
TensorT<T> lstm_forward(const LstmParams<T>& p, const TensorT<T>& input, LstmCache<T>* cache) {
  check_seq3("lstm_forward", input.shape());
  const std::size_t t = input.dim(0), b = input.dim(1), d = input.dim(2);
  const std::size_t h = p.hidden();
  if (d != p.input_dim() || p.w_input.dim(1) != 4 * h || p.bias.size() != 4 * h) {
    throw std::invalid_argument("lstm_forward: parameter shapes inconsistent with input " +
                                shape_string(input.shape()));
  }

  TensorT<T> xw({t * b, 4 * h});
  kern::matmul(input.data(), p.w_input.data(), xw.data(), t * b, d, 4 * h);

  TensorT<T> gates({t, b, 4 * h});
  TensorT<T> cell({t, b, h});
  TensorT<T> hidden({t, b, h});
  std::vector<T> pre(b * 4 * h);
  std::vector<T> hprev(b * h, T(0)), cprev(b * h, T(0));
  for (std::size_t ti = 0; ti < t; ++ti) {
    kern::matmul(hprev.data(), p.w_recurrent.data(), pre.data(), b, h, 4 * h);
    const T* xw_t = xw.data() + ti * b * 4 * h;
    T* gate_t = gates.data() + ti * b * 4 * h;
    T* cell_t = cell.data() + ti * b * h;
    T* hid_t = hidden.data() + ti * b * h;
    for (std::size_t bi = 0; bi < b; ++bi) {
      for (std::size_t hi = 0; hi < h; ++hi) {
        const std::size_t gi = bi * 4 * h;
        const T pi = xw_t[gi + hi] + pre[gi + hi] + p.bias[hi];
        const T pf = xw_t[gi + h + hi] + pre[gi + h + hi] + p.bias[h + hi];
        const T pg = xw_t[gi + 2 * h + hi] + pre[gi + 2 * h + hi] + p.bias[2 * h + hi];
        const T po = xw_t[gi + 3 * h + hi] + pre[gi + 3 * h + hi] + p.bias[3 * h + hi];
        const T ig = T(1) / (T(1) + std::exp(-pi));
        const T fg = T(1) / (T(1) + std::exp(-pf));
        const T gg = std::tanh(pg);
        const T og = T(1) / (T(1) + std::exp(-po));
        const T c = fg * cprev[bi * h + hi] + ig * gg;
        gate_t[gi + hi] = ig;
        gate_t[gi + h + hi] = fg;
        gate_t[gi + 2 * h + hi] = gg;
        gate_t[gi + 3 * h + hi] = og;
        cell_t[bi * h + hi] = c;
        hid_t[bi * h + hi] = og * std::tanh(c);
      }
    }
    hprev.assign(hid_t, hid_t + b * h);
    cprev.assign(cell_t, cell_t + b * h);
  }

  if (cache) {
    cache->input = input;
    cache->gates = std::move(gates);
    cache->cell = std::move(cell);
    cache->hidden = hidden;
  }
  return hidden;
}

template <typename T>
LstmGrads<T> lstm_backward(const LstmParams<T>& p, const LstmCache<T>& cache,
                           const TensorT<T>& grad_hidden_seq) {
  if (grad_hidden_seq.shape() != cache.hidden.shape()) {
    throw std::invalid_argument("lstm_backward: gradient shape " +
                                shape_string(grad_hidden_seq.shape()) + " does not match cache " +
                                shape_string(cache.hidden.shape()));
  }
  const std::size_t t = cache.hidden.dim(0), b = cache.hidden.dim(1), h = cache.hidden.dim(2);
  const std::size_t d = p.input_dim();

  LstmGrads<T> g;
  g.w_recurrent = TensorT<T>({h, 4 * h});
  g.bias = TensorT<T>({4 * h});
  TensorT<T> dpre_all({t, b, 4 * h});
  std::vector<T> dh_carry(b * h, T(0)), dc_carry(b * h, T(0));

  for (std::size_t ti = t; ti-- > 0;) {
    const T* gate_t = cache.gates.data() + ti * b * 4 * h;
    const T* cell_t = cache.cell.data() + ti * b * h;
    const T* cprev = ti > 0 ? cache.cell.data() + (ti - 1) * b * h : nullptr;
    const T* g_t = grad_hidden_seq.data() + ti * b * h;
    T* dpre_t = dpre_all.data() + ti * b * 4 * h;
    for (std::size_t bi = 0; bi < b; ++bi) {
      for (std::size_t hi = 0; hi < h; ++hi) {
        const std::size_t gi = bi * 4 * h;
        const std::size_t ci = bi * h + hi;
        const T ig = gate_t[gi + hi];
        const T fg = gate_t[gi + h + hi];
        const T gg = gate_t[gi + 2 * h + hi];
        const T og = gate_t[gi + 3 * h + hi];
        const T tc = std::tanh(cell_t[ci]);
        const T dh = g_t[ci] + dh_carry[ci];
        const T dc = dh * og * (T(1) - tc * tc) + dc_carry[ci];
        const T cp = cprev ? cprev[ci] : T(0);
        dpre_t[gi + hi] = dc * gg * ig * (T(1) - ig);
        dpre_t[gi + h + hi] = dc * cp * fg * (T(1) - fg);
        dpre_t[gi + 2 * h + hi] = dc * ig * (T(1) - gg * gg);
        dpre_t[gi + 3 * h + hi] = dh * tc * og * (T(1) - og);
        dc_carry[ci] = dc * fg;
      }
    }
    // dh_{t-1} through the recurrent weights
    kern::matmul_nt(dpre_t, p.w_recurrent.data(), dh_carry.data(), b, 4 * h, h);
    if (ti > 0) {
      const T* hprev = cache.hidden.data() + (ti - 1) * b * h;
      kern::matmul_tn(hprev, dpre_t, g.w_recurrent.data(), h, b, 4 * h, true);
    }
  }

  for (std::size_t j = 0; j < 4 * h; ++j) {
    T acc = T(0);
    for (std::size_t r = 0; r < t * b; ++r) acc += dpre_all.data()[r * 4 * h + j];
    g.bias[j] = acc;
  }
  g.w_input = TensorT<T>({d, 4 * h});
  kern::matmul_tn(cache.input.data(), dpre_all.data(), g.w_input.data(), d, t * b, 4 * h);
  g.input = TensorT<T>({t, b, d});
  kern::matmul_nt(dpre_all.data(), p.w_input.data(), g.input.data(), t * b, 4 * h, d);
  return g;
}

// ---------- conv1d ----------

template <typename T>
TensorT<T> conv1d_apply(const Conv1dParams<T>& p, const TensorT<T>& seq, Conv1dCache<T>* cache) {
  check_seq3("conv1d_apply", seq.shape());
  if (seq.dim(2) != p.c_in()) {
    throw std::invalid_argument("conv1d_apply: input channels " + std::to_string(seq.dim(2)) +
                                " do not match weights " + shape_string(p.weights.shape()));
  }
  if (p.kernel_len() % 2 == 0) {
    throw std::invalid_argument("conv1d_apply: kernel length must be odd for same padding");
  }
  TensorT<T> out({seq.dim(0), seq.dim(1), p.c_out()});
  kern::conv1d_forward(seq.data(), p.weights.data(), p.bias.data(), out.data(), seq.dim(0),
                       seq.dim(1), p.c_in(), p.c_out(), p.kernel_len());
  if (cache) cache->input = seq;
  return out;
}

template <typename T>
Conv1dGrads<T> conv1d_backward(const Conv1dParams<T>& p, const Conv1dCache<T>& cache,
                               const TensorT<T>& grad_out) {
  const std::size_t t = cache.input.dim(0), b = cache.input.dim(1);
  if (grad_out.rank() != 3 || grad_out.dim(0) != t || grad_out.dim(1) != b ||
      grad_out.dim(2) != p.c_out()) {
    throw std::invalid_argument("conv1d_backward: gradient shape " +
                                shape_string(grad_out.shape()) + " does not match");
  }
  Conv1dGrads<T> g;
  g.weights = TensorT<T>(p.weights.shape());
  g.bias = TensorT<T>({p.c_out()});
  g.input = TensorT<T>(cache.input.shape());
  kern::conv1d_backward_params(cache.input.data(), grad_out.data(), g.weights.data(),
                               g.bias.data(), t, b, p.c_in(), p.c_out(), p.kernel_len());
  kern::conv1d_backward_input(grad_out.data(), p.weights.data(), g.input.data(), t, b, p.c_in(),
                              p.c_out(), p.kernel_len());
  return g;
}

// ---------- initialization ----------

template <typename T>
TensorT<T> init_uniform(SeededRng& rng, std::vector<std::size_t> shape, double lo, double hi) {
  if (lo > hi) {
    throw std::invalid_argument("init_uniform: lo > hi");
  }
  TensorT<T> t(std::move(shape));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<T>(rng.uniform(lo, hi));
  return t;
}

template <typename T>
TensorT<T> init_he(SeededRng& rng, std::vector<std::size_t> shape, std::size_t fan_in) {
  if (fan_in == 0) {
    throw std::invalid_argument("init_he: fan_in must be positive");
  }
  const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in));
  TensorT<T> t(std::move(shape));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<T>(rng.normal() * stddev);
  return t;
}

#define IEEG_INSTANTIATE_LAYERS(T)                                                              \
  template TensorT<T> indrnn_forward<T>(const IndRnnParams<T>&, const TensorT<T>&,              \
                                        const TensorT<T>&, IndRnnCache<T>*);                    \
  template IndRnnGrads<T> indrnn_backward<T>(const IndRnnParams<T>&, const IndRnnCache<T>&,     \
                                             const TensorT<T>&);                                \
  template TensorT<T> batchnorm_apply<T>(BatchNormState<T>&, const TensorT<T>&, Mode,           \
                                         BatchNormCache<T>*);                                   \
  template BatchNormGrads<T> batchnorm_backward<T>(const BatchNormState<T>&,                    \
                                                   const BatchNormCache<T>&, const TensorT<T>&);\
  template TensorT<T> maxpool_time<T>(const TensorT<T>&, std::size_t, std::size_t,              \
                                      MaxPoolCache*);                                           \
  template TensorT<T> maxpool_time_grad<T>(const MaxPoolCache&, const TensorT<T>&);             \
  template TensorT<T> avgpool_time<T>(const TensorT<T>&);                                       \
  template TensorT<T> avgpool_time_grad<T>(std::size_t, const TensorT<T>&);                     \
  template TensorT<T> fc_apply<T>(const FcParams<T>&, const TensorT<T>&, FcCache<T>*);          \
  template FcGrads<T> fc_backward<T>(const FcParams<T>&, const FcCache<T>&, const TensorT<T>&); \
  template TensorT<T> lstm_forward<T>(const LstmParams<T>&, const TensorT<T>&, LstmCache<T>*);  \
  template LstmGrads<T> lstm_backward<T>(const LstmParams<T>&, const LstmCache<T>&,             \
                                         const TensorT<T>&);                                    \
  template TensorT<T> conv1d_apply<T>(const Conv1dParams<T>&, const TensorT<T>&,                \
                                      Conv1dCache<T>*);                                         \
  template Conv1dGrads<T> conv1d_backward<T>(const Conv1dParams<T>&, const Conv1dCache<T>&,     \
                                             const TensorT<T>&);                                \
  template TensorT<T> init_uniform<T>(SeededRng&, std::vector<std::size_t>, double, double);    \
  template TensorT<T> init_he<T>(SeededRng&, std::vector<std::size_t>, std::size_t);

IEEG_INSTANTIATE_LAYERS(float)
IEEG_INSTANTIATE_LAYERS(double)

}  // namespace ieeg
