#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ieeg/layers.hpp"
#include "ieeg/rng.hpp"
#include "ieeg/tensor.hpp"

namespace ieeg {

enum class ModelKind : std::uint8_t { indrnn = 0, lstm = 1, cnn = 2 };

const char* model_kind_name(ModelKind k);
ModelKind model_kind_from_name(const std::string& name);

struct ModelConfig {
  ModelKind kind = ModelKind::indrnn;
  std::size_t input_channels = 17;
  std::size_t num_classes = 2;

  // indrnn stack
  std::vector<std::size_t> block_hidden_sizes;  // default: 128 x5, 200 x5, 250 x5
  std::size_t pool_window = 2;
  std::size_t pool_stride = 2;
  std::size_t fc1_hidden = 100;
  Activation fc1_act = Activation::relu;
  double recurrent_clip = 1.0;

  // lstm baseline
  std::size_t lstm_hidden = 120;
  std::size_t lstm_dense = 60;

  // cnn baseline
  std::vector<std::size_t> conv_channels = {100, 100, 200, 200, 260};
  std::size_t conv_kernel = 5;
  std::size_t cnn_fc1 = 100;
  std::size_t cnn_fc2 = 50;
  double leaky_alpha = 0.01;
};

// 128/200/250 in three contiguous groups, front-loaded when depth % 3 != 0
std::vector<std::size_t> indrnn_hidden_sizes_for_depth(std::size_t depth);

template <typename T>
struct ParamRef {
  std::string name;
  TensorT<T>* value = nullptr;
  TensorT<T>* grad = nullptr;  // null for state tensors
  T clip = T(0);               // > 0: clamp |value| after each optimizer step
};

template <typename T>
class Layer {
 public:
  virtual ~Layer() = default;
  virtual TensorT<T> forward(const TensorT<T>& x, Mode mode) = 0;
  virtual TensorT<T> backward(const TensorT<T>& grad_out) = 0;
  virtual void collect_params(std::vector<ParamRef<T>>& out) {}
  virtual void collect_state(std::vector<ParamRef<T>>& out) {}
  virtual void mark_stats_loaded() {}
  virtual std::string name() const = 0;
};

template <typename T>
class Model {
 public:
  ModelConfig config;
  std::vector<std::unique_ptr<Layer<T>>> layers;

  TensorT<T> forward(const TensorT<T>& input, Mode mode);
  TensorT<T> backward(const TensorT<T>& grad_logits);

  std::vector<ParamRef<T>> params();
  std::vector<ParamRef<T>> state();
  std::size_t param_count();
  void mark_stats_loaded();
};

// Stack of [IndRNN -> BatchNorm -> MaxPool] blocks, average pool over time,
// FC(fc1_hidden), FC(num_classes) logits head.
template <typename T>
Model<T> build_indrnn_model(const ModelConfig& config, SeededRng& rng);

// LSTM(120) -> per-step dense(60, relu) -> average pool -> FC(2) logits.
template <typename T>
Model<T> build_lstm_baseline(const ModelConfig& config, SeededRng& rng);

// Five [Conv1d -> LeakyReLU -> MaxPool] blocks -> average pool
// -> FC(100) -> FC(50) -> FC(2) logits.
template <typename T>
Model<T> build_cnn_baseline(const ModelConfig& config, SeededRng& rng);

template <typename T>
Model<T> build_model(const ModelConfig& config, SeededRng& rng);

// Checkpoint: magic, format version, config block, then parameter and state
// tensors in declaration order with shape headers. Bit-exact round trip.
template <typename T>
void save_model(Model<T>& model, const std::string& path);

template <typename T>
Model<T> load_model(const std::string& path);

}  // namespace ieeg
