#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ieeg {

inline std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

// Dense row-major n-dimensional array. Training runs in float; a double
// instantiation exists for the finite-difference gradient suites.
template <typename T>
class TensorT {
 public:
  TensorT() = default;

  explicit TensorT(std::vector<std::size_t> shape)
      : shape_(std::move(shape)), data_(checked_count(shape_), T(0)) {}

  TensorT(std::vector<std::size_t> shape, std::vector<T> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != checked_count(shape_)) {
      throw std::invalid_argument("tensor: data length " + std::to_string(data_.size()) +
                                  " does not match shape " + shape_string(shape_));
    }
  }

  static TensorT zeros(std::vector<std::size_t> shape) { return TensorT(std::move(shape)); }

  static TensorT full(std::vector<std::size_t> shape, T value) {
    TensorT t(std::move(shape));
    for (auto& v : t.data_) v = value;
    return t;
  }

  static TensorT identity(std::size_t n) {
    TensorT t({n, n});
    for (std::size_t i = 0; i < n; ++i) t.data_[i * n + i] = T(1);
    return t;
  }

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t dim(std::size_t i) const { return shape_.at(i); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& flat() { return data_; }
  const std::vector<T>& flat() const { return data_; }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  T& at2(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  const T& at2(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }
  T& at3(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  const T& at3(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }

  // Same elements, new shape. Element count must not change.
  TensorT reshaped(std::vector<std::size_t> shape) const& {
    check_reshape(shape);
    return TensorT(std::move(shape), data_);
  }
  TensorT reshaped(std::vector<std::size_t> shape) && {
    check_reshape(shape);
    return TensorT(std::move(shape), std::move(data_));
  }

  bool same_shape(const TensorT& o) const { return shape_ == o.shape_; }

  friend bool operator==(const TensorT& a, const TensorT& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

 private:
  static std::size_t checked_count(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (std::size_t d : shape) {
      if (d == 0) throw std::invalid_argument("tensor: zero dimension in shape " + shape_string(shape));
      n *= d;
    }
    return n;
  }

  void check_reshape(const std::vector<std::size_t>& shape) const {
    if (checked_count(shape) != data_.size()) {
      throw std::invalid_argument("tensor: reshape " + shape_string(shape_) + " -> " +
                                  shape_string(shape) + " changes element count");
    }
  }

  std::vector<std::size_t> shape_;
  std::vector<T> data_;
};

using Tensor = TensorT<float>;
using Tensor64 = TensorT<double>;

}  // namespace ieeg
