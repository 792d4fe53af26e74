#pragma once

#include <cmath>

#include "ieeg/kernels.hpp"

namespace ieeg::kern::detail {

template <typename T>
inline T act_one(Activation kind, T alpha, T x) {
  switch (kind) {
    case Activation::identity: return x;
    case Activation::relu: return x > T(0) ? x : T(0);
    case Activation::leaky_relu: return x > T(0) ? x : alpha * x;
    case Activation::sigmoid: return T(1) / (T(1) + std::exp(-x));
    case Activation::tanh: return std::tanh(x);
  }
  return x;
}

// relu' pinned to 0 at x == 0, leaky_relu' to alpha (subgradient choice)
template <typename T>
inline T act_deriv_one(Activation kind, T alpha, T x) {
  switch (kind) {
    case Activation::identity: return T(1);
    case Activation::relu: return x > T(0) ? T(1) : T(0);
    case Activation::leaky_relu: return x > T(0) ? T(1) : alpha;
    case Activation::sigmoid: {
      T s = T(1) / (T(1) + std::exp(-x));
      return s * (T(1) - s);
    }
    case Activation::tanh: {
      T th = std::tanh(x);
      return T(1) - th * th;
    }
  }
  return T(1);
}

}  // namespace ieeg::kern::detail
