#pragma once

#include <cmath>
#include <cstdint>
#include <type_traits>

#include <Eigen/Core>

namespace dynemb {

using Scalar = double;

template <typename T>
using VecT = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using MatT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Row-major so that a node's vector is a contiguous row.
using Vec = VecT<Scalar>;
using Mat = MatT<Scalar>;

using NodeId = std::int64_t;

template <typename Derived>
auto sigmoid(const Eigen::MatrixBase<Derived>& x) {
  using T = typename Derived::Scalar;
  return x.unaryExpr([](T v) { return T(1) / (T(1) + std::exp(-v)); });
}

template <typename T>
T sigmoid(T v) requires std::is_floating_point_v<T> {
  return T(1) / (T(1) + std::exp(-v));
}

// ln(1 + exp(x)) without overflow.
template <typename T>
T softplus(T x) {
  return x > T(0) ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace dynemb
