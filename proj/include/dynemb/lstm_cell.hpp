#pragma once

#include <string>
#include <utility>

#include "dynemb/error.hpp"
#include "dynemb/linalg.hpp"

namespace dynemb {

enum class Gate : int { Input = 0, Forget = 1, Output = 2, Cell = 3 };

// Weights of one LSTM layer. The four gate matrices W_i, W_f, W_o, W_c are
// stacked (in Gate order) into one (4h x (h + in)) matrix acting on the
// concatenation [h_{t-1}, x_t].
template <typename T>
struct LstmParams {
  MatT<T> weights;
  VecT<T> bias;

  static LstmParams zeros(Eigen::Index hidden, Eigen::Index input) {
    return {MatT<T>::Zero(4 * hidden, hidden + input), VecT<T>::Zero(4 * hidden)};
  }

  Eigen::Index hidden_dim() const { return weights.rows() / 4; }
  Eigen::Index input_dim() const { return weights.cols() - hidden_dim(); }

  auto gate_weights(Gate g) { return weights.middleRows(static_cast<int>(g) * hidden_dim(), hidden_dim()); }
  auto gate_weights(Gate g) const { return weights.middleRows(static_cast<int>(g) * hidden_dim(), hidden_dim()); }
  auto gate_bias(Gate g) { return bias.segment(static_cast<int>(g) * hidden_dim(), hidden_dim()); }
  auto gate_bias(Gate g) const { return bias.segment(static_cast<int>(g) * hidden_dim(), hidden_dim()); }

  template <typename F>
  void for_each_block(F&& f) {
    f(weights.data(), weights.size());
    f(bias.data(), bias.size());
  }
  template <typename F>
  void for_each_block(F&& f) const {
    f(weights.data(), weights.size());
    f(bias.data(), bias.size());
  }
};

// Everything one forward step produces that the backward step needs.
template <typename T>
struct LstmStepCache {
  VecT<T> input;  // [h_prev, x]
  VecT<T> c_prev;
  VecT<T> gates;  // activated i, f, o, c~ stacked like the weights
  VecT<T> c;
  VecT<T> tanh_c;
  VecT<T> h;
};

template <typename T>
void lstm_forward(const LstmParams<T>& p, const Eigen::Ref<const VecT<T>>& h_prev,
                  const Eigen::Ref<const VecT<T>>& c_prev, const Eigen::Ref<const VecT<T>>& x,
                  LstmStepCache<T>& cache) {
  const Eigen::Index h = p.hidden_dim();
  if (h_prev.size() != h || c_prev.size() != h || x.size() != p.input_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "lstm step expects h/c of size " + std::to_string(h) + " and x of size " +
                    std::to_string(p.input_dim()));
  }
  cache.input.resize(h + x.size());
  cache.input.head(h) = h_prev;
  cache.input.tail(x.size()) = x;
  cache.c_prev = c_prev;
  cache.gates.resize(4 * h);
  cache.gates.noalias() = p.weights * cache.input;
  cache.gates += p.bias;
  auto sig = cache.gates.head(3 * h);
  sig = sigmoid(sig).eval();
  auto cand = cache.gates.tail(h);
  cand = cand.array().tanh().matrix().eval();
  const auto i = cache.gates.segment(0, h).array();
  const auto f = cache.gates.segment(h, h).array();
  const auto o = cache.gates.segment(2 * h, h).array();
  const auto g = cache.gates.segment(3 * h, h).array();
  cache.c = (f * c_prev.array() + i * g).matrix();
  cache.tanh_c = cache.c.array().tanh().matrix();
  cache.h = (o * cache.tanh_c.array()).matrix();
}

// One step of the six LSTM equations:
//   i = s(W_i[h,x] + b_i), f = s(W_f[h,x] + b_f), o = s(W_o[h,x] + b_o),
//   c~ = tanh(W_c[h,x] + b_c), c = f*c_prev + i*c~, h = o*tanh(c).
template <typename T>
std::pair<VecT<T>, VecT<T>> lstm_step(const LstmParams<T>& p, const Eigen::Ref<const VecT<T>>& h_prev,
                                      const Eigen::Ref<const VecT<T>>& c_prev,
                                      const Eigen::Ref<const VecT<T>>& x) {
  LstmStepCache<T> cache;
  lstm_forward(p, h_prev, c_prev, x, cache);
  return {std::move(cache.h), std::move(cache.c)};
}

// Test hook: drop one term of the backward pass so gradient checks can prove
// they detect a broken derivative.
enum class BackpropMutation { None, DropCellCarry };

// Backward through one step. `dh`, `dc` are the gradients arriving at this
// step's outputs; accumulates parameter gradients into `grad` and writes the
// gradients for h_prev, c_prev and x.
template <typename T>
void lstm_backward(const LstmParams<T>& p, const LstmStepCache<T>& cache,
                   const Eigen::Ref<const VecT<T>>& dh, const Eigen::Ref<const VecT<T>>& dc,
                   LstmParams<T>& grad, VecT<T>& dh_prev, VecT<T>& dc_prev, VecT<T>& dx,
                   VecT<T>& scratch, BackpropMutation mutation = BackpropMutation::None) {
  const Eigen::Index h = p.hidden_dim();
  const auto i = cache.gates.segment(0, h).array();
  const auto f = cache.gates.segment(h, h).array();
  const auto o = cache.gates.segment(2 * h, h).array();
  const auto g = cache.gates.segment(3 * h, h).array();
  const auto tc = cache.tanh_c.array();

  VecT<T> dc_total = (dc.array() + dh.array() * o * (T(1) - tc * tc)).matrix();
  scratch.resize(4 * h);
  scratch.segment(0, h) = (dc_total.array() * g * i * (T(1) - i)).matrix();
  scratch.segment(h, h) = (dc_total.array() * cache.c_prev.array() * f * (T(1) - f)).matrix();
  scratch.segment(2 * h, h) = (dh.array() * tc * o * (T(1) - o)).matrix();
  scratch.segment(3 * h, h) = (dc_total.array() * i * (T(1) - g * g)).matrix();

  grad.weights.noalias() += scratch * cache.input.transpose();
  grad.bias += scratch;
  VecT<T> d_input = p.weights.transpose() * scratch;
  dh_prev = d_input.head(h);
  dx = d_input.tail(d_input.size() - h);
  if (mutation == BackpropMutation::DropCellCarry) {
    dc_prev = VecT<T>::Zero(h);
  } else {
    dc_prev = (dc_total.array() * f).matrix();
  }
}

}  // namespace dynemb
