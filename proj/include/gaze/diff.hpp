#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace gaze::diff {

// Flat 64-bit tensor storage shared by value handles. When a value
// participates in gradient computation its grad buffer has the same length
// as data and accumulates contributions during backward passes.
struct Storage {
  std::vector<double> data;
  std::vector<double> grad;
  bool requires_grad = false;
};

class Tape;

// Tensor-like value with value semantics over shared storage. Operations on
// values record themselves on the active tape whenever any input requires
// gradients; evaluated with no active tape they are plain forward arithmetic.
class Value {
 public:
  Value() = default;
  Value(std::vector<int> shape, std::vector<double> data);

  static Value zeros(std::vector<int> shape);
  static Value full(std::vector<int> shape, double v);
  static Value scalar(double v);
  // Leaf parameter: gradient buffer allocated and kept across tape clears.
  static Value param(std::vector<int> shape, std::vector<double> data);

  bool defined() const { return s_ != nullptr; }
  const std::vector<int>& shape() const { return shape_; }
  std::size_t size() const { return s_ ? s_->data.size() : 0; }
  double item() const;

  std::vector<double>& data() { return s_->data; }
  const std::vector<double>& data() const { return s_->data; }
  const std::vector<double>& grad() const;
  void zero_grad();
  bool requires_grad() const { return s_ && s_->requires_grad; }

  // Used by operation implementations (including external differentiable
  // ops such as the fovea) to mark an output as gradient-carrying.
  void enable_grad();
  const std::shared_ptr<Storage>& storage() const { return s_; }

 private:
  std::shared_ptr<Storage> s_;
  std::vector<int> shape_;
};

// Wengert list: operations append themselves in execution order, so reverse
// iteration is reverse topological order. One tape is active per thread.
class Tape {
 public:
  void record(std::function<void()> backward_fn) { nodes_.push_back(std::move(backward_fn)); }
  void clear() { nodes_.clear(); }
  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }

  static Tape* active();

 private:
  friend class TapeScope;
  friend void backward(const Value&);
  std::vector<std::function<void()>> nodes_;
};

// RAII activation of a tape on the current thread.
class TapeScope {
 public:
  explicit TapeScope(Tape& tape);
  ~TapeScope();
  TapeScope(const TapeScope&) = delete;
  TapeScope& operator=(const TapeScope&) = delete;

 private:
  Tape* prev_;
};

// True when the active tape should record an op touching these inputs.
bool recording(std::initializer_list<const Value*> inputs);

// Runs the reverse pass from a scalar loss, accumulating gradients into
// every reachable grad buffer, then clears the tape.
void backward(const Value& loss);

// --- operator set ---

// Cross-correlation, kernel [C_out, C_in, k, k] over input [C_in, H, W].
Value conv2d(const Value& input, const Value& kernel, const Value& bias, int stride = 1,
             int padding = 0);

// weight [m, n] * input [n] + bias [m].
Value linear(const Value& input, const Value& weight, const Value& bias);

Value relu(const Value& x);
Value exp(const Value& x);
Value add(const Value& x, const Value& y);
Value sub(const Value& x, const Value& y);
Value mul(const Value& x, const Value& y);
Value scale(const Value& x, double c);
Value sum(const Value& x);
Value mse(const Value& x, const Value& y);
Value concat(const Value& a, const Value& b);  // along dim 0
Value flatten(const Value& x);

}  // namespace gaze::diff
