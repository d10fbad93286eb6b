#pragma once

#include <Eigen/Core>
#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "gadk/error.hpp"
#include "gadk/rng.hpp"

namespace gadk {

using Index = Eigen::Index;
using Shape = std::vector<Index>;
using Array = Eigen::ArrayXd;
using MatRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Index shape_numel(const Shape& s);
std::string shape_str(const Shape& s);

// One vertex of the computation tape. Values are flat row-major f64 buffers;
// grad stays empty until a backward pass touches the node.
struct Node {
  Shape shape;
  Array value;
  Array grad;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backprop;  // accumulates this node's grad into parents

  bool is_leaf() const { return parents.empty(); }
  void ensure_grad() {
    if (grad.size() != value.size()) grad = Array::Zero(value.size());
  }
};

// Value-semantic handle to a tape node; copies share the node.
class Tensor {
 public:
  Tensor() = default;
  Tensor(Shape shape, Array values, bool requires_grad = false);
  explicit Tensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  static Tensor zeros(const Shape& shape, bool requires_grad = false);
  static Tensor full(const Shape& shape, double v, bool requires_grad = false);
  static Tensor scalar(double v);
  static Tensor from(const Shape& shape, std::initializer_list<double> values,
                     bool requires_grad = false);
  static Tensor from_matrix(const MatRM& m, bool requires_grad = false);
  // seeded Gaussian, std given explicitly
  static Tensor randn(const Shape& shape, double stddev, Rng& rng, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  Index rank() const { return static_cast<Index>(node_->shape.size()); }
  Index dim(Index i) const { return node_->shape[static_cast<std::size_t>(i)]; }
  Index numel() const { return node_->value.size(); }
  bool requires_grad() const { return node_->requires_grad; }

  double item() const;
  double at(std::initializer_list<Index> idx) const;

  Array& value() { return node_->value; }
  const Array& value() const { return node_->value; }
  // nullptr when no backward pass has touched the node
  const Array* grad() const { return node_->grad.size() == node_->value.size() ? &node_->grad : nullptr; }
  Array& grad_ref() {
    node_->ensure_grad();
    return node_->grad;
  }
  void zero_grad() {
    if (node_->grad.size() > 0) node_->grad.setZero();
  }

  const std::shared_ptr<Node>& node() const { return node_; }

  // rank-2 views of the flat buffer
  Eigen::Map<const MatRM> matrix() const;
  Eigen::Map<MatRM> matrix();

 private:
  std::shared_ptr<Node> node_;
};

// Escape hatch for domain-specific ops (graph aggregation, masked softmax):
// the value is computed by the caller, the closure accumulates out.grad into
// the parents that require grad.
Tensor make_op(Shape shape, Array value, std::vector<Tensor> parents,
               std::function<void(Node&)> backprop);

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);

// elementwise, with the lower-rank operand broadcast over leading axes
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double c);

inline Tensor operator+(const Tensor& a, const Tensor& b) { return add(a, b); }
inline Tensor operator-(const Tensor& a, const Tensor& b) { return sub(a, b); }
inline Tensor operator*(const Tensor& a, const Tensor& b) { return mul(a, b); }
inline Tensor operator*(const Tensor& a, double c) { return scale(a, c); }
inline Tensor operator*(double c, const Tensor& a) { return scale(a, c); }

Tensor silu(const Tensor& x);
Tensor relu(const Tensor& x);

// numerically stabilized by max-subtraction; slices along axis sum to 1
Tensor softmax(const Tensor& x, Index axis);

Tensor concat(const Tensor& a, const Tensor& b, Index axis);
Tensor mean(const Tensor& x, Index axis);  // reduces and drops the axis
Tensor sum(const Tensor& x);               // full reduction to a scalar

// normalizes the last axis; gamma/beta are rank-1 of that length
Tensor layernorm(const Tensor& x, const Tensor& gamma, const Tensor& beta, double eps = 1e-5);

Tensor gather_rows(const Tensor& x, std::vector<Index> rows);
Tensor slice_cols(const Tensor& x, Index start, Index count);

inline constexpr double kCrossEntropyFloor = 1e-12;

// -ln(max(p[target], floor)); p must be a distribution (sum within 1e-9 of 1)
Tensor cross_entropy_from_probs(const Tensor& p, Index target);

enum class Reduction { Sum, Mean };
Tensor cross_entropy_rows(const Tensor& p, const std::vector<Index>& targets, Reduction red);

// Reverse-mode sweep from a scalar loss. Grads of interior nodes are reset at
// entry; leaf grads accumulate across calls until explicitly zeroed.
void backward(const Tensor& loss);

}  // namespace gadk
