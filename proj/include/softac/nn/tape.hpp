#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "softac/nn/mlp.hpp"

namespace softac::nn {

class Tape;

/// Handle to a node on a Tape. Cheap to copy; valid while the tape lives.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}
  const Mat& value() const;
  const Mat& grad() const;
  int id() const { return id_; }
  Tape* tape() const { return tape_; }

 private:
  Tape* tape_ = nullptr;
  int id_ = -1;
};

/// Reverse-mode gradient tape over matrix-valued nodes. Column convention:
/// in batched expressions each column is one sample. Nodes only reference
/// earlier nodes, so creation order is a valid topological order and
/// backward() is a single reverse sweep.
///
/// Supported operations: affine layers, relu, tanh, exp, log, square,
/// clamp, elementwise +,-,*,/ and min of two values, scalar scale/shift,
/// row concatenation/slicing, per-column sums, sum and mean.
class Tape {
 public:
  Var leaf(const Mat& value);
  Var leaf(const Vec& value);  // stored as an n x 1 matrix

  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var cmul(Var a, Var b);
  Var cdiv(Var a, Var b);
  Var cmin(Var a, Var b);  // elementwise min; ties route the gradient to a
  Var matmul(Var a, Var b);
  /// w * x + b broadcast over columns; b must be a column vector node.
  Var affine(Var w, Var x, Var b);
  Var relu(Var a);
  Var tanh(Var a);
  Var exp(Var a);
  Var log(Var a);
  Var square(Var a);
  Var clamp(Var a, double lo, double hi);
  Var scale(Var a, double c);
  Var add_scalar(Var a, double c);
  Var neg(Var a) { return scale(a, -1.0); }
  /// m x n -> 1 x n, sums the entries of each column.
  Var sum_rows(Var a);
  Var concat_rows(Var a, Var b);
  Var slice_rows(Var a, int first_row, int rows);
  Var sum(Var a);
  Var mean(Var a);

  /// Accumulates d(loss)/d(node) for every node. loss must be 1 x 1.
  /// Leaves not connected to the loss keep a zero gradient.
  void backward(Var loss);

  const Mat& value(int id) const { return nodes_[id].value; }
  const Mat& grad(int id) const;
  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  struct Node {
    Mat value;
    Mat grad;
    bool touched = false;  // grad received during backward
    std::function<void(Tape&, const Mat&)> pull;
  };

  Var make(Mat value, std::function<void(Tape&, const Mat&)> pull);
  void accumulate(int id, const Mat& g);

  std::vector<Node> nodes_;
};

/// A network's parameters registered on a tape, with a forward pass that
/// mirrors MlpNet::forward_batch (relu hidden layers, linear output).
struct TapeNet {
  std::vector<Var> weights;
  std::vector<Var> biases;

  Var forward(Tape& tape, Var x) const;
  /// Reads parameter gradients back out in MlpNet layout.
  MlpGrads grads(const MlpNet& shape) const;
};

TapeNet push_net(Tape& tape, const MlpNet& net);

}  // namespace softac::nn
