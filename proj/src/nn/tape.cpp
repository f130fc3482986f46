#include "softac/nn/tape.hpp"

#include "softac/errors.hpp"

namespace softac::nn {

const Mat& Var::value() const { return tape_->value(id_); }
const Mat& Var::grad() const { return tape_->grad(id_); }

Var Tape::make(Mat value, std::function<void(Tape&, const Mat&)> pull) {
  nodes_.push_back(Node{std::move(value), Mat(), false, std::move(pull)});
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

void Tape::accumulate(int id, const Mat& g) {
  Node& n = nodes_[id];
  if (!n.touched) {
    n.grad = g;
    n.touched = true;
  } else {
    n.grad += g;
  }
}

const Mat& Tape::grad(int id) const {
  const Node& n = nodes_[id];
  if (n.touched) return n.grad;
  // Materialize a zero gradient in the node itself so references stay valid.
  Node& mut = const_cast<Tape*>(this)->nodes_[id];
  mut.grad = Mat::Zero(n.value.rows(), n.value.cols());
  return mut.grad;
}

Var Tape::leaf(const Mat& value) { return make(value, nullptr); }
Var Tape::leaf(const Vec& value) { return make(Mat(value), nullptr); }

namespace {
void check_same_shape(const Mat& a, const Mat& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ContractViolation(std::string(op) + ": shape mismatch");
}
}  // namespace

Var Tape::add(Var a, Var b) {
  check_same_shape(a.value(), b.value(), "add");
  const int ia = a.id(), ib = b.id();
  return make(a.value() + b.value(), [ia, ib](Tape& t, const Mat& g) {
    t.accumulate(ia, g);
    t.accumulate(ib, g);
  });
}

Var Tape::sub(Var a, Var b) {
  check_same_shape(a.value(), b.value(), "sub");
  const int ia = a.id(), ib = b.id();
  return make(a.value() - b.value(), [ia, ib](Tape& t, const Mat& g) {
    t.accumulate(ia, g);
    t.accumulate(ib, -g);
  });
}

Var Tape::cmul(Var a, Var b) {
  check_same_shape(a.value(), b.value(), "cmul");
  const int ia = a.id(), ib = b.id();
  return make(a.value().cwiseProduct(b.value()), [ia, ib](Tape& t, const Mat& g) {
    t.accumulate(ia, g.cwiseProduct(t.value(ib)));
    t.accumulate(ib, g.cwiseProduct(t.value(ia)));
  });
}

Var Tape::cdiv(Var a, Var b) {
  check_same_shape(a.value(), b.value(), "cdiv");
  const int ia = a.id(), ib = b.id();
  return make(a.value().cwiseQuotient(b.value()), [ia, ib](Tape& t, const Mat& g) {
    const Mat& vb = t.value(ib);
    t.accumulate(ia, g.cwiseQuotient(vb));
    t.accumulate(ib, -g.cwiseProduct(t.value(ia)).cwiseQuotient(vb.cwiseProduct(vb)));
  });
}

Var Tape::cmin(Var a, Var b) {
  check_same_shape(a.value(), b.value(), "cmin");
  const int ia = a.id(), ib = b.id();
  return make(a.value().cwiseMin(b.value()), [ia, ib](Tape& t, const Mat& g) {
    const Mat mask = (t.value(ia).array() <= t.value(ib).array()).cast<double>();
    t.accumulate(ia, g.cwiseProduct(mask));
    t.accumulate(ib, g.cwiseProduct(Mat(Mat::Ones(g.rows(), g.cols()) - mask)));
  });
}

Var Tape::matmul(Var a, Var b) {
  if (a.value().cols() != b.value().rows()) throw ContractViolation("matmul: inner dims differ");
  const int ia = a.id(), ib = b.id();
  return make(a.value() * b.value(), [ia, ib](Tape& t, const Mat& g) {
    t.accumulate(ia, g * t.value(ib).transpose());
    t.accumulate(ib, t.value(ia).transpose() * g);
  });
}

Var Tape::affine(Var w, Var x, Var b) {
  if (w.value().cols() != x.value().rows()) throw ContractViolation("affine: inner dims differ");
  if (b.value().rows() != w.value().rows() || b.value().cols() != 1)
    throw ContractViolation("affine: bias shape");
  const int iw = w.id(), ix = x.id(), ib = b.id();
  Mat out = (w.value() * x.value()).colwise() + Vec(b.value().col(0));
  return make(std::move(out), [iw, ix, ib](Tape& t, const Mat& g) {
    t.accumulate(iw, g * t.value(ix).transpose());
    t.accumulate(ix, t.value(iw).transpose() * g);
    t.accumulate(ib, g.rowwise().sum());
  });
}

Var Tape::relu(Var a) {
  const int ia = a.id();
  return make(a.value().cwiseMax(0.0), [ia](Tape& t, const Mat& g) {
    const Mat mask = (t.value(ia).array() > 0.0).cast<double>();
    t.accumulate(ia, g.cwiseProduct(mask));
  });
}

Var Tape::tanh(Var a) {
  const int ia = a.id();
  Var out = make(a.value().array().tanh().matrix(), nullptr);
  const int io = out.id();
  nodes_[io].pull = [ia, io](Tape& t, const Mat& g) {
    const Mat& y = t.value(io);
    t.accumulate(ia, g.cwiseProduct(Mat(Mat::Ones(y.rows(), y.cols()) - y.cwiseProduct(y))));
  };
  return out;
}

Var Tape::exp(Var a) {
  const int ia = a.id();
  Var out = make(a.value().array().exp().matrix(), nullptr);
  const int io = out.id();
  nodes_[io].pull = [ia, io](Tape& t, const Mat& g) {
    t.accumulate(ia, g.cwiseProduct(t.value(io)));
  };
  return out;
}

Var Tape::log(Var a) {
  const int ia = a.id();
  return make(a.value().array().log().matrix(), [ia](Tape& t, const Mat& g) {
    t.accumulate(ia, g.cwiseQuotient(t.value(ia)));
  });
}

Var Tape::square(Var a) {
  const int ia = a.id();
  return make(a.value().cwiseProduct(a.value()), [ia](Tape& t, const Mat& g) {
    t.accumulate(ia, 2.0 * g.cwiseProduct(t.value(ia)));
  });
}

Var Tape::clamp(Var a, double lo, double hi) {
  const int ia = a.id();
  return make(a.value().cwiseMax(lo).cwiseMin(hi), [ia, lo, hi](Tape& t, const Mat& g) {
    const auto& v = t.value(ia).array();
    const Mat mask = (v >= lo && v <= hi).cast<double>();
    t.accumulate(ia, g.cwiseProduct(mask));
  });
}

Var Tape::scale(Var a, double c) {
  const int ia = a.id();
  return make(c * a.value(), [ia, c](Tape& t, const Mat& g) { t.accumulate(ia, c * g); });
}

Var Tape::add_scalar(Var a, double c) {
  const int ia = a.id();
  return make(a.value().array() + c, [ia](Tape& t, const Mat& g) { t.accumulate(ia, g); });
}

Var Tape::sum_rows(Var a) {
  const int ia = a.id();
  const int rows = static_cast<int>(a.value().rows());
  return make(a.value().colwise().sum(), [ia, rows](Tape& t, const Mat& g) {
    t.accumulate(ia, Mat::Ones(rows, 1) * g);
  });
}

Var Tape::concat_rows(Var a, Var b) {
  if (a.value().cols() != b.value().cols()) throw ContractViolation("concat_rows: column mismatch");
  const int ia = a.id(), ib = b.id();
  const int ra = static_cast<int>(a.value().rows());
  const int rb = static_cast<int>(b.value().rows());
  Mat out(ra + rb, a.value().cols());
  out.topRows(ra) = a.value();
  out.bottomRows(rb) = b.value();
  return make(std::move(out), [ia, ib, ra, rb](Tape& t, const Mat& g) {
    t.accumulate(ia, g.topRows(ra));
    t.accumulate(ib, g.bottomRows(rb));
  });
}

Var Tape::slice_rows(Var a, int first_row, int rows) {
  if (first_row < 0 || first_row + rows > a.value().rows())
    throw ContractViolation("slice_rows: range out of bounds");
  const int ia = a.id();
  const int total = static_cast<int>(a.value().rows());
  return make(a.value().middleRows(first_row, rows),
              [ia, first_row, rows, total](Tape& t, const Mat& g) {
                Mat full = Mat::Zero(total, g.cols());
                full.middleRows(first_row, rows) = g;
                t.accumulate(ia, full);
              });
}

Var Tape::sum(Var a) {
  const int ia = a.id();
  const int rows = static_cast<int>(a.value().rows());
  const int cols = static_cast<int>(a.value().cols());
  Mat out(1, 1);
  out(0, 0) = a.value().sum();
  return make(std::move(out), [ia, rows, cols](Tape& t, const Mat& g) {
    t.accumulate(ia, Mat::Constant(rows, cols, g(0, 0)));
  });
}

Var Tape::mean(Var a) {
  const int ia = a.id();
  const int rows = static_cast<int>(a.value().rows());
  const int cols = static_cast<int>(a.value().cols());
  const double inv = 1.0 / static_cast<double>(rows * cols);
  Mat out(1, 1);
  out(0, 0) = a.value().mean();
  return make(std::move(out), [ia, rows, cols, inv](Tape& t, const Mat& g) {
    t.accumulate(ia, Mat::Constant(rows, cols, g(0, 0) * inv));
  });
}

void Tape::backward(Var loss) {
  if (loss.tape() != this) throw ContractViolation("backward: loss from another tape");
  const Mat& lv = value(loss.id());
  if (lv.rows() != 1 || lv.cols() != 1) throw ContractViolation("backward: loss must be scalar");
  for (Node& n : nodes_) {
    n.touched = false;
    n.grad.resize(0, 0);
  }
  Mat seed(1, 1);
  seed(0, 0) = 1.0;
  accumulate(loss.id(), seed);
  for (int id = loss.id(); id >= 0; --id) {
    Node& n = nodes_[id];
    if (n.touched && n.pull) n.pull(*this, n.grad);
  }
}

Var TapeNet::forward(Tape& tape, Var x) const {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    x = tape.affine(weights[l], x, biases[l]);
    if (l + 1 < weights.size()) x = tape.relu(x);
  }
  return x;
}

MlpGrads TapeNet::grads(const MlpNet& shape) const {
  MlpGrads g = MlpGrads::zeros_like(shape);
  for (std::size_t l = 0; l < weights.size(); ++l) {
    g.dweights[l] = weights[l].grad();
    g.dbiases[l] = biases[l].grad().col(0);
  }
  return g;
}

TapeNet push_net(Tape& tape, const MlpNet& net) {
  TapeNet tn;
  for (int l = 0; l < net.layer_count(); ++l) {
    tn.weights.push_back(tape.leaf(net.weights[l]));
    tn.biases.push_back(tape.leaf(net.biases[l]));
  }
  return tn;
}

}  // namespace softac::nn
