#include "nafd/moop/qnetwork.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace nafd::moop {

namespace {

Eigen::MatrixXd init_matrix(int rows, int cols, InitMode init, Rng& rng) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  if (init == InitMode::kZero) return m;
  std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / cols));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = dist(rng);
  return m;
}

Eigen::VectorXd relu(const Eigen::VectorXd& v) { return v.cwiseMax(0.0); }

}  // namespace

QNetwork::QNetwork(int in, int h1, int h2, int out, InitMode init, Rng& rng) {
  if (in < 1 || h1 < 1 || h2 < 1 || out < 1)
    throw std::invalid_argument("QNetwork: all layer widths must be >= 1");
  w1_ = init_matrix(h1, in, init, rng);
  w2_ = init_matrix(h2, h1, init, rng);
  w3_ = init_matrix(out, h2, init, rng);
  b1_ = Eigen::VectorXd::Zero(h1);
  b2_ = Eigen::VectorXd::Zero(h2);
  b3_ = Eigen::VectorXd::Zero(out);
}

Eigen::VectorXd QNetwork::forward(const Eigen::VectorXd& x) const {
  if (x.size() != w1_.cols()) throw std::invalid_argument("QNetwork: input size mismatch");
  const Eigen::VectorXd a1 = relu(w1_ * x + b1_);
  const Eigen::VectorXd a2 = relu(w2_ * a1 + b2_);
  return w3_ * a2 + b3_;
}

std::size_t QNetwork::parameter_count() const {
  return static_cast<std::size_t>(w1_.size() + b1_.size() + w2_.size() + b2_.size() + w3_.size() +
                                  b3_.size());
}

Eigen::VectorXd QNetwork::parameters() const {
  Eigen::VectorXd p(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index o = 0;
  auto put = [&](const auto& m) {
    p.segment(o, m.size()) = Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
    o += m.size();
  };
  put(w1_);
  put(b1_);
  put(w2_);
  put(b2_);
  put(w3_);
  put(b3_);
  return p;
}

void QNetwork::set_parameters(const Eigen::VectorXd& p) {
  if (static_cast<std::size_t>(p.size()) != parameter_count())
    throw std::invalid_argument("QNetwork: parameter count mismatch");
  Eigen::Index o = 0;
  auto take = [&](auto& m) {
    Eigen::Map<Eigen::VectorXd>(m.data(), m.size()) = p.segment(o, m.size());
    o += m.size();
  };
  take(w1_);
  take(b1_);
  take(w2_);
  take(b2_);
  take(w3_);
  take(b3_);
}

double QNetwork::loss(const std::vector<Transition>& batch,
                      const std::vector<double>& targets) const {
  if (batch.empty() || batch.size() != targets.size())
    throw std::invalid_argument("QNetwork::loss: batch and targets must be non-empty and aligned");
  double l = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double d = targets[i] - forward(batch[i].s)[batch[i].a];
    l += d * d;
  }
  return l / static_cast<double>(batch.size());
}

Eigen::VectorXd QNetwork::gradient(const std::vector<Transition>& batch,
                                   const std::vector<double>& targets) const {
  if (batch.empty() || batch.size() != targets.size())
    throw std::invalid_argument("QNetwork::gradient: batch and targets must be non-empty and aligned");
  Eigen::MatrixXd gw1 = Eigen::MatrixXd::Zero(w1_.rows(), w1_.cols());
  Eigen::MatrixXd gw2 = Eigen::MatrixXd::Zero(w2_.rows(), w2_.cols());
  Eigen::MatrixXd gw3 = Eigen::MatrixXd::Zero(w3_.rows(), w3_.cols());
  Eigen::VectorXd gb1 = Eigen::VectorXd::Zero(b1_.size());
  Eigen::VectorXd gb2 = Eigen::VectorXd::Zero(b2_.size());
  Eigen::VectorXd gb3 = Eigen::VectorXd::Zero(b3_.size());
  const double scale = 2.0 / static_cast<double>(batch.size());

  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto& x = batch[i].s;
    const Eigen::VectorXd z1 = w1_ * x + b1_;
    const Eigen::VectorXd a1 = relu(z1);
    const Eigen::VectorXd z2 = w2_ * a1 + b2_;
    const Eigen::VectorXd a2 = relu(z2);
    const Eigen::VectorXd q = w3_ * a2 + b3_;
    const int a = batch[i].a;

    // dL/dq is non-zero only for the taken action.
    const double dq = -scale * (targets[i] - q[a]);
    gw3.row(a) += dq * a2.transpose();
    gb3[a] += dq;
    Eigen::VectorXd d2 = dq * w3_.row(a).transpose();
    d2 = d2.array() * (z2.array() > 0.0).cast<double>();
    gw2 += d2 * a1.transpose();
    gb2 += d2;
    Eigen::VectorXd d1 = w2_.transpose() * d2;
    d1 = d1.array() * (z1.array() > 0.0).cast<double>();
    gw1 += d1 * x.transpose();
    gb1 += d1;
  }

  Eigen::VectorXd g(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index o = 0;
  auto put = [&](const auto& m) {
    g.segment(o, m.size()) = Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
    o += m.size();
  };
  put(gw1);
  put(gb1);
  put(gw2);
  put(gb2);
  put(gw3);
  put(gb3);
  return g;
}

std::vector<double> td_targets(const QNetwork& target, const std::vector<Transition>& batch,
                               double gamma) {
  std::vector<double> y;
  y.reserve(batch.size());
  for (const auto& t : batch) y.push_back(t.r + gamma * target.forward(t.s_next).maxCoeff());
  return y;
}

double gradient_step(QNetwork& net, const std::vector<Transition>& batch, const QNetwork& target,
                     double lr, double gamma) {
  const std::vector<double> y = td_targets(target, batch, gamma);
  const double l = net.loss(batch, y);
  net.set_parameters(net.parameters() - lr * net.gradient(batch, y));
  return l;
}

}  // namespace nafd::moop
