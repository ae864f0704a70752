#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nafd/rng.hpp"

namespace nafd::moop {

enum class InitMode { kHe, kZero };

struct Transition {
  Eigen::VectorXd s;
  int a = 0;
  double r = 0.0;
  Eigen::VectorXd s_next;
};

/// Fully connected in -> h1 -> h2 -> out with ReLU on both hidden layers.
class QNetwork {
 public:
  QNetwork(int in, int h1, int h2, int out, InitMode init, Rng& rng);

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;

  int input_size() const { return static_cast<int>(w1_.cols()); }
  int output_size() const { return static_cast<int>(w3_.rows()); }
  std::size_t parameter_count() const;

  /// Flat parameter vector: w1, b1, w2, b2, w3, b3 (column-major matrices).
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd& p);

  /// mean over the batch of (y - Q(s, a))^2 against fixed targets y.
  double loss(const std::vector<Transition>& batch, const std::vector<double>& targets) const;
  /// Analytic gradient of loss() in the layout of parameters().
  Eigen::VectorXd gradient(const std::vector<Transition>& batch,
                           const std::vector<double>& targets) const;

 private:
  Eigen::MatrixXd w1_, w2_, w3_;
  Eigen::VectorXd b1_, b2_, b3_;
};

/// r + gamma * max_a' Q_target(s', a') per transition.
std::vector<double> td_targets(const QNetwork& target, const std::vector<Transition>& batch,
                               double gamma);

/// One plain SGD step on the batch; returns the loss before the update.
double gradient_step(QNetwork& net, const std::vector<Transition>& batch, const QNetwork& target,
                     double lr, double gamma);

}  // namespace nafd::moop
