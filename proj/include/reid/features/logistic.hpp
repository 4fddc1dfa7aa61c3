#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace reid {

double sigmoid(double z);

// Binary logistic regression P(y=1|x) = sigmoid(w.x + b).
struct BinaryLogistic {
  std::vector<double> weights;
  double bias = 0.0;

  double score(std::span<const double> x) const;
  double predict(std::span<const double> x) const { return sigmoid(score(x)); }
};

struct LogisticTrainOptions {
  double l2 = 1e-4;
  int max_epochs = 500;
  double tolerance = 1e-8;
};

// Mean negative log-likelihood plus (l2/2)||w||^2 (the bias is not
// regularized). Parameters are packed as [w..., b].
class LogisticObjective {
 public:
  LogisticObjective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double l2)
      : x_(x), y_(y), l2_(l2) {}

  double value(const Eigen::VectorXd& params) const;
  double value_and_gradient(const Eigen::VectorXd& params, Eigen::VectorXd& grad) const;

 private:
  const Eigen::MatrixXd& x_;
  const Eigen::VectorXd& y_;
  double l2_;
};

struct LogisticFit {
  BinaryLogistic model;
  std::vector<double> loss_history;  // loss after each accepted epoch, starting at init
};

// Full-batch gradient descent with backtracking line search, so the loss is
// nonincreasing per epoch. Stops when the decrease falls below the tolerance
// or after max_epochs. Starts from zero weights.
LogisticFit train_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const LogisticTrainOptions& options = {});

// Per-column standardization folded into the returned weights: each model is
// trained on standardized columns and mapped back to raw feature space.
struct OneVsAllFit {
  std::vector<BinaryLogistic> models;
  std::vector<std::vector<double>> loss_histories;
};

OneVsAllFit train_one_vs_all(const Eigen::MatrixXd& x, std::span<const int> labels,
                             std::span<const int> classes, const LogisticTrainOptions& options = {});

}  // namespace reid
