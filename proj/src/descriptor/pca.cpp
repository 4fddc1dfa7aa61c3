#include "reid/descriptor/pca.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "reid/data/binary_io.hpp"
#include "reid/error.hpp"

namespace reid {

namespace {

constexpr std::string_view kMagic = "RIDP";

// Re-orthonormalizes rows in place (modified Gram-Schmidt). Rows that
// collapse numerically are replaced by the next canonical basis vector that
// is independent of the rows before them.
void orthonormalize_rows(Eigen::MatrixXd& rows) {
  const Eigen::Index k = rows.rows();
  const Eigen::Index d = rows.cols();
  Eigen::Index next_basis = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < i; ++j) rows.row(i) -= rows.row(i).dot(rows.row(j)) * rows.row(j);
    }
    double norm = rows.row(i).norm();
    while (norm < 1e-10 && next_basis < d) {
      rows.row(i).setZero();
      rows(i, next_basis++) = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < i; ++j) rows.row(i) -= rows.row(i).dot(rows.row(j)) * rows.row(j);
      }
      norm = rows.row(i).norm();
    }
    rows.row(i) /= norm;
  }
}

// Zero deviations map to 1. A constant column can leave round-off residue
// instead of an exact zero.
double guarded_deviation(double sd, double mean) { return sd > 1e-12 * std::max(1.0, std::abs(mean)) ? sd : 1.0; }

}  // namespace

std::uint64_t PcaModel::id() const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto b : serialize()) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::uint8_t> PcaModel::serialize() const {
  ByteWriter w;
  w.raw(kMagic);
  w.u16(kVersion);
  w.u32(input_dim);
  w.u32(output_dim);
  w.f64s(zscore_mean);
  w.f64s(zscore_stddev);
  w.f64s(mean);
  w.f64s(components);
  w.f64s(skeleton_stats.mean);
  w.f64s(skeleton_stats.stddev);
  for (std::size_t k = 0; k < output_dim; ++k) w.f64(k < explained_variance.size() ? explained_variance[k] : 0.0);
  return w.take();
}

PcaModel PcaModel::deserialize(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes, "PCA model");
  r.expect_magic(kMagic);
  const auto version = r.u16();
  if (version != kVersion) throw DataError("PCA model: unsupported version " + std::to_string(version));
  PcaModel m;
  m.input_dim = r.u32();
  m.output_dim = r.u32();
  if (m.output_dim > m.input_dim) throw DataError("PCA model: output dimension exceeds input dimension");
  m.zscore_mean = r.f64s(m.input_dim);
  m.zscore_stddev = r.f64s(m.input_dim);
  m.mean = r.f64s(m.input_dim);
  m.components = r.f64s(static_cast<std::size_t>(m.output_dim) * m.input_dim);
  const auto sm = r.f64s(kSkeletonFeatureCount);
  const auto ss = r.f64s(kSkeletonFeatureCount);
  std::copy(sm.begin(), sm.end(), m.skeleton_stats.mean.begin());
  std::copy(ss.begin(), ss.end(), m.skeleton_stats.stddev.begin());
  m.explained_variance = r.f64s(m.output_dim);
  if (!r.at_end()) throw DataError("PCA model: trailing bytes");
  return m;
}

void PcaModel::save(const std::string& path) const { write_file_atomic(path, serialize()); }

PcaModel PcaModel::load(const std::string& path) { return deserialize(read_file_bytes(path)); }

PcaModel train_pca(std::span<const std::vector<double>> samples, int k, std::span<const std::uint32_t> channel_of) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  if (n < 2) throw InvalidArgument("PCA needs at least two samples");
  const auto d = static_cast<Eigen::Index>(samples.front().size());
  if (d == 0) throw InvalidArgument("PCA samples are empty");
  if (k < 1 || k > std::min<Eigen::Index>(d, n - 1)) {
    throw InvalidArgument("PCA output dimension " + std::to_string(k) + " too large (max " +
                          std::to_string(std::min<Eigen::Index>(d, n - 1)) + ")");
  }

  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(s.size()) != d) throw InvalidArgument("PCA samples differ in dimension");
    x.row(i) = Eigen::Map<const Eigen::RowVectorXd>(s.data(), d);
  }

  PcaModel m;
  m.input_dim = static_cast<std::uint32_t>(d);
  m.output_dim = static_cast<std::uint32_t>(k);
  if (!channel_of.empty() && static_cast<Eigen::Index>(channel_of.size()) != d) {
    throw InvalidArgument("PCA channel map does not match the sample dimension");
  }
  Eigen::RowVectorXd zmean(d);
  Eigen::RowVectorXd zstd(d);
  if (channel_of.empty()) {
    zmean = x.colwise().mean();
    for (Eigen::Index j = 0; j < d; ++j) {
      const double var = (x.col(j).array() - zmean(j)).square().sum() / static_cast<double>(n);
      zstd(j) = guarded_deviation(std::sqrt(var), zmean(j));
    }
  } else {
    const std::uint32_t groups = *std::max_element(channel_of.begin(), channel_of.end()) + 1;
    std::vector<double> sum(groups, 0.0), count(groups, 0.0), sq(groups, 0.0);
    for (Eigen::Index j = 0; j < d; ++j) {
      sum[channel_of[static_cast<std::size_t>(j)]] += x.col(j).sum();
      count[channel_of[static_cast<std::size_t>(j)]] += static_cast<double>(n);
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto g = channel_of[static_cast<std::size_t>(j)];
      sq[g] += (x.col(j).array() - sum[g] / count[g]).square().sum();
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto g = channel_of[static_cast<std::size_t>(j)];
      zmean(j) = sum[g] / count[g];
      zstd(j) = guarded_deviation(std::sqrt(sq[g] / count[g]), zmean(j));
    }
  }
  Eigen::MatrixXd z = (x.rowwise() - zmean).array().rowwise() / zstd.array();
  const Eigen::RowVectorXd center = z.colwise().mean();
  z.rowwise() -= center;

  Eigen::MatrixXd rows(k, d);
  Eigen::VectorXd variance(k);
  const double denom = static_cast<double>(n - 1);
  if (d <= n) {
    const Eigen::MatrixXd cov = z.transpose() * z / denom;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) throw Error("PCA eigendecomposition failed");
    for (Eigen::Index i = 0; i < k; ++i) {
      rows.row(i) = eig.eigenvectors().col(d - 1 - i).transpose();
      variance(i) = eig.eigenvalues()(d - 1 - i);
    }
  } else {
    // Fewer samples than dimensions: eigenvectors of the N x N Gram matrix
    // map to covariance eigenvectors through z^T.
    const Eigen::MatrixXd gram = z * z.transpose() / denom;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    if (eig.info() != Eigen::Success) throw Error("PCA eigendecomposition failed");
    for (Eigen::Index i = 0; i < k; ++i) {
      const double lambda = eig.eigenvalues()(n - 1 - i);
      variance(i) = std::max(lambda, 0.0);
      rows.row(i) = (z.transpose() * eig.eigenvectors().col(n - 1 - i)).transpose();
    }
  }
  orthonormalize_rows(rows);

  for (Eigen::Index i = 0; i < k; ++i) {
    Eigen::Index arg = 0;
    rows.row(i).cwiseAbs().maxCoeff(&arg);
    if (rows(i, arg) < 0.0) rows.row(i) *= -1.0;
  }

  m.zscore_mean.assign(zmean.data(), zmean.data() + d);
  m.zscore_stddev.assign(zstd.data(), zstd.data() + d);
  m.mean.assign(center.data(), center.data() + d);
  m.components.resize(static_cast<std::size_t>(k * d));
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m.components[static_cast<std::size_t>(i * d + j)] = rows(i, j);
  }
  m.explained_variance.assign(variance.data(), variance.data() + k);
  return m;
}

double PcaModel::retained_variance() const {
  double sum = 0.0;
  for (double v : explained_variance) sum += v;
  return sum;
}

ClothingDescriptor compress(const PcaModel& model, std::span<const double> full) {
  if (full.size() != model.input_dim) {
    throw InvalidArgument("PCA model expects dimension " + std::to_string(model.input_dim) + ", got " +
                          std::to_string(full.size()));
  }
  std::vector<double> centered(full.size());
  for (std::size_t j = 0; j < full.size(); ++j) {
    centered[j] = (full[j] - model.zscore_mean[j]) / model.zscore_stddev[j] - model.mean[j];
  }
  ClothingDescriptor out;
  out.pca_model_id = model.id();
  out.values.resize(model.output_dim);
  for (std::size_t i = 0; i < model.output_dim; ++i) {
    const auto row = model.component(i);
    double s = 0.0;
    for (std::size_t j = 0; j < centered.size(); ++j) s += row[j] * centered[j];
    out.values[i] = s;
  }
  return out;
}

std::vector<double> reconstruct(const PcaModel& model, std::span<const double> coefficients) {
  if (coefficients.size() != model.output_dim) throw InvalidArgument("coefficient count does not match PCA model");
  std::vector<double> z(model.mean);
  for (std::size_t i = 0; i < model.output_dim; ++i) {
    const auto row = model.component(i);
    for (std::size_t j = 0; j < z.size(); ++j) z[j] += coefficients[i] * row[j];
  }
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = z[j] * model.zscore_stddev[j] + model.zscore_mean[j];
  return z;
}

}  // namespace reid
