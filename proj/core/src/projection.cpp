// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ChronoGAN Authors

#include "chronogan/projection.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "chronogan/errors.hpp"
#include "chronogan/rng.hpp"

namespace chronogan::eval {

std::string_view method_name(ProjectionMethod m) { return m == ProjectionMethod::pca ? "pca" : "tsne"; }
std::string_view label_name(PointLabel l) { return l == PointLabel::real ? "real" : "synthetic"; }

std::vector<double> time_average(const data::SequenceBatch& batch) {
  const std::size_t f = batch.features();
  std::vector<double> out(batch.samples() * f, 0.0);
  for (std::size_t n = 0; n < batch.samples(); ++n) {
    for (std::size_t t = 0; t < batch.steps(); ++t) {
      for (std::size_t j = 0; j < f; ++j) out[n * f + j] += batch.at(n, t, j);
    }
  }
  for (double& v : out) v /= static_cast<double>(batch.steps());
  return out;
}

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Time-averaged rows of at most `cap` samples chosen by a seeded permutation.
RowMatrix capped_rows(const data::SequenceBatch& batch, std::size_t cap, std::uint64_t seed) {
  const std::vector<double> avg = time_average(batch);
  const std::size_t f = batch.features();
  std::vector<std::size_t> idx(batch.samples());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (idx.size() > cap) {
    idx = Rng(seed).permutation(batch.samples());
    idx.resize(cap);
    std::sort(idx.begin(), idx.end());
  }
  RowMatrix m(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(f));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t j = 0; j < f; ++j) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = avg[idx[r] * f + j];
  }
  return m;
}

void require_layout(const data::SequenceBatch& real, const data::SequenceBatch& synth, std::size_t min_per_side) {
  if (real.features() != synth.features()) throw ContractError("real and synthetic feature counts differ");
  if (real.samples() < min_per_side || synth.samples() < min_per_side) {
    throw ContractError("projection needs at least " + std::to_string(min_per_side) + " samples per side");
  }
}

void append_points(Projection2D& p, const RowMatrix& coords, PointLabel label) {
  for (Eigen::Index r = 0; r < coords.rows(); ++r) {
    p.points.push_back({coords(r, 0), coords(r, 1)});
    p.labels.push_back(label);
  }
}

}  // namespace

Projection2D pca_project(const data::SequenceBatch& real, const data::SequenceBatch& synth, std::size_t sample_cap,
                         std::uint64_t seed) {
  require_layout(real, synth, 3);
  if (sample_cap < 3) throw ContractError("sample cap must be at least 3");
  const RowMatrix xr = capped_rows(real, sample_cap, seed);
  const RowMatrix xs = capped_rows(synth, sample_cap, seed);
  if (xr.cols() < 2) throw DegenerateInput("PCA needs at least two features");

  const Eigen::RowVectorXd mu = xr.colwise().mean();
  const RowMatrix centered = xr.rowwise() - mu;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(xr.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw DegenerateInput("covariance eigendecomposition failed");

  // Eigen returns ascending eigenvalues.
  const Eigen::VectorXd lambda = solver.eigenvalues().cwiseMax(0.0);
  const Eigen::Index k = lambda.size();
  const double total = lambda.sum();
  if (!(total > 0.0) || lambda(k - 2) <= 1e-12 * lambda(k - 1)) {
    throw DegenerateInput("time-averaged real data has rank < 2");
  }
  Eigen::MatrixXd basis(xr.cols(), 2);
  for (int c = 0; c < 2; ++c) {
    Eigen::VectorXd v = solver.eigenvectors().col(k - 1 - c);
    // Fix the sign so the largest-magnitude loading is positive.
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    basis.col(c) = v;
  }

  Projection2D p;
  p.method = ProjectionMethod::pca;
  p.explained_variance_ratio = {lambda(k - 1) / total, lambda(k - 2) / total};
  append_points(p, (xr.rowwise() - mu) * basis, PointLabel::real);
  append_points(p, (xs.rowwise() - mu) * basis, PointLabel::synthetic);
  return p;
}

namespace {

// Row-conditional affinities matched to the target perplexity by bisection on
// the precision beta, then symmetrized and normalized to sum 1.
std::vector<double> joint_affinities(const std::vector<double>& sq_dist, std::size_t m, double perplexity) {
  const double target = std::log(perplexity);
  std::vector<double> p(m * m, 0.0);
  std::vector<double> row(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double* d = &sq_dist[i * m];
    double d_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) d_min = std::min(d_min, d[j]);
    }
    double beta = 1.0, lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < 100; ++attempt) {
      double sum = 0.0, weighted = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        row[j] = j == i ? 0.0 : std::exp(-(d[j] - d_min) * beta);
        sum += row[j];
        weighted += row[j] * (d[j] - d_min);
      }
      // Entropy of the row distribution, shift-invariant form.
      const double entropy = std::log(sum) + beta * weighted / sum;
      for (std::size_t j = 0; j < m; ++j) p[i * m + j] = row[j] / sum;
      const double gap = entropy - target;
      if (std::abs(gap) < 1e-5) break;
      if (gap > 0) {
        lo = beta;
        beta = std::isinf(hi) ? beta * 2.0 : (beta + hi) / 2.0;
      } else {
        hi = beta;
        beta = (beta + lo) / 2.0;
      }
    }
  }
  std::vector<double> joint(m * m);
  const double norm = 2.0 * static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      joint[i * m + j] = std::max((p[i * m + j] + p[j * m + i]) / norm, 1e-12);
    }
  }
  return joint;
}

double gaussian(Rng& rng) {
  // Box-Muller; keeps the layout reproducible across standard libraries.
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

TsneResult tsne_embed(const std::vector<double>& data, std::size_t rows, std::size_t dim, const TsneOptions& o) {
  if (data.size() != rows * dim) throw ShapeError("t-SNE input size does not match rows x dim");
  if (!(o.perplexity > 0.0) || static_cast<double>(rows) < 3.0 * o.perplexity) {
    throw ContractError("t-SNE needs at least 3 * perplexity points");
  }
  const std::size_t m = rows;
  std::vector<double> sq(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = data[i * dim + k] - data[j * dim + k];
        s += diff * diff;
      }
      sq[i * m + j] = sq[j * m + i] = s;
    }
  }
  const std::vector<double> p = joint_affinities(sq, m, o.perplexity);

  std::vector<Point2> y(m);
  if (o.initial) {
    if (o.initial->size() != m) throw ShapeError("initial layout must have one point per row");
    y = *o.initial;
  } else {
    Rng rng(o.seed);
    for (auto& pt : y) pt = {1e-2 * gaussian(rng), 1e-2 * gaussian(rng)};
  }

  std::vector<Point2> velocity(m, {0.0, 0.0});
  std::vector<Point2> gains(m, {1.0, 1.0});
  std::vector<Point2> grad(m);
  std::vector<double> num(m * m);
  TsneResult result;
  result.kl_history.reserve(o.iterations);

  for (std::size_t it = 0; it < o.iterations; ++it) {
    const double exaggeration = it < o.exaggeration_iterations ? o.early_exaggeration : 1.0;
    const double momentum = it < o.momentum_switch ? o.initial_momentum : o.final_momentum;

    // Student-t kernel and its normalizer.
    double z = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      num[i * m + i] = 0.0;
      for (std::size_t j = i + 1; j < m; ++j) {
        const double dx = y[i][0] - y[j][0];
        const double dy = y[i][1] - y[j][1];
        const double q = 1.0 / (1.0 + dx * dx + dy * dy);
        num[i * m + j] = num[j * m + i] = q;
        z += 2.0 * q;
      }
    }

    double kl = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double gx = 0.0, gy = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const double pij = exaggeration * p[i * m + j];
        const double qij = std::max(num[i * m + j] / z, 1e-12);
        kl += pij * std::log(pij / qij);
        const double w = (pij - qij) * num[i * m + j];
        gx += w * (y[i][0] - y[j][0]);
        gy += w * (y[i][1] - y[j][1]);
      }
      grad[i] = {4.0 * gx, 4.0 * gy};
    }
    result.kl_history.push_back(kl);

    Point2 centre{0.0, 0.0};
    for (std::size_t i = 0; i < m; ++i) {
      for (int c = 0; c < 2; ++c) {
        // Adaptive gains: grow while the step keeps its direction.
        double& g = gains[i][c];
        g = (grad[i][c] > 0) != (velocity[i][c] > 0) ? g + 0.2 : g * 0.8;
        g = std::max(g, 0.01);
        velocity[i][c] = momentum * velocity[i][c] - o.learning_rate * g * grad[i][c];
        y[i][c] += velocity[i][c];
        centre[c] += y[i][c];
      }
    }
    for (auto& pt : y) {
      pt[0] -= centre[0] / static_cast<double>(m);
      pt[1] -= centre[1] / static_cast<double>(m);
    }
  }
  result.embedding = std::move(y);
  return result;
}

Projection2D tsne_project(const data::SequenceBatch& real, const data::SequenceBatch& synth, const TsneOptions& options,
                          std::size_t sample_cap) {
  require_layout(real, synth, 1);
  const RowMatrix xr = capped_rows(real, sample_cap, options.seed);
  const RowMatrix xs = capped_rows(synth, sample_cap, options.seed);
  const std::size_t f = real.features();
  std::vector<double> combined(xr.data(), xr.data() + xr.size());
  combined.insert(combined.end(), xs.data(), xs.data() + xs.size());
  const std::size_t rows = static_cast<std::size_t>(xr.rows() + xs.rows());

  TsneResult r = tsne_embed(combined, rows, f, options);
  Projection2D p;
  p.method = ProjectionMethod::tsne;
  p.points = std::move(r.embedding);
  p.labels.assign(static_cast<std::size_t>(xr.rows()), PointLabel::real);
  p.labels.resize(rows, PointLabel::synthetic);
  p.perplexity = options.perplexity;
  p.iterations = options.iterations;
  p.final_kl = r.kl_history.empty() ? 0.0 : r.kl_history.back();
  p.kl_history = std::move(r.kl_history);
  return p;
}

void write_projection_csv(const Projection2D& projection, std::ostream& out) {
  out << "method,component1,component2,label\n";
  char buf[32];
  for (std::size_t i = 0; i < projection.points.size(); ++i) {
    out << method_name(projection.method);
    for (double v : projection.points[i]) {
      const auto res = std::to_chars(buf, buf + sizeof buf, v);
      out << ',';
      out.write(buf, res.ptr - buf);
    }
    out << ',' << label_name(projection.labels[i]) << '\n';
  }
}

void write_projection_csv(const Projection2D& projection, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ContractError("cannot write " + path.string());
  write_projection_csv(projection, out);
}

}  // namespace chronogan::eval
