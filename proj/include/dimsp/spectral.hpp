#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "dimsp/errors.hpp"
#include "dimsp/rng.hpp"
#include "dimsp/types.hpp"

namespace dimsp {

/// Partition of N items into k non-empty clusters, labels in [0, k).
/// Labels are canonical: cluster ids appear in ascending order of first
/// occurrence.
struct Clustering {
  int k = 1;
  std::vector<int> labels;
};

template <typename Scalar>
struct Eigendecomposition {
  Vec<Scalar> values;   // ascending
  Mat<Scalar> vectors;  // one column per value, orthonormal
};

/// L = I - D^{-1/2} W D^{-1/2} with D the diagonal degree matrix of W.
/// The result is symmetrized by averaging to remove rounding drift.
template <typename Scalar>
Mat<Scalar> normalized_laplacian(const Mat<Scalar>& w) {
  const Eigen::Index n = w.rows();
  Vec<Scalar> degree = w.rowwise().sum();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(degree(i) > Scalar(0))) {
      throw ZeroDegree("normalized_laplacian: node " + std::to_string(i) +
                       " has non-positive degree");
    }
  }
  const Vec<Scalar> inv_sqrt = degree.array().rsqrt().matrix();
  Mat<Scalar> l = Mat<Scalar>::Identity(n, n) -
                  inv_sqrt.asDiagonal() * w * inv_sqrt.asDiagonal();
  l = (Scalar(0.5) * (l + l.transpose())).eval();
  return l;
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations
/// with a fixed row-major sweep order, so results are reproducible down to
/// the bit. Eigenpairs are returned in ascending eigenvalue order.
///
/// Throws ConvergenceFailure if the off-diagonal Frobenius norm does not fall
/// below `off_tol` within `max_sweeps` sweeps.
template <typename Scalar>
Eigendecomposition<Scalar> jacobi_eigen(Mat<Scalar> a, int max_sweeps = 100,
                                        Scalar off_tol = Scalar(1e-10)) {
  const Eigen::Index n = a.rows();
  Mat<Scalar> v = Mat<Scalar>::Identity(n, n);

  const auto off_norm = [&a, n]() {
    Scalar sum = Scalar(0);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) sum += a(i, j) * a(i, j);
    }
    return std::sqrt(Scalar(2) * sum);
  };

  bool converged = (n <= 1) || off_norm() <= off_tol;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar tau = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar t = (tau >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                         (std::abs(tau) + std::sqrt(Scalar(1) + tau * tau));
        const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
        const Scalar s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = Scalar(0);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_norm() <= off_tol;
  }
  if (!converged) {
    throw ConvergenceFailure("jacobi_eigen: off-diagonal norm above tolerance after " +
                             std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  Eigendecomposition<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// The k smallest eigenpairs of a symmetric matrix, ascending.
template <typename Scalar>
Eigendecomposition<Scalar> smallest_eigenpairs(const Mat<Scalar>& l, int k) {
  Eigendecomposition<Scalar> full = jacobi_eigen<Scalar>(l);
  Eigendecomposition<Scalar> out;
  out.values = full.values.head(k);
  out.vectors = full.vectors.leftCols(k);
  return out;
}

/// Eigengap heuristic: the index i (1-based) maximizing lambda_{i+1} -
/// lambda_i over the ascending spectrum, ties toward smaller i, clamped to
/// k_max.
template <typename Scalar>
int choose_k(const Vec<Scalar>& eigenvalues, int k_max) {
  const int len = static_cast<int>(eigenvalues.size());
  int best_i = 1;
  Scalar best_gap = eigenvalues(1) - eigenvalues(0);
  for (int i = 2; i < len; ++i) {
    const Scalar gap = eigenvalues(i) - eigenvalues(i - 1);
    if (gap > best_gap) {
      best_gap = gap;
      best_i = i;
    }
  }
  return std::min(best_i, k_max);
}

/// Lloyd k-means with k-means++ seeding. Points are matrix rows. Equidistant
/// points go to the lower centroid index; iteration stops when assignments
/// stabilize. May leave some of the k clusters empty (callers drop them).
template <typename Scalar>
std::vector<int> kmeans(const Mat<Scalar>& points, int k, RngStream& rng,
                        int max_iterations = 200) {
  const Eigen::Index n = points.rows();
  Mat<Scalar> centers(k, points.cols());

  // k-means++: each next seed is sampled with probability proportional to the
  // squared distance to the nearest seed chosen so far.
  Vec<Scalar> d2 = Vec<Scalar>::Constant(n, std::numeric_limits<Scalar>::max());
  Eigen::Index pick = static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n)));
  centers.row(0) = points.row(pick);
  for (int j = 1; j < k; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar d = (points.row(i) - centers.row(j - 1)).squaredNorm();
      d2(i) = std::min(d2(i), d);
    }
    const Scalar total = d2.sum();
    if (total > Scalar(0)) {
      const Scalar r = static_cast<Scalar>(rng.next_double()) * total;
      Scalar cum = Scalar(0);
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        cum += d2(i);
        if (cum >= r) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.next_below(static_cast<std::uint64_t>(n)));
    }
    centers.row(j) = points.row(pick);
  }

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<int> previous;
  for (int iter = 0; iter < max_iterations; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      Scalar best_d = (points.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const Scalar d = (points.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      labels[static_cast<std::size_t>(i)] = best;
    }
    if (labels == previous) break;
    previous = labels;

    Mat<Scalar> sums = Mat<Scalar>::Zero(k, points.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(labels[static_cast<std::size_t>(i)]) += points.row(i);
      ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / Scalar(counts[static_cast<std::size_t>(c)]);
      }
    }
  }
  return labels;
}

/// Normalized spectral clustering of a similarity matrix:
/// Laplacian -> min(k_max+1, N) smallest eigenpairs -> eigengap choice of k
/// -> row-normalized spectral embedding -> k-means. Singleton clusters are
/// merged into the cluster with the nearest centroid, empty clusters dropped,
/// and labels relabeled canonically.
inline Clustering cluster(const Matrix& w, int k_max, RngStream& rng) {
  const Eigen::Index n = w.rows();
  if (n < 1) throw EmptyPopulation("cluster: empty similarity matrix");
  if (n == 1) return Clustering{1, {0}};

  const Matrix laplacian = normalized_laplacian(w);
  const int k_prime = static_cast<int>(std::min<Eigen::Index>(k_max + 1, n));
  const Eigendecomposition<double> pairs = smallest_eigenpairs(laplacian, k_prime);
  const int k = choose_k(pairs.values, k_max);

  Matrix embedding = pairs.vectors.leftCols(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = embedding.row(i).norm();
    if (norm > 0.0) embedding.row(i) /= norm;
  }

  std::vector<int> labels = kmeans(embedding, k, rng);

  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (int label : labels) ++sizes[static_cast<std::size_t>(label)];

  // A one-member cluster cannot evolve by crossover; fold it into the
  // cluster whose centroid is nearest to its point.
  Matrix centroids = Matrix::Zero(k, embedding.cols());
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    centroids.row(labels[static_cast<std::size_t>(i)]) += embedding.row(i);
    ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
  }
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) {
      centroids.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }
  }
  for (int c = 0; c < k; ++c) {
    if (sizes[static_cast<std::size_t>(c)] != 1) continue;
    Eigen::Index point = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (labels[static_cast<std::size_t>(i)] == c) {
        point = i;
        break;
      }
    }
    int target = -1;
    double best_d = 0.0;
    for (int other = 0; other < k; ++other) {
      if (other == c || sizes[static_cast<std::size_t>(other)] == 0) continue;
      const double d = (embedding.row(point) - centroids.row(other)).squaredNorm();
      if (target < 0 || d < best_d) {
        best_d = d;
        target = other;
      }
    }
    if (target < 0) continue;  // k == 1 or everything else empty
    labels[static_cast<std::size_t>(point)] = target;
    --sizes[static_cast<std::size_t>(c)];
    ++sizes[static_cast<std::size_t>(target)];
  }

  // Canonical relabeling by first occurrence; empty clusters vanish here.
  std::vector<int> remap(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (int& label : labels) {
    if (remap[static_cast<std::size_t>(label)] < 0) remap[static_cast<std::size_t>(label)] = next++;
    label = remap[static_cast<std::size_t>(label)];
  }
  return Clustering{next, std::move(labels)};
}

}  // namespace dimsp
