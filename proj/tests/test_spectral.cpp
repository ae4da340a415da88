#include <doctest.h>

#include <cmath>
#include <vector>

#include "dimsp/errors.hpp"
#include "dimsp/spectral.hpp"
#include "helpers.hpp"

using namespace dimsp;

namespace {

// block-diagonal 0/1 similarity matrix from block sizes
Matrix block_matrix(const std::vector<int>& sizes) {
  int n = 0;
  for (int s : sizes) n += s;
  Matrix w = Matrix::Zero(n, n);
  int offset = 0;
  for (int s : sizes) {
    w.block(offset, offset, s, s).setOnes();
    offset += s;
  }
  return w;
}

Matrix random_symmetric(int n, RngStream& rng) {
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = 2.0 * rng.next_double() - 1.0;
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

}  // namespace

TEST_CASE("normalized laplacian closed forms") {
  Matrix w1(1, 1);
  w1 << 1.0;
  const Matrix l1 = normalized_laplacian(w1);
  CHECK(l1(0, 0) == 0.0);

  Matrix w2(2, 2);
  w2 << 1.0, 1.0, 1.0, 1.0;
  const Matrix l2 = normalized_laplacian(w2);
  CHECK(l2(0, 0) == doctest::Approx(0.5));
  CHECK(l2(0, 1) == doctest::Approx(-0.5));
  CHECK(l2(1, 0) == doctest::Approx(-0.5));
  CHECK(l2(1, 1) == doctest::Approx(0.5));
  const auto pairs = jacobi_eigen(l2);
  CHECK(pairs.values(0) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(pairs.values(1) == doctest::Approx(1.0));
}

TEST_CASE("zero eigenvalue multiplicity equals the block count") {
  for (const std::vector<int>& sizes :
       {std::vector<int>{3, 4}, std::vector<int>{2, 2, 5}, std::vector<int>{1, 1, 1}}) {
    const Matrix l = normalized_laplacian(block_matrix(sizes));
    const auto pairs = jacobi_eigen(l);
    int zeros = 0;
    for (Eigen::Index i = 0; i < pairs.values.size(); ++i) {
      if (std::abs(pairs.values(i)) <= 1e-6) ++zeros;
    }
    CHECK(zeros == static_cast<int>(sizes.size()));
  }
}

TEST_CASE("laplacian eigenvalues stay in [0, 2]") {
  RngStream rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(20));
    Matrix w(n, n);
    for (int i = 0; i < n; ++i) {
      w(i, i) = 1.0;
      for (int j = i + 1; j < n; ++j) {
        const double v = rng.next_double();
        w(i, j) = v;
        w(j, i) = v;
      }
    }
    const auto pairs = jacobi_eigen(normalized_laplacian(w));
    for (Eigen::Index i = 0; i < pairs.values.size(); ++i) {
      CHECK(pairs.values(i) >= -1e-8);
      CHECK(pairs.values(i) <= 2.0 + 1e-8);
    }
  }
}

TEST_CASE("jacobi solves diagonal matrices exactly") {
  Matrix d = Matrix::Zero(3, 3);
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const auto pairs = smallest_eigenpairs(d, 2);
  REQUIRE(pairs.values.size() == 2);
  CHECK(pairs.values(0) == 0.0);
  CHECK(pairs.values(1) == 1.0);
  CHECK(std::abs(pairs.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(pairs.vectors(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("jacobi eigenpairs satisfy residual and orthogonality bounds") {
  RngStream rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 20;
    const Matrix a = random_symmetric(n, rng);
    const auto pairs = jacobi_eigen(a);
    for (int i = 0; i < n; ++i) {
      const Vector residual = a * pairs.vectors.col(i) - pairs.values(i) * pairs.vectors.col(i);
      CHECK(residual.lpNorm<Eigen::Infinity>() <= 1e-7 * n);
    }
    const Matrix gram = pairs.vectors.transpose() * pairs.vectors;
    CHECK((gram - Matrix::Identity(n, n)).lpNorm<Eigen::Infinity>() <= 1e-7);
    for (int i = 1; i < n; ++i) CHECK(pairs.values(i - 1) <= pairs.values(i));
  }
}

TEST_CASE("jacobi reports non-convergence") {
  RngStream rng(5);
  const Matrix a = random_symmetric(6, rng);
  CHECK_THROWS_AS(jacobi_eigen(a, /*max_sweeps=*/0), ConvergenceFailure);
}

TEST_CASE("laplacian rejects zero degrees") {
  Matrix w = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(normalized_laplacian(w), ZeroDegree);
}

TEST_CASE("eigengap choice of k") {
  Vector a(4);
  a << 0.0, 0.0, 0.9, 1.0;
  CHECK(choose_k(a, 10) == 2);

  Vector b(2);
  b << 0.0, 1.0;
  CHECK(choose_k(b, 10) == 1);

  Vector c(6);
  c << 0.0, 0.0, 0.0, 0.8, 0.9, 1.0;
  CHECK(choose_k(c, 2) == 2);  // the gap alone would pick 3
}

TEST_CASE("cluster on degenerate and block inputs") {
  RngStream rng(6);
  Matrix w1(1, 1);
  w1 << 1.0;
  const Clustering single = cluster(w1, 10, rng);
  CHECK(single.k == 1);
  CHECK(single.labels == std::vector<int>{0});

  RngStream rng2(7);
  const Clustering two = cluster(block_matrix({2, 2}), 10, rng2);
  CHECK(two.k == 2);
  CHECK(two.labels == std::vector<int>{0, 0, 1, 1});

  RngStream rng3(8);
  const Clustering ones = cluster(Matrix::Ones(6, 6), 10, rng3);
  CHECK(ones.k == 1);
  CHECK(ones.labels == std::vector<int>(6, 0));
}

TEST_CASE("cluster recovers random block structures exactly") {
  RngStream rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const int blocks = 2 + static_cast<int>(rng.next_below(4));
    std::vector<int> sizes;
    std::vector<int> expected;
    for (int b = 0; b < blocks; ++b) {
      const int s = 2 + static_cast<int>(rng.next_below(5));
      sizes.push_back(s);
      for (int i = 0; i < s; ++i) expected.push_back(b);
    }
    const Matrix w = block_matrix(sizes);
    RngStream crng = rng.split(static_cast<std::uint64_t>(trial));
    const Clustering result = cluster(w, 10, crng);
    CHECK(result.k == blocks);
    CHECK(test::same_partition(result.labels, expected));
    CHECK(test::same_partition(result.labels, test::connected_components(w)));
  }
}

TEST_CASE("cluster is deterministic for a fixed seed") {
  RngStream gen(10);
  const int n = 15;
  Matrix w(n, n);
  for (int i = 0; i < n; ++i) {
    w(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      const double v = gen.next_double();
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  RngStream a(11), b(11);
  const Clustering ca = cluster(w, 5, a);
  const Clustering cb = cluster(w, 5, b);
  CHECK(ca.k == cb.k);
  CHECK(ca.labels == cb.labels);
}

TEST_CASE("clusters never keep singletons when more than one point exists") {
  RngStream gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(gen.next_below(12));
    Matrix w(n, n);
    for (int i = 0; i < n; ++i) {
      w(i, i) = 1.0;
      for (int j = i + 1; j < n; ++j) {
        const double v = gen.next_double();
        w(i, j) = v;
        w(j, i) = v;
      }
    }
    RngStream crng = gen.split(static_cast<std::uint64_t>(trial));
    const Clustering result = cluster(w, 4, crng);
    std::vector<int> sizes(static_cast<std::size_t>(result.k), 0);
    for (int label : result.labels) ++sizes[static_cast<std::size_t>(label)];
    for (int s : sizes) CHECK(s >= 2);
  }
}
