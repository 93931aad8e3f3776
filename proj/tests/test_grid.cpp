#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "relobs/grid.hpp"

using namespace relobs;

TEST_CASE("grid geometry") {
  const int n = 8;
  const double L = 4.0;
  CHECK(gridSpacing(n, L) == Catch::Approx(0.5));
  CHECK(gridPoint(0, n, L) == Catch::Approx(-2.0));
  CHECK(gridPoint(n / 2, n, L) == Catch::Approx(0.0));
  CHECK(gridPoint(n - 1, n, L) == Catch::Approx(1.5));

  CHECK(minimalImage(2.6, L) == Catch::Approx(-1.4));
  CHECK(minimalImage(-2.1, L) == Catch::Approx(1.9));
  CHECK(minimalImage(0.3, L) == Catch::Approx(0.3));
  CHECK(minimalImage(2.0, L) == Catch::Approx(-2.0));
}

TEST_CASE("kinetic kernel") {
  const int n = 32;
  const double L = 11.0, mass = 1.5;
  std::vector<double> t = kineticKernel(n, L, mass);
  REQUIRE(static_cast<int>(t.size()) == n);

  SECTION("mirror symmetry makes the circulant hermitian") {
    for (int d = 1; d < n; ++d) CHECK(t[d] == t[n - d]);
  }

  SECTION("constants are annihilated") {
    double sum = 0;
    for (double v : t) sum += v;
    CHECK(std::abs(sum) < 1e-12);
  }

  SECTION("eigenvalues reproduce the dispersion") {
    EigResult e = eighDense(circulantMatrix(t));
    std::vector<double> want;
    for (int k = 0; k < n; ++k) {
      int wrapped = k <= n / 2 ? k : k - n;
      double q = 2 * M_PI * wrapped / L;
      want.push_back(q * q / (2 * mass));
    }
    std::sort(want.begin(), want.end());
    for (int k = 0; k < n; ++k) CHECK(e.values[k] == Catch::Approx(want[k]).margin(1e-9));
  }
}

TEST_CASE("dense eigensolver") {
  SECTION("real symmetric") {
    Mat h(2, 2);
    h << 2, 1, 1, 2;
    EigResult e = eighDense(h, true);
    CHECK(e.values[0] == Catch::Approx(1.0));
    CHECK(e.values[1] == Catch::Approx(3.0));
    for (int k = 0; k < 2; ++k) {
      Vec r = h * e.vectors.col(k) - e.values[k] * e.vectors.col(k);
      CHECK(r.norm() < 1e-12);
    }
  }

  SECTION("complex hermitian") {
    CMat h(2, 2);
    h(0, 0) = 2;
    h(1, 1) = 2;
    h(0, 1) = std::complex<double>(0, 1);
    h(1, 0) = std::complex<double>(0, -1);
    CEigResult e = eighDense(h, true);
    CHECK(e.values[0] == Catch::Approx(1.0));
    CHECK(e.values[1] == Catch::Approx(3.0));
    CVec r = h * e.vectors.col(0) - e.values[0] * e.vectors.col(0);
    CHECK(r.norm() < 1e-12);
  }
}

namespace {

Mat randomSymmetric(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  Mat m = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = 4 * u(rng);
    if (i + 1 < dim) {
      double v = u(rng);
      m(i, i + 1) = v;
      m(i + 1, i) = v;
    }
    int j = (i * 37) % dim;
    double w = 0.1 * u(rng);
    m(i, j) += w;
    m(j, i) = m(i, j);
  }
  m = ((m + m.transpose()) / 2).eval();
  return m;
}

}  // namespace

TEST_CASE("thick-restart Lanczos") {
  SECTION("matches the dense solver beyond the fallback size") {
    const int dim = 300;
    Mat m = randomSymmetric(dim, 7);
    EigResult dense = eighDense(m);
    LanczosOptions opts;
    opts.count = 5;
    opts.wantVectors = true;
    LanczosResult lan = thickRestartLanczos(
        dim, [&](const Vec& x, Vec& y) { y = m * x; }, opts);
    REQUIRE(lan.converged);
    REQUIRE(static_cast<int>(lan.values.size()) == 5);
    for (int k = 0; k < 5; ++k) {
      CHECK(lan.values[k] == Catch::Approx(dense.values[k]).margin(1e-9));
      Vec r = m * lan.vectors.col(k) - lan.values[k] * lan.vectors.col(k);
      CHECK(r.norm() < 1e-7);
    }
  }

  SECTION("small problems fall back to the dense path") {
    const int dim = 24;
    Mat m = randomSymmetric(dim, 11);
    EigResult dense = eighDense(m);
    LanczosOptions opts;
    opts.count = 3;
    LanczosResult lan = thickRestartLanczos(
        dim, [&](const Vec& x, Vec& y) { y = m * x; }, opts);
    for (int k = 0; k < 3; ++k)
      CHECK(lan.values[k] == Catch::Approx(dense.values[k]).margin(1e-11));
  }

  SECTION("degenerate pairs are all found") {
    // Two exactly degenerate lowest levels from a block-diagonal doubling.
    const int half = 90;
    Mat blk = randomSymmetric(half, 23);
    const int dim = 2 * half;
    LanczosOptions opts;
    opts.count = 4;
    EigResult dense = eighDense(blk);
    LanczosResult lan = thickRestartLanczos(
        dim,
        [&](const Vec& x, Vec& y) {
          y.resize(dim);
          y.head(half) = blk * x.head(half);
          y.tail(half) = blk * x.tail(half);
        },
        opts);
    CHECK(lan.values[0] == Catch::Approx(dense.values[0]).margin(1e-8));
    CHECK(lan.values[1] == Catch::Approx(dense.values[0]).margin(1e-8));
    CHECK(lan.values[2] == Catch::Approx(dense.values[1]).margin(1e-8));
    CHECK(lan.values[3] == Catch::Approx(dense.values[1]).margin(1e-8));
  }

  SECTION("requesting too much of the basis is an error") {
    LanczosOptions opts;
    opts.count = 79;
    CHECK_THROWS_AS(thickRestartLanczos(500, [](const Vec&, Vec&) {}, opts), Error);
  }
}
