#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "relobs/errors.hpp"

#ifdef RELOBS_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace relobs {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline double gridSpacing(int npts, double boxLength) { return boxLength / npts; }

/// Grid point i in [-L/2, L/2), centered so index npts/2 sits at the origin.
inline double gridPoint(int i, int npts, double boxLength) {
  return (i - npts / 2) * gridSpacing(npts, boxLength);
}

inline double minimalImage(double x, double boxLength) {
  double y = std::fmod(x + 0.5 * boxLength, boxLength);
  if (y < 0) y += boxLength;
  return y - 0.5 * boxLength;
}

/// First column of the circulant kinetic matrix for one particle on a
/// periodic grid: the inverse transform of eps(k) = k^2 / (2 mass) over the
/// discrete momenta k_n = 2 pi wrap(n) / L. Symmetry t[d] = t[N-d] is
/// enforced by mirroring so assembled Hamiltonians are exactly Hermitian.
inline std::vector<double> kineticKernel(int npts, double boxLength, double mass) {
  std::vector<double> eps(npts);
  for (int n = 0; n < npts; ++n) {
    int wrapped = n >= npts / 2 ? n - npts : n;
    double k = 2.0 * M_PI * wrapped / boxLength;
    eps[n] = k * k / (2.0 * mass);
  }
  std::vector<double> t(npts, 0.0);
  for (int d = 0; d <= npts / 2; ++d) {
    double sum = 0;
    for (int n = 0; n < npts; ++n) sum += eps[n] * std::cos(2.0 * M_PI * n * d / npts);
    t[d] = sum / npts;
    if (d > 0 && d < npts) t[(npts - d) % npts] = t[d];
  }
  return t;
}

/// Dense circulant matrix from its first column; symmetric kernels give a
/// symmetric matrix bit-for-bit.
inline Mat circulantMatrix(const std::vector<double>& kernel) {
  const int n = static_cast<int>(kernel.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = kernel[((i - j) % n + n) % n];
  return m;
}

// --- dense eigensolvers ----------------------------------------------------

struct EigResult {
  Vec values;   // ascending
  Mat vectors;  // columns, empty unless requested
};

struct CEigResult {
  Vec values;
  CMat vectors;
};

inline EigResult eighDense(Mat h, bool wantVectors = false) {
  const int n = static_cast<int>(h.rows());
  EigResult r;
  r.values.resize(n);
#ifdef RELOBS_HAVE_LAPACKE
  int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, wantVectors ? 'V' : 'N', 'L', n, h.data(), n,
                            r.values.data());
  if (info != 0) throw NumericalError("dsyevd failed with info " + std::to_string(info));
  if (wantVectors) r.vectors = std::move(h);
#else
  Eigen::SelfAdjointEigenSolver<Mat> es(h, wantVectors ? Eigen::ComputeEigenvectors
                                                       : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolve failed");
  r.values = es.eigenvalues();
  if (wantVectors) r.vectors = es.eigenvectors();
#endif
  return r;
}

inline CEigResult eighDense(CMat h, bool wantVectors = false) {
  const int n = static_cast<int>(h.rows());
  CEigResult r;
  r.values.resize(n);
#ifdef RELOBS_HAVE_LAPACKE
  int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, wantVectors ? 'V' : 'N', 'L', n,
                            reinterpret_cast<lapack_complex_double*>(h.data()), n,
                            r.values.data());
  if (info != 0) throw NumericalError("zheevd failed with info " + std::to_string(info));
  if (wantVectors) r.vectors = std::move(h);
#else
  Eigen::SelfAdjointEigenSolver<CMat> es(h, wantVectors ? Eigen::ComputeEigenvectors
                                                        : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolve failed");
  r.values = es.eigenvalues();
  if (wantVectors) r.vectors = es.eigenvectors();
#endif
  return r;
}

// --- thick-restart Lanczos ---------------------------------------------------

struct LanczosOptions {
  int count = 6;          // converged lowest eigenpairs wanted
  int basisSize = 80;     // restart when the basis reaches this size
  int maxRestarts = 400;
  double tol = 1e-12;     // residual tolerance, relative to the value scale
  std::uint64_t seed = 0x5eedULL;
  bool wantVectors = false;
};

struct LanczosResult {
  Vec values;
  Mat vectors;
  int matvecs = 0;
  bool converged = false;
};

/// Lowest eigenpairs of a symmetric operator given only its action. Full
/// reorthogonalization inside a bounded basis, thick restart keeping the
/// lowest Ritz pairs. Deterministic for a fixed seed.
inline LanczosResult thickRestartLanczos(int dim,
                                         const std::function<void(const Vec&, Vec&)>& apply,
                                         const LanczosOptions& opts = {}) {
  if (opts.count >= opts.basisSize - 4)
    throw NumericalError("lanczos basis too small for requested count");
  if (dim <= opts.basisSize + 1) {
    // Cheaper and exact: build the dense matrix column by column.
    Mat h(dim, dim);
    Vec e = Vec::Zero(dim), col(dim);
    for (int j = 0; j < dim; ++j) {
      e[j] = 1;
      apply(e, col);
      h.col(j) = col;
      e[j] = 0;
    }
    EigResult full = eighDense(std::move(h), opts.wantVectors);
    LanczosResult r;
    int take = std::min(opts.count, dim);
    r.values = full.values.head(take);
    if (opts.wantVectors) r.vectors = full.vectors.leftCols(take);
    r.matvecs = dim;
    r.converged = true;
    return r;
  }

  const int m = opts.basisSize;
  Mat basis(dim, m + 1);
  Mat tmat = Mat::Zero(m + 1, m + 1);  // projected operator, arrowhead after restart
  LanczosResult result;

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = gauss(rng);
  v.normalize();
  basis.col(0) = v;

  int k = 0;  // retained Ritz vectors at the current restart
  Vec work(dim);
  auto reorthogonalize = [&](Vec& w, int upto) {
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < upto; ++i) w -= basis.col(i).dot(w) * basis.col(i);
  };

  for (int restart = 0; restart < opts.maxRestarts; ++restart) {
    int j = k;
    while (j < m) {
      apply(basis.col(j), work);
      ++result.matvecs;
      double alpha = basis.col(j).dot(work);
      tmat(j, j) = alpha;
      reorthogonalize(work, j + 1);
      double beta = work.norm();
      if (beta < 1e-14) {
        // Invariant subspace found; replace with a fresh random direction.
        for (int i = 0; i < dim; ++i) work[i] = gauss(rng);
        reorthogonalize(work, j + 1);
        beta = work.norm();
      }
      tmat(j + 1, j) = beta;
      tmat(j, j + 1) = beta;
      basis.col(j + 1) = work / beta;
      ++j;
    }

    Eigen::SelfAdjointEigenSolver<Mat> small(tmat.topLeftCorner(m, m));
    if (small.info() != Eigen::Success) throw NumericalError("lanczos projection eigensolve failed");
    const Vec& theta = small.eigenvalues();
    const Mat& s = small.eigenvectors();
    double scale = std::max(std::abs(theta[0]), std::abs(theta[m - 1]));
    double betaM = tmat(m, m - 1);

    bool done = true;
    for (int i = 0; i < opts.count; ++i)
      done = done && std::abs(betaM * s(m - 1, i)) <= opts.tol * std::max(scale, 1.0);

    int keep = std::min(opts.count + 20, m - 2);
    Mat newBasis = basis.leftCols(m) * s.leftCols(keep);

    if (done) {
      result.values = theta.head(opts.count);
      if (opts.wantVectors) result.vectors = newBasis.leftCols(opts.count);
      result.converged = true;
      return result;
    }

    basis.leftCols(keep) = newBasis;
    basis.col(keep) = basis.col(m);  // residual direction continues the recurrence
    tmat.setZero();
    for (int i = 0; i < keep; ++i) {
      tmat(i, i) = theta[i];
      tmat(keep, i) = betaM * s(m - 1, i);
      tmat(i, keep) = tmat(keep, i);
    }
    k = keep;
  }
  throw NumericalError("lanczos failed to converge within the restart budget");
}

}  // namespace relobs
