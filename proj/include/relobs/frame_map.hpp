#pragma once

#include <utility>
#include <vector>

#include "relobs/particle_system.hpp"

namespace relobs {

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix identityMatrix(int n) {
  RationalMatrix m(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// Exact Gauss-Jordan inverse; throws FrameMapError on a singular matrix.
inline RationalMatrix invertMatrix(RationalMatrix a) {
  const int n = static_cast<int>(a.size());
  RationalMatrix inv = identityMatrix(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (!a[row][col].is_zero()) { pivot = row; break; }
    if (pivot < 0) throw FrameMapError("frame matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational scale = a[col][col];
    for (int j = 0; j < n; ++j) { a[col][j] /= scale; inv[col][j] /= scale; }
    for (int row = 0; row < n; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      Rational f = a[row][col];
      for (int j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline RationalMatrix transpose(const RationalMatrix& a) {
  const int n = static_cast<int>(a.size());
  RationalMatrix t(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[j][i] = a[i][j];
  return t;
}

enum class RowRole { Internal, CenterOfMass };

/// Invertible linear change of particle coordinates z' = T z with the
/// canonically conjugate momenta p' = S p, S = (T^-1)^T. One row must be the
/// mass-weighted average (the center of mass) and every other row must be
/// translation invariant (coefficients summing to zero). That structure makes
/// S's center-of-mass row the all-ones vector, so the conjugate momentum of
/// the center of mass is the total momentum.
class LinearFrameMap {
 public:
  LinearFrameMap(ParticleSystem system, RationalMatrix t, std::vector<RowRole> roles)
      : LinearFrameMap(std::move(system), std::move(t), std::move(roles), true) {}

  /// Skips the row-structure checks (still requires invertibility). Exists so
  /// maps like the identity can exercise the transport machinery in tests and
  /// diagnostics without pretending to define a center of mass.
  static LinearFrameMap raw(ParticleSystem system, RationalMatrix t, std::vector<RowRole> roles) {
    return LinearFrameMap(std::move(system), std::move(t), std::move(roles), false);
  }

  const ParticleSystem& system() const { return m_sys; }
  const RationalMatrix& t() const { return m_t; }
  const RationalMatrix& tInverse() const { return m_tInv; }
  const RationalMatrix& s() const { return m_s; }
  const std::vector<RowRole>& roles() const { return m_roles; }

  /// 1-based index of the center-of-mass row, or 0 when none is declared.
  int cmRow() const { return m_cmRow; }

 private:
  LinearFrameMap(ParticleSystem system, RationalMatrix t, std::vector<RowRole> roles,
                 bool checkRows)
      : m_sys(std::move(system)), m_t(std::move(t)), m_roles(std::move(roles)) {
    const int n = m_sys.count();
    if (static_cast<int>(m_t.size()) != n) throw FrameMapError("frame matrix must be N x N");
    for (const auto& row : m_t)
      if (static_cast<int>(row.size()) != n) throw FrameMapError("frame matrix must be N x N");
    if (static_cast<int>(m_roles.size()) != n)
      throw FrameMapError("need one row role per coordinate");

    for (int i = 0; i < n; ++i)
      if (m_roles[i] == RowRole::CenterOfMass) {
        if (m_cmRow != 0) throw FrameMapError("more than one center-of-mass row");
        m_cmRow = i + 1;
      }

    if (checkRows) {
      if (m_cmRow == 0) throw FrameMapError("exactly one center-of-mass row required");
      Rational total = m_sys.totalMass();
      for (int i = 0; i < n; ++i) {
        Rational sum = 0;
        for (int j = 0; j < n; ++j) sum += m_t[i][j];
        if (m_roles[i] == RowRole::CenterOfMass) {
          for (int j = 0; j < n; ++j)
            if (m_t[i][j] != m_sys.mass(j + 1) / total)
              throw FrameMapError("center-of-mass row must be mass_j / total mass");
        } else if (!sum.is_zero()) {
          throw FrameMapError("internal row " + std::to_string(i + 1) +
                              " is not translation invariant");
        }
      }
    }

    m_tInv = invertMatrix(m_t);
    m_s = transpose(m_tInv);
  }

  ParticleSystem m_sys;
  RationalMatrix m_t, m_tInv, m_s;
  std::vector<RowRole> m_roles;
  int m_cmRow = 0;
};

/// Sequential relative coordinates: new coordinate k is particle k+1 measured
/// from the center of mass of particles 1..k, and the last row is the total
/// center of mass.
inline LinearFrameMap jacobiMap(const ParticleSystem& sys) {
  const int n = sys.count();
  if (n < 2) throw FrameMapError("relative coordinates need at least two particles");
  RationalMatrix t(n, std::vector<Rational>(n, 0));
  std::vector<RowRole> roles(n, RowRole::Internal);
  Rational partial = 0;
  for (int k = 0; k < n - 1; ++k) {
    partial += sys.mass(k + 1);
    for (int j = 0; j < k + 1; ++j) t[k][j] = -sys.mass(j + 1) / partial;
    t[k][k + 1] = 1;
  }
  Rational total = sys.totalMass();
  for (int j = 0; j < n; ++j) t[n - 1][j] = sys.mass(j + 1) / total;
  roles[n - 1] = RowRole::CenterOfMass;
  return LinearFrameMap(sys, std::move(t), std::move(roles));
}

}  // namespace relobs
