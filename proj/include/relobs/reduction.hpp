#pragma once

#include <array>
#include <string>
#include <vector>

#include "relobs/frame_map.hpp"
#include "relobs/substitution.hpp"

namespace relobs {

enum class CmDependence { None, PositionDependent, MomentumDependent, Both };

inline std::string toString(CmDependence d) {
  switch (d) {
    case CmDependence::None: return "none";
    case CmDependence::PositionDependent: return "positionDependent";
    case CmDependence::MomentumDependent: return "momentumDependent";
    case CmDependence::Both: return "both";
  }
  return "none";
}

/// An operator rewritten in frame-map coordinates, tagged with how it touches
/// the center-of-mass row.
struct ReducedOperator {
  OperatorPoly expr;
  CmDependence cmDependence = CmDependence::None;
  int cmRow = 0;  // 1-based row index in the new coordinates; 0 when absent
  int dim = 1;
};

/// Substitution sending old coordinates to the new frame:
/// z_j = sum_i (T^-1)_ji z'_i and p_j = sum_i T_ij p'_i (since S^-1 = T^T).
inline SubstitutionMap inverseFrameSubstitution(const LinearFrameMap& map) {
  const int n = map.system().count();
  SubstitutionMap s(map.system().dim);
  for (int j = 0; j < n; ++j) {
    SubstitutionMap::AffineVector zv;
    for (int i = 0; i < n; ++i)
      if (!map.tInverse()[j][i].is_zero()) zv.linear[i + 1] = map.tInverse()[j][i];
    s.setPositionAffine(j + 1, std::move(zv));
    SubstitutionMap::AffineVector pv;
    for (int i = 0; i < n; ++i)
      if (!map.t()[i][j].is_zero()) pv.linear[i + 1] = map.t()[i][j];
    s.setMomentumAffine(j + 1, std::move(pv));
  }
  return s;
}

inline CmDependence scanCmDependence(const OperatorPoly& op, int cmRow) {
  bool pos = false, mom = false;
  for (const auto& [m, c] : op.terms) {
    for (const auto& [ix, e] : m.zs) pos = pos || ix.particle == cmRow;
    for (const auto& [ix, e] : m.ps) mom = mom || ix.particle == cmRow;
    for (const auto& atom : m.atoms) pos = pos || atom.coeffs.count(cmRow) > 0;
  }
  if (pos && mom) return CmDependence::Both;
  if (pos) return CmDependence::PositionDependent;
  if (mom) return CmDependence::MomentumDependent;
  return CmDependence::None;
}

inline ReducedOperator applyFrameMap(const OperatorPoly& op, const LinearFrameMap& map) {
  ReducedOperator r;
  r.expr = substitute(op, inverseFrameSubstitution(map));
  r.cmRow = map.cmRow();
  r.dim = map.system().dim;
  r.cmDependence = r.cmRow == 0 ? CmDependence::None : scanCmDependence(r.expr, r.cmRow);
  return r;
}

/// Pins the center-of-mass momentum to a numeric sector value (rest frame by
/// default). Position dependence on the removed coordinate is unprojectable.
inline OperatorPoly projectCM(const ReducedOperator& r,
                              const std::array<Rational, 3>& restFrameMomentum = {}) {
  if (r.cmDependence == CmDependence::PositionDependent || r.cmDependence == CmDependence::Both)
    throw CMPositionDependence("expression depends on the center-of-mass position");
  if (r.cmRow == 0) return r.expr;
  std::map<CanonicalIndex, OperatorPoly> images;
  for (int ax = 0; ax < r.dim; ++ax)
    images[{Kind::Momentum, r.cmRow, ax}] = constantOp(GaussianRational(restFrameMomentum[ax]));
  return substitute(r.expr, SubstitutionMap::fromImages(r.dim, std::move(images)));
}

inline OperatorPoly reduceHamiltonian(const OperatorPoly& h, const LinearFrameMap& map) {
  return projectCM(applyFrameMap(h, map));
}

/// All pairwise dot products of the given internal position vectors and, at
/// degree 3, the triple products z_i . (z_j x z_k) with i < j < k. Every
/// element is rotation invariant by construction.
inline std::vector<OperatorPoly> rotationalInvariantBasis(const std::vector<int>& internalVectors,
                                                          int maxDegree) {
  if (maxDegree < 2 || maxDegree > 3)
    throw DimensionError("invariant basis degree must be 2 or 3");
  static constexpr int eps[3][3][3] = {
      {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
      {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
      {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  std::vector<OperatorPoly> basis;
  const int n = static_cast<int>(internalVectors.size());
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      OperatorPoly dot;
      for (int ax = 0; ax < 3; ++ax)
        dot += mul(positionOp(internalVectors[a], ax), positionOp(internalVectors[b], ax));
      basis.push_back(std::move(dot));
    }
  if (maxDegree == 3)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          OperatorPoly triple;
          for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y)
              for (int w = 0; w < 3; ++w) {
                if (eps[x][y][w] == 0) continue;
                OperatorPoly term = mul(mul(positionOp(internalVectors[a], x),
                                            positionOp(internalVectors[b], y)),
                                        positionOp(internalVectors[c], w));
                triple += scale(term, GaussianRational(eps[x][y][w]));
              }
          basis.push_back(std::move(triple));
        }
  return basis;
}

}  // namespace relobs
