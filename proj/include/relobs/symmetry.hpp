#pragma once

#include <array>
#include <map>
#include <string>

#include "relobs/particle_system.hpp"
#include "relobs/substitution.hpp"

namespace relobs {

/// z[j] -> z[j] + a for every particle, with a the formal translation vector.
inline SubstitutionMap translationAction(const ParticleSystem& sys) {
  SubstitutionMap s(sys.dim);
  for (int j = 1; j <= sys.count(); ++j) {
    SubstitutionMap::AffineVector v;
    v.linear[j] = 1;
    v.symbol = 1;
    s.setPositionAffine(j, std::move(v));
  }
  return s;
}

/// Finite translation by a fixed rational vector.
inline SubstitutionMap translationBy(const ParticleSystem& sys,
                                     const std::array<Rational, 3>& vec) {
  SubstitutionMap s(sys.dim);
  for (int j = 1; j <= sys.count(); ++j) {
    SubstitutionMap::AffineVector v;
    v.linear[j] = 1;
    v.constant = vec;
    s.setPositionAffine(j, std::move(v));
  }
  return s;
}

/// p[j] -> p[j] + m_j v with v the formal boost vector.
inline SubstitutionMap boostAction(const ParticleSystem& sys) {
  SubstitutionMap s(sys.dim);
  for (int j = 1; j <= sys.count(); ++j) {
    SubstitutionMap::AffineVector v;
    v.linear[j] = 1;
    v.symbol = sys.mass(j);
    s.setMomentumAffine(j, std::move(v));
  }
  return s;
}

/// z[j] -> z[j] + theta x z[j] and p[j] -> p[j] + theta x p[j]; the rotation
/// parameters are nilpotent, so this is exact to first order by construction.
inline SubstitutionMap rotationAction(const ParticleSystem& sys) {
  if (sys.dim < 2) throw DimensionError("rotations need dimension >= 2");
  SubstitutionMap s(sys.dim);
  for (int j = 1; j <= sys.count(); ++j) {
    s.addRotationTerm(Kind::Position, j);
    s.addRotationTerm(Kind::Momentum, j);
  }
  return s;
}

/// Component beta of total angular momentum, sum_j (z_j x p_j)_beta.
inline OperatorPoly angularMomentum(const ParticleSystem& sys, int beta) {
  if (sys.dim != 3) throw DimensionError("angular momentum needs dimension 3");
  if (beta < 0 || beta > 2) throw DimensionError("angular momentum axis must be 0..2");
  static constexpr int eps[3][3][3] = {
      {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
      {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
      {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  OperatorPoly L;
  for (int j = 1; j <= sys.count(); ++j)
    for (int g = 0; g < 3; ++g)
      for (int d = 0; d < 3; ++d) {
        int sign = eps[beta][g][d];
        if (sign == 0) continue;
        OperatorPoly term = mul(positionOp(j, g), momentumOp(j, d));
        L += scale(term, GaussianRational(sign));
      }
  return L;
}

struct InvarianceReport {
  bool invariant = false;
  OperatorPoly residual;  // substitute(op) - op; zero iff invariant
};

inline InvarianceReport checkInvariance(const OperatorPoly& op, const SubstitutionMap& action) {
  InvarianceReport r;
  r.residual = substitute(op, action) - op;
  r.invariant = equalsZero(r.residual);
  return r;
}

struct PhysicalityVerdict {
  std::map<std::string, InvarianceReport> perGenerator;
  bool isPhysical = false;
};

/// Tests invariance under each kinematic generator. Physical means invariant
/// under all generators available in this dimension. In three dimensions,
/// atom-free symbol-free operators get a second, independent rotation route:
/// the theta_beta component of the substitution residual must equal
/// i [L_beta, op] exactly, otherwise the two routes disagree and the result
/// cannot be trusted.
inline PhysicalityVerdict classify(const OperatorPoly& op, const ParticleSystem& sys) {
  PhysicalityVerdict v;
  v.perGenerator["translation"] = checkInvariance(op, translationAction(sys));
  v.perGenerator["boost"] = checkInvariance(op, boostAction(sys));
  if (sys.dim >= 2) {
    InvarianceReport rot = checkInvariance(op, rotationAction(sys));
    if (sys.dim == 3 && atomFree(op) && symbolFree(op)) {
      for (int beta = 0; beta < 3; ++beta) {
        OperatorPoly fromResidual =
            coefficientOf(rot.residual, FormalSymbol{SymbolKind::Rotation, beta});
        OperatorPoly fromCommutator =
            scale(commutator(angularMomentum(sys, beta), op), GaussianRational::i());
        if (!(fromResidual == fromCommutator))
          throw InconsistentRotationCheck(
              "substitution and commutator rotation residuals disagree on axis " +
              std::to_string(beta));
      }
    }
    v.perGenerator["rotation"] = std::move(rot);
  }
  v.isPhysical = true;
  for (const auto& [name, rep] : v.perGenerator) v.isPhysical = v.isPhysical && rep.invariant;
  return v;
}

}  // namespace relobs
