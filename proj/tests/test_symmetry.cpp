#include <catch2/catch_amalgamated.hpp>

#include "relobs/symmetry.hpp"

using namespace relobs;

namespace {

ParticleSystem sys3(int n) { return ParticleSystem(3, std::vector<Rational>(n, Rational(1))); }

OperatorPoly pairDot(int a, int b, int dim) {
  OperatorPoly out;
  for (int ax = 0; ax < dim; ++ax) {
    OperatorPoly d = positionOp(a, ax) - positionOp(b, ax);
    out += mul(d, d);
  }
  return out;
}

}  // namespace

TEST_CASE("translation action") {
  ParticleSystem sys = sys3(2);
  OperatorPoly img = substitute(positionOp(1, 0), translationAction(sys));
  CHECK(img == positionOp(1, 0) + symbolOp(SymbolKind::Translation, 0));
  CHECK(substitute(momentumOp(1, 0), translationAction(sys)) == momentumOp(1, 0));

  SECTION("numeric shifts compose") {
    OperatorPoly probe = positionOp(1, 0) + positionOp(2, 0);
    auto shift = [&](Rational x) {
      return translationBy(sys, {x, Rational(0), Rational(0)});
    };
    OperatorPoly once = substitute(substitute(probe, shift(Rational(1, 2))), shift(Rational(1, 3)));
    OperatorPoly direct = substitute(probe, shift(Rational(5, 6)));
    CHECK(once == direct);
  }
}

TEST_CASE("boost action scales with mass") {
  ParticleSystem sys(3, {Rational(1), Rational(3)});
  OperatorPoly img = substitute(momentumOp(2, 0), boostAction(sys));
  CHECK(img == momentumOp(2, 0) + scale(symbolOp(SymbolKind::Boost, 0), GaussianRational(3)));
  CHECK(substitute(positionOp(2, 0), boostAction(sys)) == positionOp(2, 0));

  SECTION("mass-weighted velocity difference is boost invariant") {
    OperatorPoly rel = scale(momentumOp(1, 0), GaussianRational(Rational(1))) -
                       scale(momentumOp(2, 0), GaussianRational(Rational(1, 3)));
    CHECK(checkInvariance(rel, boostAction(sys)).invariant);
  }
}

TEST_CASE("rotation action to first order") {
  ParticleSystem sys = sys3(1);
  // (theta x z)_x = theta_y z_z - theta_z z_y
  OperatorPoly expected = positionOp(1, 0) +
                          mul(symbolOp(SymbolKind::Rotation, 1), positionOp(1, 2)) -
                          mul(symbolOp(SymbolKind::Rotation, 2), positionOp(1, 1));
  CHECK(substitute(positionOp(1, 0), rotationAction(sys)) == expected);

  SECTION("momenta rotate the same way") {
    OperatorPoly got = substitute(momentumOp(1, 2), rotationAction(sys));
    OperatorPoly want = momentumOp(1, 2) +
                        mul(symbolOp(SymbolKind::Rotation, 0), momentumOp(1, 1)) -
                        mul(symbolOp(SymbolKind::Rotation, 1), momentumOp(1, 0));
    CHECK(got == want);
  }

  SECTION("one dimension has no rotations") {
    ParticleSystem line(1, {Rational(1)});
    CHECK_THROWS_AS(rotationAction(line), DimensionError);
  }

  SECTION("two dimensions keep the single generator") {
    ParticleSystem plane(2, {Rational(1)});
    OperatorPoly got = substitute(positionOp(1, 0), rotationAction(plane));
    OperatorPoly want = positionOp(1, 0) -
                        mul(symbolOp(SymbolKind::Rotation, 2), positionOp(1, 1));
    CHECK(got == want);
  }
}

TEST_CASE("angular momentum") {
  ParticleSystem sys = sys3(2);
  OperatorPoly lz = angularMomentum(sys, 2);

  SECTION("generates rotations about z") {
    CHECK(commutator(lz, positionOp(1, 0)) == scale(positionOp(1, 1), GaussianRational::i()));
    CHECK(commutator(lz, positionOp(1, 1)) == scale(positionOp(1, 0), -GaussianRational::i()));
    CHECK(equalsZero(commutator(lz, positionOp(1, 2))));
  }

  SECTION("so(3) bracket closes") {
    OperatorPoly lx = angularMomentum(sys, 0);
    OperatorPoly ly = angularMomentum(sys, 1);
    CHECK(commutator(lx, ly) == scale(lz, GaussianRational::i()));
  }

  SECTION("rejected outside three dimensions") {
    ParticleSystem plane(2, {Rational(1)});
    CHECK_THROWS_AS(angularMomentum(plane, 2), DimensionError);
  }
}

TEST_CASE("classification verdicts") {
  ParticleSystem sys = sys3(3);

  SECTION("pair distance squared is physical") {
    PhysicalityVerdict v = classify(pairDot(1, 2, 3), sys);
    CHECK(v.isPhysical);
    for (const auto& [name, rep] : v.perGenerator) {
      INFO(name);
      CHECK(rep.invariant);
      CHECK(equalsZero(rep.residual));
    }
  }

  SECTION("single momentum fails the boost test only where expected") {
    PhysicalityVerdict v = classify(momentumOp(1, 0), sys);
    CHECK_FALSE(v.isPhysical);
    CHECK(v.perGenerator.at("translation").invariant);
    CHECK_FALSE(v.perGenerator.at("boost").invariant);
    CHECK_FALSE(v.perGenerator.at("rotation").invariant);
  }

  SECTION("pair potential atom is physical") {
    OperatorPoly v12 = atomOp(PotentialAtom("V", {{1, Rational(1)}, {2, Rational(-1)}}));
    CHECK(classify(v12, sys).isPhysical);
  }

  SECTION("residual reports reproduce the substituted operator") {
    OperatorPoly op = momentumOp(2, 1);
    PhysicalityVerdict v = classify(op, sys);
    OperatorPoly rebuilt = op + v.perGenerator.at("boost").residual;
    CHECK(rebuilt == substitute(op, boostAction(sys)));
  }

  SECTION("dual rotation route agrees on angular momentum") {
    // L_z transforms as a vector: not invariant, but the two routes must agree.
    PhysicalityVerdict v = classify(angularMomentum(sys, 2), sys);
    CHECK_FALSE(v.perGenerator.at("rotation").invariant);
    CHECK(v.perGenerator.at("translation").invariant == false);
  }

  SECTION("rotation-invariant scalars pass the dual check") {
    OperatorPoly kinetic;
    for (int j = 1; j <= 3; ++j)
      for (int ax = 0; ax < 3; ++ax) kinetic += mul(momentumOp(j, ax), momentumOp(j, ax));
    PhysicalityVerdict v = classify(kinetic, sys);
    CHECK(v.perGenerator.at("rotation").invariant);
    CHECK(v.perGenerator.at("translation").invariant);
    CHECK_FALSE(v.perGenerator.at("boost").invariant);
    CHECK_FALSE(v.isPhysical);
  }
}
