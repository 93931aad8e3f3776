// Acceptance gate: one criterion per invocation, one [PASS]/[FAIL] line each.
// Usage: acceptance N [cli-path source-dir]   (the extra arguments feed N=9)

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relobs/relobs.hpp"

using namespace relobs;

namespace {

std::string g_cliPath, g_sourceDir;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }

  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// --- criterion 1: truth table --------------------------------------------------

struct TableEntry {
  std::string name;
  std::vector<OperatorPoly> components;
  bool physical;
};

Check criterion1() {
  Check c;
  ParticleSystem sys(3, {Rational(1), Rational(2), Rational(3), Rational(4)});

  auto vecDiff = [](int a, int b) {
    std::vector<OperatorPoly> v;
    for (int ax = 0; ax < 3; ++ax) v.push_back(positionOp(a, ax) - positionOp(b, ax));
    return v;
  };
  auto singleMomentum = [](int j) {
    std::vector<OperatorPoly> v;
    for (int ax = 0; ax < 3; ++ax) v.push_back(momentumOp(j, ax));
    return v;
  };

  std::vector<OperatorPoly> velocityDiff;
  for (int ax = 0; ax < 3; ++ax)
    velocityDiff.push_back(scale(momentumOp(1, ax), GaussianRational(Rational(1))) -
                           scale(momentumOp(2, ax), GaussianRational(Rational(1, 2))));

  std::vector<OperatorPoly> totalMomentum;
  for (int ax = 0; ax < 3; ++ax) {
    OperatorPoly s;
    for (int j = 1; j <= 4; ++j) s += momentumOp(j, ax);
    totalMomentum.push_back(s);
  }

  OperatorPoly pairDistanceSq;
  for (int ax = 0; ax < 3; ++ax) {
    OperatorPoly d = positionOp(1, ax) - positionOp(2, ax);
    pairDistanceSq += mul(d, d);
  }

  OperatorPoly kinetic;
  for (int j = 1; j <= 4; ++j)
    for (int ax = 0; ax < 3; ++ax)
      kinetic += scale(mul(momentumOp(j, ax), momentumOp(j, ax)),
                       GaussianRational(Rational(1) / (2 * sys.mass(j))));

  OperatorPoly hamiltonian = kinetic +
      atomOp(PotentialAtom("V12", {{1, Rational(1)}, {2, Rational(-1)}})) +
      atomOp(PotentialAtom("V34", {{3, Rational(1)}, {4, Rational(-1)}}));

  OperatorPoly cmPositionX;
  for (int j = 1; j <= 4; ++j)
    cmPositionX += scale(positionOp(j, 0), GaussianRational(sys.mass(j) / sys.totalMass()));

  // (z1 - z2) . ((z2 - z3) x (z3 - z4))
  static constexpr int eps[3][3][3] = {
      {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
      {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
      {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  auto diff = [](int a, int b, int ax) { return positionOp(a, ax) - positionOp(b, ax); };
  OperatorPoly triple;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int w = 0; w < 3; ++w)
        if (eps[x][y][w] != 0)
          triple += scale(mul(diff(1, 2, x), mul(diff(2, 3, y), diff(3, 4, w))),
                          GaussianRational(eps[x][y][w]));

  std::vector<TableEntry> table = {
      {"z1-z2", vecDiff(1, 2), false},
      {"p1", singleMomentum(1), false},
      {"p1/m1-p2/m2", velocityDiff, false},
      {"total momentum", totalMomentum, false},
      {"|z1-z2|^2", {pairDistanceSq}, true},
      {"L_z", {angularMomentum(sys, 2)}, false},
      {"kinetic energy", {kinetic}, false},
      {"pair hamiltonian", {hamiltonian}, false},
      {"Z_cm x", {cmPositionX}, false},
      {"triple product", {triple}, true},
  };
  c.require(table.size() == 10, "table must hold ten entries");

  std::vector<std::pair<std::string, SubstitutionMap>> actions;
  actions.emplace_back("translation", translationAction(sys));
  actions.emplace_back("boost", boostAction(sys));
  actions.emplace_back("rotation", rotationAction(sys));

  for (const TableEntry& entry : table) {
    bool physical = true;
    for (const OperatorPoly& component : entry.components) {
      PhysicalityVerdict v = classify(component, sys);
      physical = physical && v.isPhysical;

      // The reported residual must rebuild the substituted operator exactly.
      for (const auto& [name, action] : actions) {
        OperatorPoly rebuilt = component + v.perGenerator.at(name).residual;
        if (!(rebuilt == substitute(component, action))) {
          c.require(false, entry.name + ": " + name + " residual fails to rebuild");
          break;
        }
      }
    }
    c.require(physical == entry.physical,
              entry.name + ": expected " + (entry.physical ? "physical" : "unphysical"));
  }
  return c;
}

// --- criterion 2: random frame maps preserve commutators ------------------------

Check criterion2() {
  Check c;
  std::mt19937 rng(12345);
  auto randInt = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  int built = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const int dim = 1 + trial % 3;

    std::vector<Rational> masses;
    for (int j = 0; j < n; ++j) masses.emplace_back(randInt(1, 5), randInt(1, 3));
    ParticleSystem sys(dim, masses);

    const int cmPos = trial % n;
    bool made = false;
    for (int attempt = 0; attempt < 100 && !made; ++attempt) {
      RationalMatrix t(n, std::vector<Rational>(n));
      std::vector<RowRole> roles(n, RowRole::Internal);
      roles[cmPos] = RowRole::CenterOfMass;
      for (int i = 0; i < n; ++i) {
        if (i == cmPos) {
          for (int j = 0; j < n; ++j) t[i][j] = sys.mass(j + 1) / sys.totalMass();
          continue;
        }
        Rational sum = 0;
        for (int j = 0; j + 1 < n; ++j) {
          t[i][j] = Rational(randInt(-3, 3), randInt(1, 3));
          sum += t[i][j];
        }
        t[i][n - 1] = -sum;
      }
      try {
        LinearFrameMap map(sys, t, roles);
        made = true;
        ++built;

        SubstitutionMap sub = inverseFrameSubstitution(map);
        std::vector<OperatorPoly> zImg, pImg;
        for (int j = 1; j <= n; ++j)
          for (int ax = 0; ax < dim; ++ax) {
            zImg.push_back(substitute(positionOp(j, ax), sub));
            pImg.push_back(substitute(momentumOp(j, ax), sub));
          }
        const int modes = n * dim;
        for (int a = 0; a < modes; ++a)
          for (int b = 0; b < modes; ++b) {
            OperatorPoly zp = commutator(zImg[a], pImg[b]);
            OperatorPoly want = a == b ? constantOp(GaussianRational::i()) : OperatorPoly{};
            if (!(zp == want)) c.require(false, "[z', p'] broken at trial " + std::to_string(trial));
            if (b > a) {
              if (!equalsZero(commutator(zImg[a], zImg[b])))
                c.require(false, "[z', z'] broken at trial " + std::to_string(trial));
              if (!equalsZero(commutator(pImg[a], pImg[b])))
                c.require(false, "[p', p'] broken at trial " + std::to_string(trial));
            }
          }
      } catch (const FrameMapError&) {
        // singular draw, try again
      }
    }
    c.require(made, "could not draw an invertible map for trial " + std::to_string(trial));
    if (!c.ok) break;
  }
  c.require(built == 20, "expected twenty maps, built " + std::to_string(built));
  if (c.ok) c.note("20 maps, all commutators exact");
  return c;
}

// --- criterion 3: two-body harmonic reduction -----------------------------------

Check criterion3() {
  Check c;

  {
    ParticleSystem sys(1, {Rational(1), Rational(3)});
    OperatorPoly h = parseAndLower(
        "1/2*p[1].x^2 + 1/6*p[2].x^2 + 1/2*(z[1].x - z[2].x)^2", sys);
    OperatorPoly reduced = reduceHamiltonian(h, jacobiMap(sys));
    OperatorPoly want =
        scale(mul(momentumOp(1, 0), momentumOp(1, 0)), GaussianRational(Rational(2, 3))) +
        scale(mul(positionOp(1, 0), positionOp(1, 0)), GaussianRational(Rational(1, 2)));
    c.require(reduced == want, "reduced operator differs from p'^2/(2 mu) + (k/2) z'^2");
  }

  {
    ParticleSystem sys(1, {Rational(1), Rational(1)});
    OperatorPoly h = parseAndLower(
        "1/2*p[1].x^2 + 1/2*p[2].x^2 + 1/2*(z[1].x - z[2].x)^2", sys);
    OperatorPoly reduced = reduceHamiltonian(h, jacobiMap(sys));
    OperatorPoly want =
        mul(momentumOp(1, 0), momentumOp(1, 0)) +
        scale(mul(positionOp(1, 0), positionOp(1, 0)), GaussianRational(Rational(1, 2)));
    c.require(reduced == want, "equal-mass reduction is off");
  }

  {
    GridModel m;
    m.masses = {1.0, 1.0};
    m.boxLength = 40.0;
    m.npts = 512;
    PairPotential v;
    v.type = PairPotential::Type::Harmonic;
    v.a = 1;
    v.b = 2;
    v.strength = 1.0;
    m.potential.push_back(v);

    SpectrumResult s = reducedGridSpectrum(m, 4, false);
    const double w = std::sqrt(2.0);
    double worst = 0;
    for (int k = 1; k < 4; ++k) {
      double gap = s.eigenvalues[k] - s.eigenvalues[0];
      worst = std::max(worst, std::abs(gap - k * w) / (k * w));
    }
    c.require(worst <= 1e-3, "grid gaps off by " + fmt(worst));
    if (c.ok) c.note("worst gap error " + fmt(worst));
  }
  return c;
}

// --- criterion 4: acoustic bookkeeping ------------------------------------------

Check criterion4() {
  Check c;
  const int n = 8;
  HarmonicModel ring;
  ring.masses.assign(n, 1.0);
  ring.forceConstants.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    ring.forceConstants[i][i] = 2.0;
    ring.forceConstants[i][(i + 1) % n] -= 1.0;
    ring.forceConstants[i][(i + n - 1) % n] -= 1.0;
  }
  ring.asrEnforced = true;

  NormalModes nm = normalModes(ring);
  auto zeros = [](const NormalModes& m) {
    return std::count_if(m.frequencies.begin(), m.frequencies.end(),
                         [](double w) { return std::abs(w) < 1e-10; });
  };
  c.require(zeros(nm) == 1, "ring must carry exactly one acoustic mode");

  HarmonicModel broken = ring;
  broken.asrEnforced = false;
  for (int i = 0; i < n; ++i) broken.forceConstants[i][i] += 0.1;
  c.require(zeros(normalModes(broken)) == 0, "pinned ring must have no acoustic mode");

  NormalModes rest = removeAcousticModes(nm);
  c.require(rest.frequencies.size() == 7, "expected seven optical modes");
  return c;
}

// --- criterion 5: dispersion and ladder scaling ----------------------------------

GridModel boundPair(int npts) {
  // The ladder exponents need a pair whose internal states stay compact down
  // to the smallest box, so the spring potential is the right probe here.
  GridModel m;
  m.masses = {1.0, 1.0};
  m.boxLength = 40.0;
  m.npts = npts;
  PairPotential v;
  v.type = PairPotential::Type::Harmonic;
  v.a = 1;
  v.b = 2;
  v.strength = 1.0;
  m.potential.push_back(v);
  return m;
}

Check criterion5() {
  Check c;
  GridModel m = boundPair(256);

  {
    double e0 = fullGridSpectrum(m, 0, 1).eigenvalues[0];
    double e1 = fullGridSpectrum(m, 1, 1).eigenvalues[0];
    const double q = 2 * M_PI / m.boxLength;
    const double want = q * q / (2 * 2.0);
    double rel = std::abs((e1 - e0) - want) / want;
    c.require(rel <= 1e-6, "dispersion off by " + fmt(rel));
    c.note("dispersion rel err " + fmt(rel));
  }

  {
    ScalingResult r = cmLadderScaling(m, {10.0, 20.0, 40.0});
    c.require(std::abs(r.cmExponent + 2.0) <= 0.02,
              "cm exponent " + fmt(r.cmExponent));
    c.require(std::abs(r.internalExponent) <= 0.01,
              "internal exponent " + fmt(r.internalExponent));
    c.note("cm slope " + fmt(r.cmExponent) + ", internal slope " + fmt(r.internalExponent));
  }
  return c;
}

// --- criterion 6: Born-Oppenheimer convergence ------------------------------------

Check criterion6() {
  Check c;
  GridModel m;
  m.masses = {1.0, 10.0, 10.0};
  m.roles = {"light", "heavy", "heavy"};
  m.boxLength = 20.0;
  m.npts = 128;
  auto soft = [](int a, int b, double s) {
    PairPotential v;
    v.type = PairPotential::Type::SoftCoulomb;
    v.a = a;
    v.b = b;
    v.strength = s;
    v.width = 1.0;
    return v;
  };
  m.potential.push_back(soft(1, 2, -1.0));
  m.potential.push_back(soft(1, 3, -1.0));
  m.potential.push_back(soft(2, 3, 1.0));

  std::vector<double> errs;
  double relAtHeaviest = 0;
  for (double ratio : {10.0, 100.0, 1000.0, 10000.0}) {
    BOResult bo = boSolve(m, ratio);
    double err = std::abs(bo.nuclearLevels[0] - bo.exactLevels[0]);
    errs.push_back(err);
    relAtHeaviest = err / std::abs(bo.exactLevels[0]);
  }
  for (int i = 0; i + 1 < 3; ++i)
    c.require(errs[i + 1] < errs[i],
              "error fails to decrease: " + fmt(errs[i]) + " -> " + fmt(errs[i + 1]));
  c.require(relAtHeaviest < 1e-3, "relative error at 1e4 is " + fmt(relAtHeaviest));
  c.note("errors " + fmt(errs[0]) + ", " + fmt(errs[1]) + ", " + fmt(errs[2]) +
         "; rel at 1e4 " + fmt(relAtHeaviest));
  return c;
}

// --- criterion 7: spectral functions under box doubling ---------------------------

Check criterion7() {
  Check c;
  auto harmonic = [](double L) {
    GridModel m;
    m.masses = {1.0, 1.0};
    m.boxLength = L;
    m.npts = 256;
    PairPotential v;
    v.type = PairPotential::Type::Harmonic;
    v.a = 1;
    v.b = 2;
    v.strength = 1.0;
    m.potential.push_back(v);
    return m;
  };

  auto dominant = [](const SpectralFunction& f) {
    return *std::max_element(
        f.transitions.begin(), f.transitions.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
  };

  {
    SpectralFunction a = spectralFunction(harmonic(40.0), SpectralVariant::Reduced,
                                          ProbeKind::RelPosition, 0.005, 2.0);
    SpectralFunction b = spectralFunction(harmonic(80.0), SpectralVariant::Reduced,
                                          ProbeKind::RelPosition, 0.005, 2.0);
    double shift = std::abs(dominant(a).first - dominant(b).first);
    c.require(shift < 1e-6, "reduced peak moved by " + fmt(shift));
    c.require(a.sumRuleError < 1e-8, "reduced sum rule error " + fmt(a.sumRuleError));
    c.require(b.sumRuleError < 1e-8, "reduced sum rule error " + fmt(b.sumRuleError));
    c.note("reduced peak shift " + fmt(shift));
  }

  {
    SpectralFunction a = spectralFunction(harmonic(40.0), SpectralVariant::Unreduced,
                                          ProbeKind::AbsPosition, 1e-4, 0.1);
    SpectralFunction b = spectralFunction(harmonic(80.0), SpectralVariant::Unreduced,
                                          ProbeKind::AbsPosition, 1e-4, 0.1);
    auto firstSatellite = [](const SpectralFunction& f) {
      double best = 1e300;
      for (const auto& [w, wt] : f.transitions)
        if (w > 1e-9 && w < best) best = w;
      return best;
    };
    double ratio = firstSatellite(b) / firstSatellite(a);
    c.require(std::abs(ratio - 0.25) <= 0.05 * 0.25,
              "satellite spacing ratio " + fmt(ratio));
    c.require(a.sumRuleError < 1e-8, "unreduced sum rule error " + fmt(a.sumRuleError));
    c.require(b.sumRuleError < 1e-8, "unreduced sum rule error " + fmt(b.sumRuleError));
    c.note("satellite ratio " + fmt(ratio));
  }
  return c;
}

// --- criterion 8: ordering independence -------------------------------------------

Check criterion8() {
  Check c;
  GridModel m;
  m.masses = {1.0, 2.0, 3.0};
  m.boxLength = 20.0;
  m.npts = 128;
  auto spring = [](int a, int b, double k) {
    PairPotential v;
    v.type = PairPotential::Type::Harmonic;
    v.a = a;
    v.b = b;
    v.strength = k;
    return v;
  };
  m.potential.push_back(spring(1, 2, 1.0));
  m.potential.push_back(spring(1, 3, 2.0));
  m.potential.push_back(spring(2, 3, 3.0));
  m.solverCount = 3;

  ParticleSystem sys = symbolicSystem(m);
  LinearFrameMap direct = jacobiMap(sys);
  RationalMatrix t = {{Rational(0), Rational(-1), Rational(1)},
                      {Rational(1), Rational(-2, 5), Rational(-3, 5)},
                      {Rational(1, 6), Rational(2, 6), Rational(3, 6)}};
  LinearFrameMap swapped(sys, t, {RowRole::Internal, RowRole::Internal, RowRole::CenterOfMass});

  SpectrumResult a = reducedGridSpectrum(m, direct, 3, false);
  SpectrumResult b = reducedGridSpectrum(m, swapped, 3, false);

  const double oracle[2] = {std::sqrt(3.0), std::sqrt(11.0 / 3.0)};
  double worstPair = 0, worstOracle = 0;
  for (int i = 1; i < 3; ++i) {
    double ga = a.eigenvalues[i] - a.eigenvalues[0];
    double gb = b.eigenvalues[i] - b.eigenvalues[0];
    worstPair = std::max(worstPair, std::abs(ga - gb));
    worstOracle = std::max(worstOracle, std::abs(ga - oracle[i - 1]));
  }
  c.require(worstPair <= 1e-9, "orderings disagree by " + fmt(worstPair));
  c.require(worstOracle <= 1e-6, "gaps off the normal-mode oracle by " + fmt(worstOracle));
  c.note("ordering gap " + fmt(worstPair) + ", oracle gap " + fmt(worstOracle));
  return c;
}

// --- criterion 9: CLI goldens and printer fixpoint ---------------------------------

std::string runCli(const std::string& args, int& exitCode) {
  std::string cmd = "cd '" + g_sourceDir + "' && '" + g_cliPath + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exitCode = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  exitCode = pclose(pipe);
  return out;
}

Check criterion9() {
  Check c;
  if (g_cliPath.empty() || g_sourceDir.empty()) {
    c.require(false, "usage: acceptance 9 <cli-path> <source-dir>");
    return c;
  }

  struct GoldenCase {
    const char* name;
    const char* args;
  };
  const GoldenCase cases[] = {
      {"classify_dot",
       "classify --system samples/system_n4_d3.json --expr 'dot(z[1]-z[2],z[1]-z[2])'"},
      {"reduce_pair",
       "reduce --system samples/system_pair_d1.json --map jacobi "
       "--expr '1/2*p[1].x^2 + 1/2*p[2].x^2 + 1/2*(z[1].x - z[2].x)^2'"},
      {"invariants_n4", "invariants --system samples/system_n4_d3.json --degree 3"},
      {"modes_ring8", "modes --model samples/harmonic_ring8.json"},
      {"spectrum_pair",
       "spectrum --model samples/grid_pair_harmonic.json --variant reduced --count 5"},
      {"scaling_pair",
       "scaling --model samples/grid_pair_harmonic.json --lengths 10,20,40"},
      {"bo_trimer", "bo --model samples/grid_bo.json --mass-ratios 10,100"},
      {"sf_pair",
       "spectral-function --model samples/grid_pair_harmonic.json --variant reduced "
       "--probe rel-position --omega-max 4 --eta 0.02"},
  };

  for (const GoldenCase& g : cases) {
    int code = 0;
    std::string got = runCli(g.args, code);
    c.require(code == 0, std::string(g.name) + " exited with " + std::to_string(code));

    std::ifstream in(g_sourceDir + "/tests/golden/" + g.name + ".json", std::ios::binary);
    c.require(in.is_open(), std::string("missing golden ") + g.name);
    std::stringstream want;
    want << in.rdbuf();
    c.require(got == want.str(), std::string(g.name) + " differs from its golden output");
  }

  // One expected failure path: a parse error must exit 2.
  {
    int code = 0;
    runCli("classify --system samples/system_n4_d3.json --expr 'z[1].w'", code);
    c.require(WIFEXITED(code) && WEXITSTATUS(code) == 2,
              "parse errors must exit 2, got " + std::to_string(WEXITSTATUS(code)));
  }

  // Printer fixpoint on one hundred generated operators.
  ParticleSystem sys(3, {Rational(1), Rational(1), Rational(1)});
  std::mt19937 rng(99);
  auto randInt = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  int verified = 0;
  for (int it = 0; it < 100; ++it) {
    OperatorPoly poly;
    const int terms = 1 + randInt(0, 3);
    for (int t = 0; t < terms; ++t) {
      Rational re(randInt(-3, 3), randInt(1, 2));
      Rational im(randInt(-3, 3), randInt(1, 2));
      if (re.is_zero() && im.is_zero()) re = 1;
      OperatorPoly term = constantOp(GaussianRational(re, im));

      const int zs = randInt(0, 2);
      for (int f = 0; f < zs; ++f)
        term = mul(term, polyPow(positionOp(randInt(1, 3), randInt(0, 2)), randInt(1, 2)));
      if (randInt(0, 2) == 0) {
        int a = randInt(1, 2), b = a + 1;
        std::map<int, Rational> coeffs = {{a, Rational(randInt(1, 2))},
                                          {b, Rational(-randInt(1, 2))}};
        term = mul(term, atomOp(PotentialAtom(randInt(0, 1) ? "V" : "W", coeffs)));
      }
      // momenta multiplied on the right stay normal ordered, so any particle works
      const int ps = randInt(0, 2);
      for (int f = 0; f < ps; ++f)
        term = mul(term, polyPow(momentumOp(randInt(1, 3), randInt(0, 2)), randInt(1, 2)));
      poly += term;
    }
    if (equalsZero(poly)) continue;

    std::string printed = toString(poly);
    OperatorPoly reparsed = parseAndLower(printed, sys);
    std::string reprinted = toString(reparsed);
    if (!(reparsed == poly) || reprinted != printed) {
      c.require(false, "fixpoint broke at iteration " + std::to_string(it) + ": " + printed);
      break;
    }
    ++verified;
  }
  c.require(verified >= 90, "only " + std::to_string(verified) + " operators verified");
  if (c.ok) c.note(std::to_string(verified) + " round trips");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1-9> [cli-path source-dir]\n");
    return 2;
  }
  const int which = std::atoi(argv[1]);
  if (which < 1 || which > 9) {
    std::fprintf(stderr, "criterion must be between 1 and 9\n");
    return 2;
  }
  if (argc >= 4) {
    g_cliPath = argv[2];
    g_sourceDir = argv[3];
  }

  static const char* descriptions[] = {
      "kinematic truth table over ten observables",
      "random frame maps preserve canonical commutators",
      "two-body harmonic reduction, symbolic and grid",
      "acoustic mode bookkeeping on a ring",
      "center-of-mass dispersion and ladder scaling",
      "Born-Oppenheimer error decays with nuclear mass",
      "spectral functions under box doubling",
      "three-body spectra agree across orderings",
      "command-line goldens and printer fixpoint",
  };
  static const std::function<Check()> runners[] = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9,
  };

  auto start = std::chrono::steady_clock::now();
  Check result;
  try {
    result = runners[which - 1]();
  } catch (const std::exception& e) {
    result.ok = false;
    result.detail = std::string("unhandled: ") + e.what();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();

  std::printf("[%s] criterion %d: %s (%lld ms%s%s)\n", result.ok ? "PASS" : "FAIL", which,
              descriptions[which - 1], static_cast<long long>(ms),
              result.detail.empty() ? "" : "; ", result.detail.c_str());
  return result.ok ? 0 : 1;
}
