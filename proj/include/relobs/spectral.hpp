#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "relobs/grid.hpp"
#include "relobs/models.hpp"
#include "relobs/reduction.hpp"

namespace relobs {

// --- harmonic normal modes ---------------------------------------------------

struct NormalModes {
  std::vector<double> frequencies;  // ascending; exact zeros for acoustic modes
  Mat modeVectors;                  // mass-weighted eigenvectors, columns
};

/// Eigenfrequencies of M^{-1/2} K M^{-1/2}. Eigenvalues in [-1e-12, 1e-12]
/// are snapped to zero (solver noise sits orders of magnitude above the
/// square root otherwise); anything below -1e-12 is a genuine instability.
inline NormalModes normalModes(const HarmonicModel& model) {
  model.validate();
  const int n = static_cast<int>(model.masses.size());
  Mat d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d(i, j) = model.forceConstants[i][j] / std::sqrt(model.masses[i] * model.masses[j]);
  EigResult e = eighDense(std::move(d), true);
  NormalModes out;
  out.frequencies.resize(n);
  for (int i = 0; i < n; ++i) {
    double lambda = e.values[i];
    if (lambda < -1e-12)
      throw UnstableModel("negative eigenvalue " + std::to_string(lambda) +
                          " in the dynamical matrix");
    out.frequencies[i] = std::abs(lambda) <= 1e-12 ? 0.0 : std::sqrt(lambda);
  }
  out.modeVectors = std::move(e.vectors);
  return out;
}

inline NormalModes removeAcousticModes(const NormalModes& modes) {
  NormalModes out;
  std::vector<int> kept;
  for (int i = 0; i < static_cast<int>(modes.frequencies.size()); ++i)
    if (std::abs(modes.frequencies[i]) >= 1e-10) {
      out.frequencies.push_back(modes.frequencies[i]);
      kept.push_back(i);
    }
  out.modeVectors.resize(modes.modeVectors.rows(), static_cast<int>(kept.size()));
  for (int c = 0; c < static_cast<int>(kept.size()); ++c)
    out.modeVectors.col(c) = modes.modeVectors.col(kept[c]);
  return out;
}

// --- symbolic bridge to the grid --------------------------------------------

inline ParticleSystem symbolicSystem(const GridModel& model) {
  std::vector<Rational> masses;
  for (double m : model.masses) masses.emplace_back(m);  // doubles are dyadic, conversion exact
  return ParticleSystem(1, std::move(masses));
}

/// H = sum_j p_j^2 / 2 m_j + one atom per pair potential, names "pot<k>".
inline OperatorPoly symbolicHamiltonian(const GridModel& model) {
  OperatorPoly h;
  for (int j = 1; j <= model.count(); ++j) {
    Rational m(model.masses[j - 1]);
    h += scale(polyPow(momentumOp(j, 0), 2), GaussianRational(Rational(1) / (2 * m)));
  }
  for (std::size_t k = 0; k < model.potential.size(); ++k) {
    PotentialAtom atom;
    atom.name = "pot" + std::to_string(k);
    atom.coeffs[model.potential[k].a] = 1;
    atom.coeffs[model.potential[k].b] = -1;
    atom.canonicalize();
    h += atomOp(atom);
  }
  return h;
}

/// Numeric description of the internal Hamiltonian read off the symbolic
/// reduction: one reduced mass per internal coordinate (cross momentum terms
/// are rejected) and, per potential atom, its coefficients over the internal
/// coordinates.
struct InternalProblem {
  int internals = 0;
  std::vector<double> reducedMasses;
  struct AtomTerm {
    int potentialIndex = 0;
    std::vector<double> coeffs;
  };
  std::vector<AtomTerm> atoms;
  double constant = 0;
};

inline InternalProblem internalProblem(const GridModel& model, const LinearFrameMap& map) {
  OperatorPoly hred = reduceHamiltonian(symbolicHamiltonian(model), map);
  const int n = map.system().count();
  std::vector<int> slotOf(n + 1, -1);
  InternalProblem ip;
  for (int r = 1; r <= n; ++r)
    if (r != map.cmRow()) slotOf[r] = ip.internals++;
  ip.reducedMasses.assign(ip.internals, 0.0);
  std::vector<bool> haveMass(ip.internals, false);

  for (const auto& [mono, c] : hred.terms) {
    if (!mono.syms.empty() || !mono.zs.empty())
      throw ModelError("reduced Hamiltonian has terms the grid cannot represent");
    if (!mono.atoms.empty()) {
      if (!mono.ps.empty() || mono.atoms.size() != 1 || !c.im.is_zero() || c.re != 1)
        throw ModelError("potential terms must stay plain atoms under reduction");
      const PotentialAtom& atom = mono.atoms[0];
      InternalProblem::AtomTerm at;
      at.potentialIndex = std::stoi(atom.name.substr(3));
      at.coeffs.assign(ip.internals, 0.0);
      for (const auto& [j, coeff] : atom.coeffs) {
        if (slotOf[j] < 0) throw ModelError("potential atom depends on the center of mass");
        at.coeffs[slotOf[j]] = toDouble(coeff);
      }
      ip.atoms.push_back(std::move(at));
      continue;
    }
    if (!mono.ps.empty()) {
      if (mono.ps.size() != 1 || mono.ps[0].second != 2 || !c.im.is_zero() || c.re.sign() <= 0)
        throw ModelError("internal kinetic energy is not diagonal for this frame map");
      int slot = slotOf[mono.ps[0].first.particle];
      if (slot < 0) throw ModelError("center-of-mass momentum survived the projection");
      ip.reducedMasses[slot] = toDouble(Rational(1) / (2 * c.re));
      haveMass[slot] = true;
      continue;
    }
    if (!c.im.is_zero()) throw ModelError("imaginary constant in the reduced Hamiltonian");
    ip.constant += toDouble(c.re);
  }
  for (int i = 0; i < ip.internals; ++i)
    if (!haveMass[i])
      throw ModelError("no kinetic term for internal coordinate " + std::to_string(i + 1));
  return ip;
}

// --- spectra -----------------------------------------------------------------

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  CMat eigenvectors;                // columns, empty unless requested
  std::string sectorLabel;
  Json metadata;
};

inline Json spectrumMetadata(const GridModel& model) {
  Json j;
  j["model"] = model.echo;
  j["solver"] = {{"count", model.solverCount}, {"tol", model.solverTol}};
  return j;
}

/// Two-particle Hamiltonian restricted to one total-momentum sector, in the
/// relative-index basis |q;r> = N^{-1/2} sum_s e^{-i q s} |s, s+r>. Particle-1
/// hops pick up the sector phase, particle-2 hops do not, and the pair
/// potential is diagonal at the wrapped separation r h.
inline CMat sectorHamiltonian(const GridModel& model, int sector) {
  if (model.count() != 2) throw ModelError("momentum sectors are a two-particle construction");
  if (sector < 0 || sector >= model.npts) throw ModelError("sector index out of range");
  const int n = model.npts;
  const double h = gridSpacing(n, model.boxLength);
  std::vector<double> t1 = kineticKernel(n, model.boxLength, model.masses[0]);
  std::vector<double> t2 = kineticKernel(n, model.boxLength, model.masses[1]);
  const double qt = 2.0 * M_PI * sector / n;
  CMat hm(n, n);
  for (int rp = 0; rp < n; ++rp)
    for (int r = rp; r < n; ++r) {
      int d = r - rp;
      std::complex<double> val = t1[d] * std::polar(1.0, qt * d) + t2[d];
      if (d == 0) val += model.pairValue(1, 2, minimalImage(r * h, model.boxLength));
      hm(rp, r) = val;
      hm(r, rp) = std::conj(val);
    }
  return hm;
}

inline SpectrumResult fullGridSpectrum(const GridModel& model, int sector, int count,
                                       bool wantVectors = false) {
  model.validate();
  CEigResult e = eighDense(sectorHamiltonian(model, sector), wantVectors);
  SpectrumResult out;
  int take = std::min<int>(count, model.npts);
  out.eigenvalues.assign(e.values.data(), e.values.data() + take);
  if (wantVectors) out.eigenvectors = e.vectors.leftCols(take);
  out.sectorLabel = std::to_string(sector);
  out.metadata = spectrumMetadata(model);
  return out;
}

/// Potential value at one point of the internal grid (1 or 2 coordinates).
/// Two-particle separations are wrapped to the minimal image; the 2D internal
/// grids feed atom arguments unwrapped.
inline double internalPotential(const GridModel& model, const InternalProblem& ip,
                                const std::vector<double>& u) {
  double v = ip.constant;
  for (const auto& at : ip.atoms) {
    double arg = 0;
    for (int i = 0; i < ip.internals; ++i) arg += at.coeffs[i] * u[i];
    if (ip.internals == 1) arg = minimalImage(arg, model.boxLength);
    const PairPotential& pp = model.potential[at.potentialIndex];
    v += pp.evaluate(arg);
  }
  return v;
}

inline Mat internal1DHamiltonian(const GridModel& model, const InternalProblem& ip) {
  const int n = model.npts;
  std::vector<double> t = kineticKernel(n, model.boxLength, ip.reducedMasses[0]);
  Mat hm(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double val = t[j - i];
      if (i == j) val += internalPotential(model, ip, {gridPoint(i, n, model.boxLength)});
      hm(i, j) = val;
      hm(j, i) = val;
    }
  return hm;
}

inline SpectrumResult reducedGridSpectrum(const GridModel& model, const LinearFrameMap& map,
                                          int count, bool wantVectors = false) {
  model.validate();
  InternalProblem ip = internalProblem(model, map);
  const int n = model.npts;
  SpectrumResult out;
  out.sectorLabel = "reduced";
  out.metadata = spectrumMetadata(model);
  if (ip.internals == 1) {
    EigResult e = eighDense(internal1DHamiltonian(model, ip), wantVectors);
    int take = std::min(count, n);
    out.eigenvalues.assign(e.values.data(), e.values.data() + take);
    if (wantVectors) out.eigenvectors = e.vectors.leftCols(take).cast<std::complex<double>>();
    return out;
  }
  if (ip.internals != 2)
    throw ModelError("grids support one or two internal coordinates");
  Mat t1 = circulantMatrix(kineticKernel(n, model.boxLength, ip.reducedMasses[0]));
  Mat t2 = circulantMatrix(kineticKernel(n, model.boxLength, ip.reducedMasses[1]));
  Mat v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      v(i, j) = internalPotential(
          model, ip, {gridPoint(i, n, model.boxLength), gridPoint(j, n, model.boxLength)});
  auto apply = [&](const Vec& in, Vec& outv) {
    Eigen::Map<const Mat> psi(in.data(), n, n);
    Eigen::Map<Mat> res(outv.data(), n, n);
    res = t1 * psi + psi * t2 + v.cwiseProduct(psi);
  };
  LanczosOptions opts;
  opts.count = count;
  opts.wantVectors = wantVectors;
  opts.basisSize = std::max(80, count + 40);
  opts.tol = std::min(model.solverTol, 1e-11);
  LanczosResult lr = thickRestartLanczos(n * n, apply, opts);
  out.eigenvalues.assign(lr.values.data(), lr.values.data() + lr.values.size());
  if (wantVectors) out.eigenvectors = lr.vectors.cast<std::complex<double>>();
  return out;
}

inline SpectrumResult reducedGridSpectrum(const GridModel& model, int count,
                                          bool wantVectors = false) {
  return reducedGridSpectrum(model, jacobiMap(symbolicSystem(model)), count, wantVectors);
}

/// Probability fraction of the reduced ground state within |u| < L/4. A bound
/// state concentrates (fraction >= 0.999 at converged L); scattering-like
/// states spread over the box.
struct BoundStateReport {
  double fraction = 0;
  bool bound = false;
};

inline BoundStateReport boundStateReport(const GridModel& model) {
  if (model.count() != 2) throw ModelError("bound-state detection is two-particle only");
  SpectrumResult s = reducedGridSpectrum(model, 1, true);
  const int n = model.npts;
  double inside = 0, total = 0;
  for (int i = 0; i < n; ++i) {
    double w = std::norm(s.eigenvectors(i, 0));
    total += w;
    if (std::abs(gridPoint(i, n, model.boxLength)) < model.boxLength / 4) inside += w;
  }
  BoundStateReport r;
  r.fraction = inside / total;
  r.bound = r.fraction >= 0.999;
  return r;
}

// --- finite-size scaling -----------------------------------------------------

struct ScalingResult {
  std::vector<double> lengths;
  std::vector<double> cmSpacings;    // sector-1 minus sector-0 ground energy
  std::vector<double> internalGaps;  // first reduced gap
  double cmExponent = 0;
  double internalExponent = 0;
};

inline double logLogSlope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double mx = 0, my = 0;
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw FitDegeneracy("scaling fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double num = 0, den = 0;
  for (int i = 0; i < n; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  if (den == 0) throw FitDegeneracy("degenerate abscissa in scaling fit");
  return num / den;
}

inline ScalingResult cmLadderScaling(const GridModel& model, const std::vector<double>& lengths) {
  if (lengths.size() < 3) throw FitDegeneracy("need at least three box lengths");
  for (std::size_t i = 2; i < lengths.size(); ++i) {
    double r0 = lengths[1] / lengths[0];
    double ri = lengths[i] / lengths[i - 1];
    if (std::abs(ri - r0) > 1e-9 * std::abs(r0))
      throw FitDegeneracy("box lengths must form a geometric progression");
  }
  ScalingResult out;
  out.lengths = lengths;
  for (double L : lengths) {
    GridModel m = model;
    m.boxLength = L;
    double e0 = fullGridSpectrum(m, 0, 1).eigenvalues[0];
    double e1 = fullGridSpectrum(m, 1, 1).eigenvalues[0];
    out.cmSpacings.push_back(e1 - e0);
    SpectrumResult red = reducedGridSpectrum(m, 2);
    out.internalGaps.push_back(red.eigenvalues[1] - red.eigenvalues[0]);
  }
  out.cmExponent = logLogSlope(out.lengths, out.cmSpacings);
  out.internalExponent = logLogSlope(out.lengths, out.internalGaps);
  return out;
}

// --- Born-Oppenheimer --------------------------------------------------------

struct BOResult {
  std::vector<double> separations;   // heavy-separation grid samples
  std::vector<double> surface;       // clamped light-particle ground energy
  Mat electronicStates;              // ground electronic state per sample, columns
  std::vector<double> nuclearLevels;
  Mat nuclearStates;
  std::vector<double> exactLevels;   // from the 2D internal solver
  double massRatio = 0;
  Json metadata;
};

namespace detail {

/// Frame map with internal rows (heavy separation, light vs heavy pair CM).
inline LinearFrameMap boFrameMap(const ParticleSystem& sys, int lightIdx, int h1, int h2) {
  const int n = 3;
  RationalMatrix t(n, std::vector<Rational>(n, 0));
  t[0][h1 - 1] = -1;
  t[0][h2 - 1] = 1;
  t[1][lightIdx - 1] = 1;
  t[1][h1 - 1] = Rational(-1) / 2;
  t[1][h2 - 1] = Rational(-1) / 2;
  Rational total = sys.totalMass();
  for (int j = 0; j < n; ++j) t[2][j] = sys.mass(j + 1) / total;
  return LinearFrameMap(sys, std::move(t),
                        {RowRole::Internal, RowRole::Internal, RowRole::CenterOfMass});
}

}  // namespace detail

/// Clamped-heavy factorization for one light and two equal heavies, checked
/// against the exact two-coordinate internal solve. massRatio <= 0 keeps the
/// model's own masses.
inline BOResult boSolve(const GridModel& model, double massRatio = 0) {
  model.validate();
  if (model.count() != 3) throw ModelError("the clamped-heavy split needs three particles");
  int lightIdx = 0, h1 = 0, h2 = 0;
  for (int j = 1; j <= 3; ++j) {
    if (model.roles[j - 1] == "light")
      lightIdx = lightIdx == 0 ? j : -1;
    else if (model.roles[j - 1] == "heavy")
      (h1 == 0 ? h1 : h2) = j;
    else
      throw ModelError("every particle needs a light/heavy role");
  }
  if (lightIdx <= 0 || h1 == 0 || h2 == 0)
    throw ModelError("roles must tag exactly one light and two heavy particles");
  if (model.masses[h1 - 1] != model.masses[h2 - 1])
    throw ModelError("the heavy masses must be equal");

  GridModel m = model;
  if (massRatio > 0) {
    m.masses[h1 - 1] = massRatio * m.masses[lightIdx - 1];
    m.masses[h2 - 1] = massRatio * m.masses[lightIdx - 1];
  }
  LinearFrameMap map = detail::boFrameMap(symbolicSystem(m), lightIdx, h1, h2);
  InternalProblem ip = internalProblem(m, map);

  const int n = m.npts;
  const double L = m.boxLength;
  const double muLight = ip.reducedMasses[1];
  std::vector<double> tLight = kineticKernel(n, L, muLight);

  BOResult out;
  out.massRatio = massRatio > 0 ? massRatio : m.masses[h1 - 1] / m.masses[lightIdx - 1];
  out.separations.resize(n);
  out.surface.resize(n);
  out.electronicStates.resize(n, n);

  for (int si = 0; si < n; ++si) {
    double s = gridPoint(si, n, L);
    out.separations[si] = s;
    Mat hel(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double val = tLight[j - i];
        if (i == j) {
          double x = gridPoint(i, n, L);
          for (const auto& at : ip.atoms) {
            if (at.coeffs[1] == 0) continue;  // heavy-only term enters at the nuclear stage
            double arg = at.coeffs[0] * s + at.coeffs[1] * x;
            val += m.potential[at.potentialIndex].evaluate(arg);
          }
        }
        hel(i, j) = val;
        hel(j, i) = val;
      }
    EigResult e = eighDense(hel, true);
    double eps = e.values[0];
    Vec phi = e.vectors.col(0);
    double residual = (hel * phi - eps * phi).norm();
    if (residual > 1e-10)
      throw NumericalError("electronic solve residual " + std::to_string(residual));
    if (!std::isfinite(eps)) throw NumericalError("non-finite point on the clamped surface");
    out.surface[si] = eps;
    out.electronicStates.col(si) = phi;
  }

  std::vector<double> tHeavy = kineticKernel(n, L, ip.reducedMasses[0]);
  Mat hn(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double val = tHeavy[j - i];
      if (i == j) {
        double s = out.separations[i];
        val += out.surface[i] + ip.constant;
        for (const auto& at : ip.atoms) {
          if (at.coeffs[1] != 0) continue;
          val += m.potential[at.potentialIndex].evaluate(at.coeffs[0] * s);
        }
      }
      hn(i, j) = val;
      hn(j, i) = val;
    }
  EigResult nuc = eighDense(std::move(hn), true);
  int take = std::min(m.solverCount, n);
  out.nuclearLevels.assign(nuc.values.data(), nuc.values.data() + take);
  out.nuclearStates = nuc.vectors.leftCols(take);

  SpectrumResult exact = reducedGridSpectrum(m, map, take, false);
  out.exactLevels = exact.eigenvalues;
  out.metadata = spectrumMetadata(m);
  out.metadata["massRatio"] = out.massRatio;
  return out;
}

// --- Lehmann spectral functions ----------------------------------------------

enum class SpectralVariant { Unreduced, Reduced, BO };
enum class ProbeKind { RelPosition, AbsPosition, HeavySeparation };

inline std::string toString(SpectralVariant v) {
  switch (v) {
    case SpectralVariant::Unreduced: return "unreduced";
    case SpectralVariant::Reduced: return "reduced";
    case SpectralVariant::BO: return "bo";
  }
  return "";
}

inline std::string toString(ProbeKind p) {
  switch (p) {
    case ProbeKind::RelPosition: return "rel-position";
    case ProbeKind::AbsPosition: return "abs-position";
    case ProbeKind::HeavySeparation: return "heavy-separation";
  }
  return "";
}

struct SpectralFunction {
  std::vector<double> omega;
  std::vector<double> weights;  // A(omega) >= 0
  std::vector<std::pair<double, double>> transitions;  // (omega_n, |<n|probe|0>|^2)
  double eta = 0;
  double omegaMax = 0;
  double totalWeight = 0;   // sum of included transition weights
  double sumRuleError = 0;  // |integral of A - totalWeight|
  std::string probe, variant;
  Json metadata;
};

namespace detail {

inline SpectralFunction broaden(std::vector<std::pair<double, double>> included, double eta,
                                double omegaMax) {
  SpectralFunction sf;
  sf.eta = eta;
  sf.omegaMax = omegaMax;
  const double lo = -8 * eta;
  const double step = eta / 8;
  const int n = static_cast<int>((omegaMax - lo) / step) + 1;
  sf.omega.resize(n);
  sf.weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) sf.omega[i] = lo + i * step;
  const double norm = 1.0 / (eta * std::sqrt(2.0 * M_PI));
  for (const auto& [w0, wt] : included) {
    sf.totalWeight += wt;
    for (int i = 0; i < n; ++i) {
      double x = (sf.omega[i] - w0) / eta;
      sf.weights[i] += wt * norm * std::exp(-0.5 * x * x);
    }
  }
  double integral = 0;
  for (double a : sf.weights) integral += a * step;
  sf.sumRuleError = std::abs(integral - sf.totalWeight);
  sf.transitions = std::move(included);
  return sf;
}

}  // namespace detail

inline SpectralFunction spectralFunction(const GridModel& model, SpectralVariant variant,
                                         ProbeKind probe, double eta, double omegaMax,
                                         double boMassRatio = 0) {
  model.validate();
  if (!(omegaMax > 0)) throw ModelError("spectral window must be positive");
  if (eta <= 0) eta = 0.01 * omegaMax;
  const double cutoff = omegaMax - 8 * eta;
  std::vector<std::pair<double, double>> included;

  if (variant == SpectralVariant::Reduced) {
    if (probe != ProbeKind::RelPosition)
      throw ModelError("the reduced variant supports the rel-position probe");
    if (model.count() != 2) throw ModelError("reduced spectral functions are two-particle here");
    const int n = model.npts;
    SpectrumResult s = reducedGridSpectrum(model, n, true);
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = gridPoint(i, n, model.boxLength);
    CVec ground = s.eigenvectors.col(0);
    for (int m = 0; m < n; ++m) {
      double w = s.eigenvalues[m] - s.eigenvalues[0];
      if (w > cutoff) break;
      std::complex<double> amp = 0;
      for (int i = 0; i < n; ++i) amp += std::conj(s.eigenvectors(i, m)) * x[i] * ground[i];
      included.emplace_back(w, std::norm(amp));
    }
  } else if (variant == SpectralVariant::Unreduced) {
    if (probe != ProbeKind::RelPosition && probe != ProbeKind::AbsPosition)
      throw ModelError("the unreduced variant supports rel-position and abs-position probes");
    if (model.count() != 2) throw ModelError("unreduced spectral functions are two-particle");
    const int n = model.npts;
    const double L = model.boxLength;
    const double totalMass = model.totalMass();
    CEigResult ground = eighDense(sectorHamiltonian(model, 0), true);
    const double e00 = ground.values[0];
    CVec psi0 = ground.vectors.col(0);

    if (probe == ProbeKind::RelPosition) {
      Vec xr(n);
      for (int r = 0; r < n; ++r) xr[r] = minimalImage(r * gridSpacing(n, L), L);
      for (int m = 0; m < n; ++m) {
        double w = ground.values[m] - e00;
        if (w > cutoff) break;
        std::complex<double> amp = 0;
        for (int r = 0; r < n; ++r) amp += std::conj(ground.vectors(r, m)) * xr[r] * psi0[r];
        included.emplace_back(w, std::norm(amp));
      }
    } else {
      for (int k = 0; k <= n / 2; ++k) {
        double q = 2.0 * M_PI * k / L;
        if (q * q / (2.0 * totalMass) > omegaMax) break;
        double qt = 2.0 * M_PI * k / n;
        std::complex<double> zhat = 0;
        for (int s = 0; s < n; ++s)
          zhat += std::polar(1.0, qt * s) * gridPoint(s, n, L);
        zhat /= static_cast<double>(n);
        double degeneracy = (k == 0 || 2 * k == n) ? 1.0 : 2.0;  // sectors +-k mirror
        CEigResult sectorStorage;
        const CEigResult* sec = &ground;
        if (k != 0) {
          sectorStorage = eighDense(sectorHamiltonian(model, k), true);
          sec = &sectorStorage;
        }
        for (int m = 0; m < n; ++m) {
          double w = sec->values[m] - e00;
          if (w > cutoff) break;
          std::complex<double> overlap = sec->vectors.col(m).dot(psi0);
          included.emplace_back(w, degeneracy * std::norm(zhat * overlap));
        }
      }
      std::sort(included.begin(), included.end());
    }
  } else {
    if (probe != ProbeKind::HeavySeparation)
      throw ModelError("the clamped-heavy variant supports the heavy-separation probe");
    BOResult bo = boSolve(model, boMassRatio);
    const int n = model.npts;
    const int levels = static_cast<int>(bo.nuclearLevels.size());
    for (int m = 0; m < levels; ++m) {
      double w = bo.nuclearLevels[m] - bo.nuclearLevels[0];
      if (w > cutoff) break;
      double amp = 0;
      for (int i = 0; i < n; ++i)
        amp += bo.nuclearStates(i, m) * bo.separations[i] * bo.nuclearStates(i, 0);
      included.emplace_back(w, amp * amp);
    }
  }

  SpectralFunction sf = detail::broaden(std::move(included), eta, omegaMax);
  sf.probe = toString(probe);
  sf.variant = toString(variant);
  sf.metadata = spectrumMetadata(model);
  sf.metadata["probe"] = sf.probe;
  sf.metadata["variant"] = sf.variant;
  sf.metadata["eta"] = sf.eta;
  sf.metadata["omegaMax"] = sf.omegaMax;
  return sf;
}

}  // namespace relobs
