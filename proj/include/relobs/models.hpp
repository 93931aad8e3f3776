#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "relobs/frame_map.hpp"
#include "relobs/particle_system.hpp"

namespace relobs {

using Json = nlohmann::json;

/// 1D chain/ring in the harmonic approximation: masses plus a symmetric
/// force-constant matrix. asrEnforced demands zero row sums (translation
/// leaves the energy unchanged), tolerance 1e-12.
struct HarmonicModel {
  std::vector<double> masses;
  std::vector<std::vector<double>> forceConstants;
  bool asrEnforced = false;
  Json echo;

  void validate() const {
    const std::size_t n = masses.size();
    if (n == 0) throw ModelError("harmonic model needs at least one mass");
    for (double m : masses)
      if (!(m > 0)) throw ModelError("masses must be positive");
    if (forceConstants.size() != n) throw ModelError("force-constant matrix must be N x N");
    for (const auto& row : forceConstants)
      if (row.size() != n) throw ModelError("force-constant matrix must be N x N");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (forceConstants[i][j] != forceConstants[j][i])
          throw ModelError("force-constant matrix must be symmetric");
    if (asrEnforced) {
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0;
        for (double v : forceConstants[i]) sum += v;
        if (std::abs(sum) > 1e-12)
          throw ModelError("acoustic sum rule violated in row " + std::to_string(i + 1));
      }
    }
  }
};

struct PairPotential {
  enum class Type { Harmonic, SoftCoulomb };
  Type type = Type::Harmonic;
  int a = 1, b = 2;      // 1-based particles
  double strength = 0;   // harmonic spring k, or signed soft-Coulomb strength
  double width = 1;      // soft-Coulomb regularization, > 0

  double evaluate(double r) const {
    if (type == Type::Harmonic) return 0.5 * strength * r * r;
    return strength / std::sqrt(r * r + width * width);
  }
};

/// Few-particle 1D periodic-grid model. Roles tag particles for the
/// Born-Oppenheimer split ("light" / "heavy"); empty means untagged.
struct GridModel {
  std::vector<double> masses;
  std::vector<std::string> roles;
  double boxLength = 0;
  int npts = 0;
  std::vector<PairPotential> potential;
  int solverCount = 8;
  double solverTol = 1e-10;
  Json echo;

  int count() const { return static_cast<int>(masses.size()); }

  double totalMass() const {
    double m = 0;
    for (double v : masses) m += v;
    return m;
  }

  void validate() const {
    if (count() != 2 && count() != 3) throw ModelError("grid models support 2 or 3 particles");
    for (double m : masses)
      if (!(m > 0)) throw ModelError("masses must be positive");
    if (!roles.empty() && roles.size() != masses.size())
      throw ModelError("one role entry per particle");
    if (!(boxLength > 0)) throw ModelError("box length must be positive");
    if (npts < 64 || (npts & (npts - 1)) != 0)
      throw ModelError("grid points must be a power of two, at least 64");
    for (const auto& pp : potential) {
      if (pp.a < 1 || pp.b < 1 || pp.a > count() || pp.b > count() || pp.a == pp.b)
        throw ModelError("potential pair indices out of range");
      if (pp.type == PairPotential::Type::SoftCoulomb && !(pp.width > 0))
        throw ModelError("soft-Coulomb width must be positive");
    }
    if (solverCount < 1) throw ModelError("solver count must be at least 1");
    if (!(solverTol > 0)) throw ModelError("solver tolerance must be positive");
  }

  /// Sum of all pair potentials between particles a and b at separation r.
  double pairValue(int pa, int pb, double r) const {
    double v = 0;
    for (const auto& pp : potential)
      if ((pp.a == pa && pp.b == pb) || (pp.a == pb && pp.b == pa)) v += pp.evaluate(r);
    return v;
  }
};

// --- JSON loading --------------------------------------------------------

inline ParticleSystem loadSystem(const Json& j) {
  int dim = j.at("dim").get<int>();
  std::vector<Rational> masses;
  for (const auto& m : j.at("masses")) masses.push_back(parseRational(m.get<std::string>()));
  return ParticleSystem(dim, std::move(masses));
}

inline Json saveSystem(const ParticleSystem& sys) {
  Json j;
  j["dim"] = sys.dim;
  Json masses = Json::array();
  for (const auto& m : sys.masses) masses.push_back(toString(m));
  j["masses"] = masses;
  return j;
}

inline LinearFrameMap loadFrameMap(const Json& j, int dim) {
  int n = j.at("n").get<int>();
  std::vector<Rational> masses;
  for (const auto& m : j.at("masses")) masses.push_back(parseRational(m.get<std::string>()));
  if (static_cast<int>(masses.size()) != n) throw FrameMapError("mass count disagrees with n");
  RationalMatrix t;
  for (const auto& row : j.at("T")) {
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(parseRational(v.get<std::string>()));
    t.push_back(std::move(r));
  }
  std::vector<RowRole> roles;
  for (const auto& r : j.at("roles")) {
    std::string s = r.get<std::string>();
    if (s == "internal")
      roles.push_back(RowRole::Internal);
    else if (s == "cm")
      roles.push_back(RowRole::CenterOfMass);
    else
      throw FrameMapError("unknown row role '" + s + "'");
  }
  return LinearFrameMap(ParticleSystem(dim, std::move(masses)), std::move(t), std::move(roles));
}

inline Json saveFrameMap(const LinearFrameMap& map) {
  Json j;
  j["n"] = map.system().count();
  Json masses = Json::array();
  for (const auto& m : map.system().masses) masses.push_back(toString(m));
  j["masses"] = masses;
  Json t = Json::array();
  for (const auto& row : map.t()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(toString(v));
    t.push_back(r);
  }
  j["T"] = t;
  Json roles = Json::array();
  for (RowRole r : map.roles()) roles.push_back(r == RowRole::CenterOfMass ? "cm" : "internal");
  j["roles"] = roles;
  return j;
}

inline HarmonicModel loadHarmonicModel(const Json& j) {
  HarmonicModel m;
  for (const auto& v : j.at("masses")) m.masses.push_back(v.get<double>());
  for (const auto& row : j.at("K")) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(v.get<double>());
    m.forceConstants.push_back(std::move(r));
  }
  m.asrEnforced = j.value("asrEnforced", false);
  m.echo = j;
  m.validate();
  return m;
}

inline GridModel loadGridModel(const Json& j) {
  GridModel m;
  for (const auto& p : j.at("particles")) {
    m.masses.push_back(p.at("mass").get<double>());
    m.roles.push_back(p.value("role", std::string{}));
  }
  const Json& box = j.at("box");
  m.boxLength = box.at("L").get<double>();
  m.npts = box.at("Npts").get<int>();
  for (const auto& p : j.value("potential", Json::array())) {
    PairPotential pp;
    const auto& pair = p.at("pair");
    pp.a = pair.at(0).get<int>();
    pp.b = pair.at(1).get<int>();
    std::string type = p.at("type").get<std::string>();
    const Json& params = p.value("params", Json::object());
    if (type == "harmonic") {
      pp.type = PairPotential::Type::Harmonic;
      pp.strength = params.at("k").get<double>();
    } else if (type == "softCoulomb") {
      pp.type = PairPotential::Type::SoftCoulomb;
      pp.strength = params.at("strength").get<double>();
      pp.width = params.at("width").get<double>();
    } else {
      throw ModelError("unknown potential type '" + type + "'");
    }
    m.potential.push_back(pp);
  }
  if (j.contains("solver")) {
    const Json& s = j.at("solver");
    m.solverCount = s.value("count", m.solverCount);
    m.solverTol = s.value("tol", m.solverTol);
  }
  m.echo = j;
  m.validate();
  return m;
}

}  // namespace relobs
