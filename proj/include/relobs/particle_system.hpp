#pragma once

#include <vector>

#include "relobs/errors.hpp"
#include "relobs/rational.hpp"

namespace relobs {

/// N point particles in d spatial dimensions with exact rational masses.
struct ParticleSystem {
  int dim = 1;
  std::vector<Rational> masses;  // index 0 is particle 1

  ParticleSystem(int d, std::vector<Rational> m) : dim(d), masses(std::move(m)) {
    if (dim < 1 || dim > 3) throw DimensionError("dimension must be 1..3");
    if (masses.empty()) throw ModelError("system needs at least one particle");
    for (const auto& mass : masses)
      if (mass <= 0) throw ModelError("masses must be positive");
  }

  int count() const { return static_cast<int>(masses.size()); }

  const Rational& mass(int particle) const {  // particle is 1-based
    if (particle < 1 || particle > count())
      throw ModelError("particle index out of range: " + std::to_string(particle));
    return masses[static_cast<std::size_t>(particle - 1)];
  }

  Rational totalMass() const {
    Rational total = 0;
    for (const auto& m : masses) total += m;
    return total;
  }
};

}  // namespace relobs
