#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relobs/errors.hpp"
#include "relobs/gaussian_rational.hpp"

namespace relobs {

enum class Kind { Position, Momentum };

/// One canonical operator z[particle].axis or p[particle].axis.
/// Particles are 1-based, axes 0-based (printed x, y, z).
struct CanonicalIndex {
  Kind kind;
  int particle;
  int axis;

  friend bool operator==(const CanonicalIndex& a, const CanonicalIndex& b) {
    return a.kind == b.kind && a.particle == b.particle && a.axis == b.axis;
  }
  friend bool operator<(const CanonicalIndex& a, const CanonicalIndex& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.particle != b.particle) return a.particle < b.particle;
    return a.axis < b.axis;
  }
};

inline char axisName(int axis) { return "xyz"[axis]; }

inline std::string toString(const CanonicalIndex& ix) {
  std::string s = ix.kind == Kind::Position ? "z[" : "p[";
  s += std::to_string(ix.particle);
  s += "].";
  s += axisName(ix.axis);
  return s;
}

/// Formal group parameters. They commute with every canonical operator and
/// with each other; Rotation components are nilpotent at total degree 2.
enum class SymbolKind { Translation, Boost, Rotation };

struct FormalSymbol {
  SymbolKind kind;
  int axis;

  friend bool operator==(const FormalSymbol& a, const FormalSymbol& b) {
    return a.kind == b.kind && a.axis == b.axis;
  }
  friend bool operator<(const FormalSymbol& a, const FormalSymbol& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.axis < b.axis;
  }
};

inline std::string toString(const FormalSymbol& s) {
  const char* base = s.kind == SymbolKind::Translation ? "a"
                     : s.kind == SymbolKind::Boost     ? "v"
                                                       : "theta";
  return std::string(base) + "." + axisName(s.axis);
}

/// Opaque scalar function of |w| where w is an exact affine combination of
/// position vectors: sum_j c_j z_j + shiftSymbol * a + shiftConst.
/// Canonical form: the leading nonzero coefficient (particle order, then the
/// symbol, then the constant components) is positive; |w| = |-w| makes the
/// overall sign unobservable.
struct PotentialAtom {
  std::string name;
  std::map<int, Rational> coeffs;     // particle -> c_j, no zero entries
  Rational shiftSymbol;               // coefficient of the formal vector a
  std::array<Rational, 3> shiftConst{};

  PotentialAtom() = default;
  PotentialAtom(std::string n, std::map<int, Rational> c) : name(std::move(n)), coeffs(std::move(c)) {
    canonicalize();
  }

  void canonicalize() {
    for (auto it = coeffs.begin(); it != coeffs.end();)
      it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
    int lead = 0;
    for (const auto& [j, c] : coeffs) {
      lead = c.sign();
      break;
    }
    if (lead == 0) lead = shiftSymbol.sign();
    if (lead == 0)
      for (const auto& c : shiftConst)
        if (!c.is_zero()) {
          lead = c.sign();
          break;
        }
    if (lead >= 0) return;
    for (auto& [j, c] : coeffs) c = -c;
    shiftSymbol = -shiftSymbol;
    for (auto& c : shiftConst) c = -c;
  }

  bool dependsOn(int particle) const { return coeffs.count(particle) != 0; }

  friend bool operator==(const PotentialAtom& a, const PotentialAtom& b) {
    return a.name == b.name && a.coeffs == b.coeffs && a.shiftSymbol == b.shiftSymbol &&
           a.shiftConst == b.shiftConst;
  }
  friend bool operator<(const PotentialAtom& a, const PotentialAtom& b) {
    if (a.name != b.name) return a.name < b.name;
    if (a.coeffs != b.coeffs)
      return std::lexicographical_compare(
          a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end(),
          [](const auto& x, const auto& y) {
            return x.first != y.first ? x.first < y.first : x.second < y.second;
          });
    if (a.shiftSymbol != b.shiftSymbol) return a.shiftSymbol < b.shiftSymbol;
    return std::lexicographical_compare(a.shiftConst.begin(), a.shiftConst.end(),
                                        b.shiftConst.begin(), b.shiftConst.end());
  }
};

namespace detail {
// Grammar-compatible rendering of an atom argument, e.g. "z[1]-z[2]" or
// "3/2*z[1]". The symbol / constant parts only occur inside residual
// witnesses and render in a display-only extension ("+a", "+[1,0,0]").
inline std::string atomArgument(const PotentialAtom& atom) {
  std::string out;
  auto append = [&](const Rational& c, const std::string& body) {
    if (c.is_zero()) return;
    Rational mag = abs(c);
    if (out.empty()) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? "-" : "+";
    }
    if (mag != 1 || body.empty()) {
      out += toString(mag);
      if (!body.empty()) out += "*";
    }
    out += body;
  };
  for (const auto& [j, c] : atom.coeffs) append(c, "z[" + std::to_string(j) + "]");
  append(atom.shiftSymbol, "a");
  bool anyConst = false;
  for (const auto& c : atom.shiftConst) anyConst |= !c.is_zero();
  if (anyConst) {
    out += out.empty() ? "[" : "+[";
    for (int ax = 0; ax < 3; ++ax) {
      if (ax) out += ",";
      out += toString(atom.shiftConst[ax]);
    }
    out += "]";
  }
  return out.empty() ? "0" : out;
}
}  // namespace detail

inline std::string toString(const PotentialAtom& atom) {
  return "normfn(" + atom.name + "," + detail::atomArgument(atom) + ")";
}

/// Normal-ordered word: positions (sorted), then atoms, then momenta
/// (sorted), with commuting formal symbols recorded separately.
struct Monomial {
  using Factors = std::vector<std::pair<CanonicalIndex, int>>;

  Factors zs;
  Factors ps;
  std::vector<PotentialAtom> atoms;
  std::map<FormalSymbol, int> syms;

  int thetaDegree() const {
    int d = 0;
    for (const auto& [s, e] : syms)
      if (s.kind == SymbolKind::Rotation) d += e;
    return d;
  }

  bool isConstant() const { return zs.empty() && ps.empty() && atoms.empty() && syms.empty(); }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.zs == b.zs && a.ps == b.ps && a.atoms == b.atoms && a.syms == b.syms;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.zs != b.zs) return a.zs < b.zs;
    if (a.ps != b.ps) return a.ps < b.ps;
    if (a.atoms != b.atoms) return a.atoms < b.atoms;
    return a.syms < b.syms;
  }
};

/// Exact polynomial in the canonical operators: map from normal-ordered
/// monomial to nonzero Gaussian-rational coefficient. The map is the
/// canonical form; equal operators have identical term maps.
struct OperatorPoly {
  std::map<Monomial, GaussianRational> terms;

  bool isZero() const { return terms.empty(); }

  OperatorPoly& operator+=(const OperatorPoly& o) {
    for (const auto& [m, c] : o.terms) {
      auto [it, fresh] = terms.emplace(m, c);
      if (!fresh) {
        it->second += c;
        if (it->second.isZero()) terms.erase(it);
      }
    }
    return *this;
  }

  void addTerm(const Monomial& m, const GaussianRational& c) {
    if (c.isZero()) return;
    auto [it, fresh] = terms.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.isZero()) terms.erase(it);
    }
  }
};

inline bool equalsZero(const OperatorPoly& p) { return p.terms.empty(); }

inline bool operator==(const OperatorPoly& a, const OperatorPoly& b) { return a.terms == b.terms; }

inline OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }

inline OperatorPoly scale(const OperatorPoly& p, const GaussianRational& s) {
  OperatorPoly out;
  if (s.isZero()) return out;
  for (const auto& [m, c] : p.terms) out.terms.emplace(m, c * s);
  return out;
}

inline OperatorPoly operator-(const OperatorPoly& a, const OperatorPoly& b) {
  OperatorPoly out = a;
  out += scale(b, GaussianRational(-1));
  return out;
}

// --- constructors -----------------------------------------------------------

inline OperatorPoly constantOp(const GaussianRational& c) {
  OperatorPoly p;
  p.addTerm(Monomial{}, c);
  return p;
}

inline OperatorPoly canonicalOp(const CanonicalIndex& ix) {
  Monomial m;
  (ix.kind == Kind::Position ? m.zs : m.ps).push_back({ix, 1});
  OperatorPoly p;
  p.addTerm(m, GaussianRational(1));
  return p;
}

inline OperatorPoly positionOp(int particle, int axis) {
  return canonicalOp({Kind::Position, particle, axis});
}

inline OperatorPoly momentumOp(int particle, int axis) {
  return canonicalOp({Kind::Momentum, particle, axis});
}

inline OperatorPoly symbolOp(SymbolKind kind, int axis) {
  Monomial m;
  m.syms[{kind, axis}] = 1;
  OperatorPoly p;
  p.addTerm(m, GaussianRational(1));
  return p;
}

inline OperatorPoly atomOp(PotentialAtom atom) {
  atom.canonicalize();
  Monomial m;
  m.atoms.push_back(std::move(atom));
  OperatorPoly p;
  p.addTerm(m, GaussianRational(1));
  return p;
}

// --- multiplication ----------------------------------------------------------

namespace detail {

inline Rational binomial(int n, int k) {
  Rational r = 1;
  for (int j = 1; j <= k; ++j) r *= Rational(n - k + j, j);
  return r;
}

inline Rational factorial(int n) {
  Rational r = 1;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

using ExpMap = std::map<std::pair<int, int>, int>;  // (particle, axis) -> exponent

inline ExpMap toExpMap(const Monomial::Factors& f) {
  ExpMap m;
  for (const auto& [ix, e] : f) m[{ix.particle, ix.axis}] += e;
  return m;
}

inline Monomial::Factors toFactors(const ExpMap& m, Kind kind) {
  Monomial::Factors f;
  for (const auto& [mode, e] : m)
    if (e > 0) f.push_back({CanonicalIndex{kind, mode.first, mode.second}, e});
  return f;
}

// Product of two normal-ordered monomials. Positions of `b` cross momenta of
// `a` via [z, p] = i per matching mode:
//   p^a z^b = sum_k C(a,k) C(b,k) k! (-i)^k z^(b-k) p^(a-k).
// Distinct modes commute, so modes factorize.
inline void mulMonomials(const Monomial& a, const GaussianRational& ca, const Monomial& b,
                         const GaussianRational& cb, OperatorPoly& out) {
  Monomial merged;
  merged.syms = a.syms;
  for (const auto& [s, e] : b.syms) merged.syms[s] += e;
  if (merged.thetaDegree() >= 2) return;  // nilpotent rotation parameters

  for (const auto& atom : b.atoms)
    for (const auto& [ix, e] : a.ps)
      if (atom.dependsOn(ix.particle))
        throw NonPolynomialCommutator("normal ordering would move " + toString(ix) +
                                      " across " + toString(atom));

  merged.atoms = a.atoms;
  merged.atoms.insert(merged.atoms.end(), b.atoms.begin(), b.atoms.end());
  std::sort(merged.atoms.begin(), merged.atoms.end());

  ExpMap za = toExpMap(a.zs), zb = toExpMap(b.zs);
  ExpMap pa = toExpMap(a.ps), pb = toExpMap(b.ps);

  // modes where a momentum of `a` must cross a position of `b`
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> cross;  // mode -> (aExp, bExp)
  for (const auto& [mode, ae] : pa) {
    auto it = zb.find(mode);
    if (it != zb.end()) cross.push_back({mode, {ae, it->second}});
  }

  GaussianRational base = ca * cb;
  std::vector<int> ks(cross.size(), 0);
  std::function<void(std::size_t, GaussianRational)> walk = [&](std::size_t i,
                                                                GaussianRational coeff) {
    if (i == cross.size()) {
      ExpMap z = za, p = pb;
      for (const auto& [mode, e] : zb) z[mode] += e;
      for (const auto& [mode, e] : pa) p[mode] += e;
      for (std::size_t j = 0; j < cross.size(); ++j) {
        z[cross[j].first] -= ks[j];
        p[cross[j].first] -= ks[j];
      }
      Monomial m = merged;
      m.zs = toFactors(z, Kind::Position);
      m.ps = toFactors(p, Kind::Momentum);
      out.addTerm(m, coeff);
      return;
    }
    auto [ae, be] = cross[i].second;
    int kmax = std::min(ae, be);
    for (int k = 0; k <= kmax; ++k) {
      ks[i] = k;
      GaussianRational factor(binomial(ae, k) * binomial(be, k) * factorial(k));
      walk(i + 1, coeff * factor * unitPower(k) * (k % 2 ? GaussianRational(-1) : GaussianRational(1)));
    }
  };
  walk(0, base);
}

}  // namespace detail

inline OperatorPoly mul(const OperatorPoly& a, const OperatorPoly& b) {
  OperatorPoly out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) detail::mulMonomials(ma, ca, mb, cb, out);
  return out;
}

inline OperatorPoly commutator(const OperatorPoly& a, const OperatorPoly& b) {
  return mul(a, b) - mul(b, a);
}

inline OperatorPoly polyPow(const OperatorPoly& base, int exp) {
  OperatorPoly out = constantOp(GaussianRational(1));
  for (int j = 0; j < exp; ++j) out = mul(out, base);
  return out;
}

// --- queries -----------------------------------------------------------------

inline bool atomFree(const OperatorPoly& p) {
  for (const auto& [m, c] : p.terms)
    if (!m.atoms.empty()) return false;
  return true;
}

inline bool symbolFree(const OperatorPoly& p) {
  for (const auto& [m, c] : p.terms) {
    if (!m.syms.empty()) return false;
    for (const auto& atom : m.atoms)
      if (!atom.shiftSymbol.is_zero()) return false;
  }
  return true;
}

/// Polynomial coefficient of `sym` (terms carrying it with exponent exactly
/// one, the symbol stripped). Used to compare a first-order rotation residual
/// against angular-momentum commutators.
inline OperatorPoly coefficientOf(const OperatorPoly& p, const FormalSymbol& sym) {
  OperatorPoly out;
  for (const auto& [m, c] : p.terms) {
    auto it = m.syms.find(sym);
    if (it == m.syms.end() || it->second != 1) continue;
    Monomial stripped = m;
    stripped.syms.erase(sym);
    out.addTerm(stripped, c);
  }
  return out;
}

// --- printing ----------------------------------------------------------------

namespace detail {

inline void appendFactor(std::string& out, const std::string& body, int exp) {
  if (!out.empty()) out += "*";
  out += body;
  if (exp != 1) out += "^" + std::to_string(exp);
}

inline std::string monomialBody(const Monomial& m) {
  std::string out;
  for (const auto& [ix, e] : m.zs) appendFactor(out, toString(ix), e);
  for (const auto& atom : m.atoms) appendFactor(out, toString(atom), 1);
  for (const auto& [ix, e] : m.ps) appendFactor(out, toString(ix), e);
  for (const auto& [s, e] : m.syms) appendFactor(out, toString(s), e);
  return out;
}

}  // namespace detail

/// Canonical text form. Symbol-free polynomials re-parse through the
/// expression grammar to the identical term map.
inline std::string toString(const OperatorPoly& p) {
  if (p.terms.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms) {
    bool negative;
    GaussianRational mag = c;
    if (!c.re.is_zero() && !c.im.is_zero()) {
      negative = false;  // mixed coefficients render parenthesized as-is
    } else {
      negative = (c.re.sign() < 0) || (c.im.sign() < 0);
      if (negative) mag = -c;
    }
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string body = detail::monomialBody(m);
    std::string coeff = toString(mag);
    if (body.empty())
      out += coeff;
    else if (coeff == "1")
      out += body;
    else
      out += coeff + "*" + body;
  }
  return out;
}

}  // namespace relobs
