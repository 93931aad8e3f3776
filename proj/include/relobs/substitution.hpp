#pragma once

#include <array>
#include <map>
#include <optional>

#include "relobs/operator_poly.hpp"

namespace relobs {

/// Kind-preserving affine substitution on canonical indices. Component images
/// are stored per index; unmapped indices substitute to themselves. Position
/// rules additionally carry an affine *vector* view (linear part, formal
/// translation coefficient, constant offset) so potential-atom arguments can
/// be rewritten; infinitesimal rotation terms are excluded from that view
/// because norm functions are first-order rotation invariant.
class SubstitutionMap {
 public:
  explicit SubstitutionMap(int dim) : m_dim(dim) {
    if (dim < 1 || dim > 3) throw DimensionError("substitution dimension must be 1..3");
  }

  int dim() const { return m_dim; }

  struct AffineVector {
    std::map<int, Rational> linear;       // particle -> coefficient
    Rational symbol;                      // coefficient of the kind's formal vector
    std::array<Rational, 3> constant{};
  };

  /// z[j] -> sum_i linear[i] z[i] + symbol * a + constant.
  void setPositionAffine(int j, AffineVector v) {
    installAffine(Kind::Position, SymbolKind::Translation, j, v);
    m_positionView[j] = std::move(v);
  }

  /// p[j] -> sum_i linear[i] p[i] + symbol * v + constant.
  void setMomentumAffine(int j, AffineVector v) {
    installAffine(Kind::Momentum, SymbolKind::Boost, j, v);
  }

  /// Appends theta x z[j] (resp. theta x p[j]) to the image of that vector;
  /// requires dim >= 2. In two dimensions the single generator is theta.z.
  void addRotationTerm(Kind kind, int j) {
    if (m_dim < 2) throw DimensionError("rotation terms require dimension >= 2");
    static constexpr int eps[3][3][3] = {
        {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
        {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
        {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    for (int alpha = 0; alpha < m_dim; ++alpha) {
      OperatorPoly extra;
      for (int beta = 0; beta < 3; ++beta) {
        if (m_dim == 2 && beta != 2) continue;  // only theta.z survives in-plane
        for (int gamma = 0; gamma < m_dim; ++gamma) {
          int sign = eps[alpha][beta][gamma];
          if (sign == 0) continue;
          OperatorPoly term = mul(symbolOp(SymbolKind::Rotation, beta),
                                  canonicalOp({kind, j, gamma}));
          extra += scale(term, GaussianRational(sign));
        }
      }
      CanonicalIndex ix{kind, j, alpha};
      auto it = m_images.find(ix);
      if (it == m_images.end()) it = m_images.emplace(ix, canonicalOp(ix)).first;
      it->second += extra;
    }
  }

  /// Raw component images; every image must be affine and kind-pure. Maps
  /// built this way have no vector view, so atoms whose support meets a
  /// mapped particle cannot be rewritten.
  static SubstitutionMap fromImages(int dim, std::map<CanonicalIndex, OperatorPoly> images) {
    SubstitutionMap s(dim);
    for (const auto& [ix, img] : images) {
      validateImage(ix, img);
      s.m_images[ix] = img;
      if (ix.kind == Kind::Position) s.m_mappedWithoutView.insert(ix.particle);
    }
    return s;
  }

  const OperatorPoly* image(const CanonicalIndex& ix) const {
    auto it = m_images.find(ix);
    return it == m_images.end() ? nullptr : &it->second;
  }

  PotentialAtom rewriteAtom(const PotentialAtom& atom) const {
    PotentialAtom out;
    out.name = atom.name;
    out.shiftSymbol = atom.shiftSymbol;
    out.shiftConst = atom.shiftConst;
    for (const auto& [j, c] : atom.coeffs) {
      if (m_mappedWithoutView.count(j))
        throw ValidationError("substitution has no affine vector view for particle " +
                              std::to_string(j) + "; cannot rewrite atom " + atom.name);
      auto it = m_positionView.find(j);
      if (it == m_positionView.end()) {
        out.coeffs[j] += c;
        continue;
      }
      const AffineVector& v = it->second;
      for (const auto& [i, w] : v.linear) out.coeffs[i] += c * w;
      out.shiftSymbol += c * v.symbol;
      for (int ax = 0; ax < 3; ++ax) out.shiftConst[ax] += c * v.constant[ax];
    }
    out.canonicalize();
    return out;
  }

 private:
  void installAffine(Kind kind, SymbolKind symKind, int j, const AffineVector& v) {
    for (int ax = 0; ax < m_dim; ++ax) {
      OperatorPoly img;
      for (const auto& [i, c] : v.linear) img += scale(canonicalOp({kind, i, ax}), GaussianRational(c));
      if (!v.symbol.is_zero()) img += scale(symbolOp(symKind, ax), GaussianRational(v.symbol));
      if (!v.constant[ax].is_zero()) img += constantOp(GaussianRational(v.constant[ax]));
      m_images[{kind, j, ax}] = std::move(img);
    }
  }

  static void validateImage(const CanonicalIndex& ix, const OperatorPoly& img) {
    for (const auto& [m, c] : img.terms) {
      if (!m.atoms.empty())
        throw ValidationError("substitution image may not contain potential atoms");
      int zdeg = 0, pdeg = 0;
      for (const auto& [f, e] : m.zs) zdeg += e;
      for (const auto& [f, e] : m.ps) pdeg += e;
      if (ix.kind == Kind::Position && pdeg > 0)
        throw MixedKindSubstitution("position image of " + toString(ix) +
                                    " contains momentum factors");
      if (ix.kind == Kind::Momentum && zdeg > 0)
        throw MixedKindSubstitution("momentum image of " + toString(ix) +
                                    " contains position factors");
      if (zdeg + pdeg > 1)
        throw ValidationError("substitution image of " + toString(ix) + " is not affine");
    }
  }

  int m_dim;
  std::map<CanonicalIndex, OperatorPoly> m_images;
  std::map<int, AffineVector> m_positionView;
  std::set<int> m_mappedWithoutView;
};

/// Applies the map monomial by monomial. Images commute within a kind and
/// preserve normal order, so the expansion never needs extra reordering
/// beyond what mul() already performs.
inline OperatorPoly substitute(const OperatorPoly& op, const SubstitutionMap& map) {
  OperatorPoly out;
  for (const auto& [m, c] : op.terms) {
    OperatorPoly acc = constantOp(c);
    auto mulImage = [&](const CanonicalIndex& ix, int exp) {
      const OperatorPoly* img = map.image(ix);
      acc = mul(acc, img ? polyPow(*img, exp) : polyPow(canonicalOp(ix), exp));
    };
    for (const auto& [ix, e] : m.zs) mulImage(ix, e);
    for (const auto& atom : m.atoms) acc = mul(acc, atomOp(map.rewriteAtom(atom)));
    for (const auto& [ix, e] : m.ps) mulImage(ix, e);
    if (!m.syms.empty()) {
      Monomial symsOnly;
      symsOnly.syms = m.syms;
      OperatorPoly sp;
      sp.addTerm(symsOnly, GaussianRational(1));
      acc = mul(acc, sp);
    }
    out += acc;
  }
  return out;
}

}  // namespace relobs
