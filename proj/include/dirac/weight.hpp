#pragma once

#include <string_view>

#include "dirac/linalg.hpp"

namespace dirac {

/// Coordinate convention of a Weight.
///   GFund      - fundamental weights of g (the zeta_i)
///   KFund      - fundamental weights of k (the varpi_i); needs a real form
///   SimpleRoot - simple roots of g
///   Ambient    - the Euclidean coordinates of the chosen realization
enum class Basis { GFund, KFund, SimpleRoot, Ambient };

std::string_view name(Basis basis);
/// Accepts "gfund", "kfund", "root", "ambient" (and the enum spellings).
Basis parse_basis(std::string_view text);

struct Weight {
  QVec coords;
  Basis basis = Basis::GFund;

  friend bool operator==(const Weight&, const Weight&) = default;
};

inline Weight gfund(QVec coords) { return {std::move(coords), Basis::GFund}; }
inline Weight kfund(QVec coords) { return {std::move(coords), Basis::KFund}; }
inline Weight gfund(const IntVec& coords) { return {to_q(coords), Basis::GFund}; }
inline Weight kfund(const IntVec& coords) { return {to_q(coords), Basis::KFund}; }

}  // namespace dirac
