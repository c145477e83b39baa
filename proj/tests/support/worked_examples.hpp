#pragma once

#include "psplit/matrix.hpp"

namespace psplit::testing {

/// Two double splittings A = P1 - R1 + S1 = P2 - R2 + S2 of one matrix.
struct SplittingPair {
    Matrix a, p1, r1, s1, p2, r2, s2;
};

/// 2x3 semi-monotone A with a regular (d1) and a weak regular (d2) splitting
/// whose spectral radii are ordered although P1^+ >= P2^+ fails.
SplittingPair converse_example();

/// 2x3 A with duplicated column; d1 weak regular, d2 regular, all hypotheses
/// of the weak-vs-regular theorem satisfied.
SplittingPair duplicated_column_example();

} // namespace psplit::testing
