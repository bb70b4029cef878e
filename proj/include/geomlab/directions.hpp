// Deterministic direction sets on the euclidean unit sphere of a given
// dimension: coordinate axes and diagonals first (so structured extremal
// directions are always present), then a low-discrepancy fill.
#pragma once

#include <vector>

#include "geomlab/mat.hpp"

namespace geomlab {

// At least `count` unit vectors in R^m (m >= 1).  m=1 gives {+1,-1}; m=2 a
// uniform angle grid aligned with the axes and diagonals; m=3 a Fibonacci
// sphere appended to the structured set; higher m falls back to a Halton
// sequence pushed through a Box-Muller map.
std::vector<Vec> unit_directions(int m, int count);

// Halton low-discrepancy value: index i in the given prime base.
double halton(int index, int base);

}  // namespace geomlab
