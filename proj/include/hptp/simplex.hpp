#pragma once

#include "hptp/types.hpp"

namespace hptp::detail {

struct LpResult {
  bool ok = false;  // false on pivot-limit or unbounded
  double value = 0.0;
  RealVector z;
};

/// maximize c.z  subject to  A z <= b, z >= 0, with b >= 0 so the slack
/// basis is an initial BFS. Dense tableau simplex, Dantzig rule with a Bland
/// fallback for anti-cycling. Deterministic.
LpResult simplex_max(const RealVector& c, const RealMatrix& a, const RealVector& b,
                     int max_pivots = 20000);

}  // namespace hptp::detail
