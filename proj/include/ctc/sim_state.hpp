#pragma once

#include "ctc/field.hpp"

namespace ctc {

/// Paired (u, v) profiles and the simulation clock. v carries the Dirichlet
/// value v_star on the outer face (not stored; it lives in ModelParams).
struct SimState {
    double t = 0.0;
    RadialField u;
    RadialField v;
};

}  // namespace ctc
