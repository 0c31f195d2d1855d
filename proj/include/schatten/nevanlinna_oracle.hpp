#pragma once

#include "schatten/core.hpp"
#include "schatten/symbol.hpp"

namespace schatten {

// Independent counting-function evaluation by the argument principle: zeros
// of phi(zeta) - z are located by winding numbers over adaptively refined
// cells (blaschke / affine), or by bisecting the winding jump over centred
// circles (sector maps, whose boundary branch makes cell edges unreliable).
// No closed forms and no polynomial root solving are involved, so this is a
// genuinely separate route for cross-checking Symbol::nevanlinna.
double nevanlinna_winding_oracle(const Symbol& phi, cplx z);

}  // namespace schatten
