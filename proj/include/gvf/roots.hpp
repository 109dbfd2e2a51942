#pragma once

#include <vector>

#include "gvf/ball.hpp"
#include "gvf/poly.hpp"

namespace gvf {

struct RootBox {
  CBall z;           // certified disk: center (z.re.mid, z.im.mid), radius in rads
  bool is_real;      // proven real (conjugate disk meets only itself)
  int conj_index;    // index of the conjugate root's box (self for real roots)
};

// All deg(f) complex roots of a squarefree f over Q as certified pairwise
// disjoint disks, conjugates paired, deterministic order: real roots ascending,
// then conjugate pairs by (re, |im|), the im > 0 representative first.
// Aberth iteration + interval certification; precision doubles on failure up
// to the budget cap, then PrecisionExhausted.
std::vector<RootBox> complex_roots(const PolyQ& f, long prec);

}  // namespace gvf
