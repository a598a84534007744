#pragma once

#include <vector>

#include "algint/rational.hpp"

namespace algint {

// Integer matrices are row-major; a lattice is the row span of a matrix.
using ZMat = std::vector<std::vector<Integer>>;

ZMat identity_z(int n);
ZMat transpose_z(const ZMat& m);

// Canonical row Hermite form: pivot columns strictly increase, pivots are
// positive, entries above a pivot lie in [0, pivot).  Zero rows are dropped,
// so two matrices span the same lattice exactly when their forms agree.
ZMat hnf(ZMat m);

// Hermite form with the unimodular row transform: u * input = result.
// Zero rows are kept here so u stays square.
ZMat hnf_transform(ZMat m, ZMat& u);

// Basis of { x : x m = 0 }.  Kernels of integer matrices are saturated.
ZMat left_kernel(const ZMat& m);

// Basis of the intersection of the two row lattices inside Z^ncols.
ZMat lattice_intersect(const ZMat& a, const ZMat& b, int ncols);

// Smallest saturated lattice containing the row span: all v with a positive
// multiple inside it.
ZMat saturate(const ZMat& m, int ncols);

bool lattice_equal(const ZMat& a, const ZMat& b);

// Membership test; h must be canonical Hermite output.
bool in_lattice(std::vector<Integer> v, const ZMat& h);

// LLL-reduced basis of the row span, computed with exact rational
// Gram-Schmidt data.  The input is Hermite-reduced first, so the result is
// deterministic and zero rows are tolerated.
ZMat lll_reduce(ZMat m, const Rational& delta = Rational(3, 4));

} // namespace algint
