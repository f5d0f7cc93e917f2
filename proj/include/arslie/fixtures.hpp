#pragma once

#include "arslie/ars.hpp"

namespace arslie {

/// Derivation of the Heisenberg algebra with columns D X = (a, c, e),
/// D Y = (b, d, f), D Z = (0, 0, a + d).
Matrix heisenberg_derivation(double a, double b, double c, double d, double e, double f);

/// R^2 with F = (0, x1) and Y_1 = e1; the locus is {x1 = 0}.
SimpleArs grushin();
/// Aff+(2), D with rows (0, 0), (a, b), Delta = span{alpha X + beta Y}. Locus
/// {a (x - 1) + b y = 0}.
SimpleArs aff2_affine_locus(double a, double b, double alpha, double beta);
/// Aff+(2), D = -ad(Y), Delta = span{X}; the field is (1 - x) d/dy.
SimpleArs aff2_inner_y();
/// Heisenberg, Delta = span{X, Z} (an ideal), D X = Y + e Z. Locus {x = 0}.
SimpleArs heisenberg_ideal(double e = 0.0);
/// Heisenberg, Delta = span{X, Y}, D with rows (a, b, 0), (c, -a, 0), (0, 1, 0).
/// D^-1 Delta = span{X, Z} is a subalgebra; (HZ) holds on it iff c = 0.
SimpleArs heisenberg_kernel_subalgebra(double a, double b, double c);
/// Heisenberg, Delta = span{X, Y}, D with rows (0, b, 0), (c, 0, 0), (0, 0, 0).
SimpleArs heisenberg_degenerate(double b, double c);
/// Heisenberg, Delta = span{X, Y}, D with rows (0, 0, 0), (2, 1, 0), (0, 0, 1).
/// Locus {z = x^2 + x y}, tangent to Delta along {y = -2x, z = -x^2}.
SimpleArs heisenberg_tangential();
/// Heisenberg, Delta = span{X, Y}, general derivation. Locus
/// {e x + f y + (a + d) z - c x^2 / 2 + b y^2 / 2 - d x y = 0}.
SimpleArs heisenberg_quadric(double a, double b, double c, double d, double e, double f);
/// SL(2), Delta = span{H, X}, D = -ad(Y). Locus {a = +-1}.
SimpleArs sl2_cartan_delta();
/// SL(2), Delta = span{X, Y}, D = -ad(X). Locus {c d = 0}.
SimpleArs sl2_borel_kernel();

}  // namespace arslie
