#pragma once

// The explicit formula families: the Pell-based interpretation of the
// integer structure (Z; 0, 1, +, |, |^p, !=) in F_p[t], the Frobenius-power
// formulas, the nonvanishing formula, the definitions of {t^(p^r)} and
// {t^k}, the characteristic guards, and the reductions from L_D to L*.
//
// All families except the guards are written over L_t and do not depend on p.

#include "h10/interp.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace h10::interp {

// Bound-variable prefixes of nested instances, shared with the witness code.
namespace prefix {
inline const std::string first_pair = "a.";   // phi_L*(x, y) inside a binary Phi formula
inline const std::string second_pair = "b.";  // phi_L*(u, v)
inline const std::string star = "s.";         // beta(u, x) inside phi_|*
inline const std::string neq_x = "nx.";       // nu(x - u) inside phi_!=
inline const std::string neq_y = "ny.";       // nu(y - v)
inline const std::string beta_outer = "b1.";  // beta'(u, t) inside beta
inline const std::string beta_scaled = "b2."; // beta'(u x, t y)
inline const std::string beta_plain = "b3.";  // beta'(x, y)
inline const std::string psi_phi = "ph.";     // phi(h) inside psi
}  // namespace prefix

/// (x, y): exists z, x^2 - (t^2-1) y^2 = 1 and x = 1 + (t-1) z.
Definition phi_Lstar();
/// (x, y): x = 1 and y = 0.
Definition phi_zero();
/// (x, y): x = t and y = 1.
Definition phi_one();
/// (x, y, u, v, f, g): both pairs on the curve, f = xu + (t^2-1) yv, g = xv + yu.
Definition phi_plus();
/// (x, y, u, v): exists z, both pairs on the curve and v = y z.
Definition phi_div();
/// (x, y, u, v): both pairs on the curve and beta(u, x).
Definition phi_divstar();
/// (x, y, u, v): both pairs on the curve, x = u and y = v.
Definition phi_eq();
/// (x, y, u, v): both pairs on the curve and (nu(x - u) or nu(y - v)).
Definition phi_neq();

/// (f): exists a, b, c, (t a + 1)((t-1) b + 1) = f c.
Definition nu();
/// (x, y): exists u1..u17, z with second differences 2, xy = u1,
/// x + y = u2 - u1 - 1 and x = yz.
Definition beta_prime();
/// (x, y): exists u, v, u^2 - (t^2-1) v^2 = 1, beta'(u, t), beta'(ux, ty), beta'(x, y).
Definition beta();
/// (f): exists y, h, u, v, g with f on the Pell curve, f = 1 + (t-1) h,
/// u on the curve for t+1, u = 1 + t g and u = f + 1.
Definition phi_F();
/// (f): exists h, phi(h), f | h, t | f, t-1 | f-1, each a | b written exists w, b = a w.
Definition psi();

/// 1 + 1 + ... + 1 (p times) = 0.
Formula kappa(std::uint64_t p);
/// For every prime q < p, exists z_q with z_q + ... + z_q (q times) = 1.
Formula kappa_ge(std::uint64_t p);

/// (x, y): x |* y or y |* x, over L*.
Definition div_p();
/// (x): x + 1 != 0, x != 0 and x != 1, over L*.
Definition t_rel();

/// L* -> L_t, dimension 2, built from the phi_* families.
Interpretation interp_phi();
/// L_D -> L*, dimension 1: |_p and T through div_p and t_rel, the rest literal.
Interpretation interp_d();

/// Every family above by name (kappa at p = 3 and kappa_ge at p = 17 as samples).
std::map<std::string, Definition> formula_library();

}  // namespace h10::interp
