#pragma once

#include "spinsum/algebra.hpp"
#include "spinsum/constructors.hpp"

namespace spinsum {

// Closed-form invariants of the constructor families. parity is +1 (even) or
// -1 (odd); spin-independent forms ignore it.

// FHK M_n(ring): R^{2-2g} f n^{2-2g} with f = 1, 1, 2, 2^{2-2g} for C, R, C_R, H_R.
Scalar fhk_closed_form(Ring ring, std::size_t n, Scalar R, int genus);

// M_{p+q} with eps = R(p-q)Tr(u a) and the (-1)^{hj} crossing: R^{2-2g}(p-q)^{2-2g}.
Scalar z2_matrix_closed_form(std::size_t p, std::size_t q, Scalar R, int genus);

// M_n(C_R) (m = n) or its (p, q) form (m = p - q) with the (-1)^{hj} crossing:
// P(s) 2^{1-g} R^{2-2g} m^{2-2g}.
Scalar z2_complex_closed_form(double m, Scalar R, int genus, int parity);

// M_n(H_R) with the Klein bicharacter of Lambda = alpha + beta + gamma.
Scalar klein_closed_form(int Lambda, std::size_t n, Scalar R, int genus, int parity);

// Commutative semisimple algebra with eta = R^-2 sum c_k u_k, chi = R^-2 sum s_k c_k u_k
// and eps(u_k) = w_k R: R^{2-2g} sum_k w_k s_k^{[odd]} c_k^g.
Scalar commutative_closed_form(const std::vector<double>& c, const std::vector<int>& s,
                               const std::vector<double>& w, Scalar R, int genus, int parity);

}  // namespace spinsum
