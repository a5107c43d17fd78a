#include "spinsum/closed_forms.hpp"

#include <cmath>

namespace spinsum {

namespace {

Scalar rpow(Scalar R, int genus) { return std::pow(R, 2.0 - 2.0 * genus); }

}  // namespace

Scalar fhk_closed_form(Ring ring, std::size_t n, Scalar R, int genus) {
  const double g = genus;
  double f = 1.0;
  if (ring == Ring::C_R) f = 2.0;
  if (ring == Ring::H_R) f = std::pow(2.0, 2.0 - 2.0 * g);
  return rpow(R, genus) * f * std::pow(static_cast<double>(n), 2.0 - 2.0 * g);
}

Scalar z2_matrix_closed_form(std::size_t p, std::size_t q, Scalar R, int genus) {
  const double m = static_cast<double>(p) - static_cast<double>(q);
  return rpow(R, genus) * std::pow(m, 2.0 - 2.0 * genus);
}

Scalar z2_complex_closed_form(double m, Scalar R, int genus, int parity) {
  return static_cast<double>(parity) * std::pow(2.0, 1.0 - genus) * rpow(R, genus) * std::pow(m, 2.0 - 2.0 * genus);
}

Scalar klein_closed_form(int Lambda, std::size_t n, Scalar R, int genus, int parity) {
  const Scalar rn = R * static_cast<double>(n);
  if (Lambda == -3) return 4.0 * rpow(rn, genus);
  if (Lambda == -1) return static_cast<double>(parity) * std::pow(2.0, 2.0 - genus) * rpow(rn, genus);
  return rpow(2.0 * rn, genus);
}

Scalar commutative_closed_form(const std::vector<double>& c, const std::vector<int>& s,
                               const std::vector<double>& w, Scalar R, int genus, int parity) {
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double sign = (parity < 0 && genus > 0) ? s[k] : 1.0;
    sum += w[k] * sign * std::pow(c[k], genus);
  }
  return rpow(R, genus) * sum;
}

}  // namespace spinsum
