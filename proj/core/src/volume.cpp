#include "hyperglue/volume.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hyperglue/coxeter.hpp"

namespace hyperglue {

namespace {

void require_even(int n, const char* what) {
  if (n < 2 || n % 2) throw std::invalid_argument(std::string(what) + ": n must be even and >= 2");
}

Integer binomial(int n, int k) {
  Integer r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Integer factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

ExactVolume ExactVolume::operator+(const ExactVolume& o) const {
  if (coefficient == 0) return o;
  if (o.coefficient == 0) return *this;
  if (pi_power != o.pi_power) throw std::invalid_argument("adding volumes with different pi powers");
  return {coefficient + o.coefficient, pi_power};
}

ExactVolume ExactVolume::operator-(const ExactVolume& o) const {
  return *this + ExactVolume{-o.coefficient, o.pi_power};
}

ExactVolume ExactVolume::operator*(const ExactVolume& o) const {
  return {coefficient * o.coefficient, pi_power + o.pi_power};
}

ExactVolume ExactVolume::operator*(const Rational& q) const { return {coefficient * q, pi_power}; }

bool ExactVolume::operator==(const ExactVolume& o) const {
  if (coefficient == 0 && o.coefficient == 0) return true;
  return coefficient == o.coefficient && pi_power == o.pi_power;
}

double ExactVolume::approx() const {
  return static_cast<double>(coefficient) * std::pow(std::numbers::pi, pi_power);
}

std::string ExactVolume::str() const {
  std::string s = to_string(coefficient);
  if (pi_power == 0 || coefficient == 0) return s;
  s += "*pi";
  if (pi_power != 1) s += "^" + std::to_string(pi_power);
  return s;
}

Rational bernoulli(int m) {
  if (m < 0) throw std::invalid_argument("bernoulli: negative index");
  std::vector<Rational> b(m + 1);
  b[0] = 1;
  for (int k = 1; k <= m; ++k) {
    Rational s = 0;
    for (int j = 0; j < k; ++j) s += Rational(binomial(k + 1, j)) * b[j];
    b[k] = -s / (k + 1);
  }
  return b[m];
}

ExactVolume siegel_covolume(int n) {
  require_even(n, "siegel_covolume");
  if (n > 8) throw std::invalid_argument("siegel_covolume: n must be at most 8");
  const int half = n / 2;
  const bool plus = n % 8 == 0 || n % 8 == 2;
  Rational c = Rational((Integer(1) << half) + (plus ? 1 : -1)) / Rational(factorial(n));
  for (int k = 1; k <= half; ++k) c *= abs(bernoulli(2 * k));
  return {c, half};
}

ExactVolume gauss_bonnet_kappa(int n) {
  require_even(n, "gauss_bonnet_kappa");
  const int half = n / 2;
  Rational c = Rational((Integer(1) << n) * factorial(half), factorial(n));
  if (half % 2) c = -c;
  return {c, half};
}

Integer vertex_stabilizer_order(int n) {
  const auto order = spherical_order(simplex_roots(n).vertex_stabilizer());
  if (!order) throw std::logic_error("vertex stabilizer is not finite");
  return *order;
}

Rational reflection_group_euler_characteristic(int n) {
  return euler_characteristic(simplex_roots(n).diagram());
}

PolytopeVolume volume_P_routes(int n) {
  if (n < 4 || n > 8) throw std::invalid_argument("volume_P: n must lie in 4..8");
  require_even(n, "volume_P");
  const Rational gv(vertex_stabilizer_order(n));
  PolytopeVolume v;
  v.siegel_route = siegel_covolume(n) * gv;
  v.gauss_bonnet_route = gauss_bonnet_kappa(n) * (gv * reflection_group_euler_characteristic(n));
  if (!(v.siegel_route == v.gauss_bonnet_route))
    throw std::logic_error("volume_P: Siegel and Gauss-Bonnet routes disagree: " + v.siegel_route.str() +
                           " vs " + v.gauss_bonnet_route.str());
  return v;
}

ExactVolume volume_P(int n) { return volume_P_routes(n).siegel_route; }

ExactVolume volume_manifold(int tiles, int n) {
  if (tiles < 1) throw std::invalid_argument("volume_manifold: tile count must be positive");
  return volume_P(n) * Rational(tiles);
}

Integer subgroup_index(int tiles, int n) { return Integer(tiles) * vertex_stabilizer_order(n); }

}  // namespace hyperglue
