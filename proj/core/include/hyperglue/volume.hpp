#pragma once

#include <string>

#include "hyperglue/integer.hpp"

namespace hyperglue {

// coefficient * pi^pi_power, kept exact.
struct ExactVolume {
  Rational coefficient = 0;
  int pi_power = 0;

  ExactVolume operator+(const ExactVolume& o) const;
  ExactVolume operator-(const ExactVolume& o) const;
  ExactVolume operator*(const ExactVolume& o) const;
  ExactVolume operator*(const Rational& q) const;
  bool operator==(const ExactVolume& o) const;

  double approx() const;
  std::string str() const;  // e.g. "8/15*pi^3"
};

Rational bernoulli(int m);

ExactVolume siegel_covolume(int n);
ExactVolume gauss_bonnet_kappa(int n);

// Order of the vertex stabilizer Gamma_v of the simplex for I_{n,1}.
Integer vertex_stabilizer_order(int n);
// chi of the reflection group of I_{n,1}.
Rational reflection_group_euler_characteristic(int n);

struct PolytopeVolume {
  ExactVolume siegel_route;
  ExactVolume gauss_bonnet_route;
};
// Both routes; throws std::logic_error if they disagree.
PolytopeVolume volume_P_routes(int n);
ExactVolume volume_P(int n);

ExactVolume volume_manifold(int tiles, int n = 6);

// Index in PO_{n,1}Z of the fundamental group of a manifold tiled by copies of P_n.
Integer subgroup_index(int tiles, int n = 6);

}  // namespace hyperglue
