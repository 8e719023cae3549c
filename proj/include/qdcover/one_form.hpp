#pragma once

#include <complex>
#include <vector>

namespace qdc {

// Discrete one-form: one real value per oriented halfedge. Cochains and
// harmonic representatives are antisymmetric (value(h) = -value(twin h));
// Hodge-starred forms carry each face's own rotated vector per halfedge, so
// twin values may differ at discretization order (closedness, co-closedness
// and *^2 = -1 hold exactly instead).
struct OneForm {
  std::vector<double> value;

  OneForm() = default;
  explicit OneForm(size_t halfedges) : value(halfedges, 0.0) {}
  double& operator[](int h) { return value[h]; }
  double operator[](int h) const { return value[h]; }
};

// Complex-valued one-form (real part + Hodge-star imaginary part).
struct ComplexOneForm {
  std::vector<std::complex<double>> value;

  ComplexOneForm() = default;
  explicit ComplexOneForm(size_t halfedges) : value(halfedges, 0.0) {}
  std::complex<double>& operator[](int h) { return value[h]; }
  std::complex<double> operator[](int h) const { return value[h]; }
};

}  // namespace qdc
