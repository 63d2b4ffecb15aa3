#pragma once

#include <functional>
#include <vector>

#include "loopbu/loop.hpp"

namespace loopbu {

// Parameters of the family c -> omega_c, c in S^d, of to-and-fro loops that
// swing along the meridian circle through s0 in the (e_1, e_{n+1}) plane.
class TfSphereParams {
 public:
  using BasisFunction = std::function<double(double)>;

  // basis.size() must be d + 1, each phi_i(0) = 0, and
  // amplitude_scale * sup |(phi_0, ..., phi_d)| <= pi - 0.1.
  static TfSphereParams make(int d, double amplitude_scale, std::vector<BasisFunction> basis);

  // phi_i(u) = sin((i+1) pi u), amplitude (pi - 0.1) / sqrt(d + 1).
  static TfSphereParams defaults(int d);

  int d() const noexcept { return d_; }
  double amplitude_scale() const noexcept { return amplitude_scale_; }
  const std::vector<BasisFunction>& basis() const noexcept { return basis_; }

  // Signed meridian angle of omega_c at half-parameter u in [0, 1].
  double angle(const Vec& c, double u) const;

 private:
  TfSphereParams(int d, double scale, std::vector<BasisFunction> basis)
      : d_(d), amplitude_scale_(scale), basis_(std::move(basis)) {}
  int d_;
  double amplitude_scale_;
  std::vector<BasisFunction> basis_;
};

Loop embed_alpha(const SpherePoint& x, int m);

// Circle through s1 = e_1 and x. With rotate_to_s0 the loop is carried by
// rotation_to_base(s1) into a loop based at s0.
Loop embed_beta(const SpherePoint& x, int m, bool rotate_to_s0 = false);

// Vertical circle through s_lambda = slerp(s0, s1, lambda) and x, based at
// s_lambda. Equals embed_alpha at lambda = 0 and embed_beta at lambda = 1.
Loop h_lambda(const SpherePoint& x, double lambda, int m);

// The to-and-fro loop omega_c on S^n. Throws DegenerateInput if |c| != 1.
Loop tf_sphere_embed(const Vec& c, const TfSphereParams& params, int n, int m);

// Push-off of a to-and-fro loop along the meridian arcs through x and -x.
Loop embed_gamma(const Loop& omega, const SpherePoint& x);

}  // namespace loopbu
