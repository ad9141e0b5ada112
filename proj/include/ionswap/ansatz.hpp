#pragma once

#include <array>

namespace ionswap {

// Stretch-mode scaling function on normalised time s = t/t_f: a 14th-order
// polynomial, even about s = 1/2, with
//   rho(0) = rho(1) = 1, four vanishing derivatives at s = 0 and s = 1,
//   rho(1/2) = rho_in, rho''(1/2) = A (s-units), and B the coefficient of
//   (s - 1/2)^14.
// The interior coefficients follow uniquely from those constraints.
class StretchAnsatz {
public:
  StretchAnsatz(double rho_in, double A, double B);

  // out[k] = d^k rho / ds^k at s, k = 0..4.
  void eval_s(double s, double out[5]) const;

  double rho_in() const { return rho_in_; }
  double A() const { return A_; }
  double B() const { return B_; }
  // coefficient of (s-1/2)^(2k)
  const std::array<double, 8>& coefficients() const { return c_; }

private:
  double rho_in_, A_, B_;
  std::array<double, 8> c_;
};

}  // namespace ionswap
