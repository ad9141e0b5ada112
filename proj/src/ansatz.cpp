#include "ionswap/ansatz.hpp"

namespace ionswap {

StretchAnsatz::StretchAnsatz(double rho_in, double A, double B)
    : rho_in_(rho_in), A_(A), B_(B) {
  // Solved from the six boundary/midpoint constraints; exact rationals.
  const double g = 1.0 - rho_in;
  c_[0] = rho_in;
  c_[1] = 0.5 * A;
  c_[2] = 240.0 * g - 10.0 * A - B / 1024.0;
  c_[3] = -2560.0 * g + 80.0 * A + 5.0 * B / 256.0;
  c_[4] = 11520.0 * g - 320.0 * A - 5.0 * B / 32.0;
  c_[5] = -24576.0 * g + 640.0 * A + 5.0 * B / 8.0;
  c_[6] = 20480.0 * g - 512.0 * A - 5.0 * B / 4.0;
  c_[7] = B;
}

void StretchAnsatz::eval_s(double s, double out[5]) const {
  // p(u) = P(w), w = u^2, u = s - 1/2; derivatives via the chain rule.
  const double u = s - 0.5;
  const double w = u * u;
  double P0 = 0, P1 = 0, P2 = 0, P3 = 0, P4 = 0;
  for (int k = 7; k >= 0; --k) {
    P0 = P0 * w + c_[k];
    if (k >= 1) P1 = P1 * w + k * c_[k];
    if (k >= 2) P2 = P2 * w + k * (k - 1) * c_[k];
    if (k >= 3) P3 = P3 * w + k * (k - 1) * (k - 2) * c_[k];
    if (k >= 4) P4 = P4 * w + k * (k - 1) * (k - 2) * (k - 3) * c_[k];
  }
  out[0] = P0;
  out[1] = 2.0 * u * P1;
  out[2] = 2.0 * P1 + 4.0 * w * P2;
  out[3] = u * (12.0 * P2 + 8.0 * w * P3);
  out[4] = 12.0 * P2 + 48.0 * w * P3 + 16.0 * w * w * P4;
}

}  // namespace ionswap
