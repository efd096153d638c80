#include "dqc1/qla.hpp"

namespace dqc1 {

Matrix2c partial_trace(const Matrix4c& rho, Subsystem keep) {
  Matrix2c out;
  if (keep == Subsystem::control) {
    // out[c,c'] = sum_a rho[2c+a, 2c'+a]
    for (int c = 0; c < 2; ++c)
      for (int cp = 0; cp < 2; ++cp)
        out(c, cp) = rho(2 * c, 2 * cp) + rho(2 * c + 1, 2 * cp + 1);
  } else {
    // out[a,a'] = sum_c rho[2c+a, 2c+a']
    for (int a = 0; a < 2; ++a)
      for (int ap = 0; ap < 2; ++ap)
        out(a, ap) = rho(a, ap) + rho(2 + a, 2 + ap);
  }
  return out;
}

Matrix4c partial_transpose(const Matrix4c& rho, Subsystem subsystem) {
  Matrix4c out;
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int cp = 0; cp < 2; ++cp)
        for (int ap = 0; ap < 2; ++ap) {
          if (subsystem == Subsystem::control)
            out(2 * c + a, 2 * cp + ap) = rho(2 * cp + a, 2 * c + ap);
          else
            out(2 * c + a, 2 * cp + ap) = rho(2 * c + ap, 2 * cp + a);
        }
  return out;
}

}  // namespace dqc1
