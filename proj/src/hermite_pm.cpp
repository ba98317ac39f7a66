#include "ppb2d/hermite_pm.hpp"

#include <cassert>
#include <stdexcept>

namespace ppb {

cplx eval_poly(const ComplexPoly1D& p, cplx xi) {
  cplx acc{0.0};
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
    acc = acc * xi + *it;
  }
  return acc;
}

ComplexPoly1D poly_derivative(const ComplexPoly1D& p) {
  if (p.coeffs.size() <= 1) return ComplexPoly1D{{cplx{0.0}}};
  ComplexPoly1D d;
  d.coeffs.resize(p.coeffs.size() - 1);
  for (std::size_t k = 1; k < p.coeffs.size(); ++k) {
    d.coeffs[k - 1] = static_cast<double>(k) * p.coeffs[k];
  }
  return d;
}

ComplexPoly1D hermite_pm(int n, Branch b) {
  if (n < 0) throw std::invalid_argument("hermite_pm: n must be nonnegative");
  // Coupling sign: H_{n+1} = 2 xi H_n - s * 2 i n H_{n-1}, s = +1 for Plus.
  const cplx coupling = (b == Branch::Plus ? -2.0 * I : 2.0 * I);

  ComplexPoly1D prev{{cplx{1.0}}};  // H_0
  if (n == 0) return prev;
  ComplexPoly1D cur{{cplx{0.0}, cplx{2.0}}};  // H_1 = 2 xi
  for (int k = 1; k < n; ++k) {
    ComplexPoly1D next;
    next.coeffs.assign(cur.coeffs.size() + 1, cplx{0.0});
    for (std::size_t j = 0; j < cur.coeffs.size(); ++j) {
      next.coeffs[j + 1] = 2.0 * cur.coeffs[j];
    }
    for (std::size_t j = 0; j < prev.coeffs.size(); ++j) {
      next.coeffs[j] += coupling * static_cast<double>(k) * prev.coeffs[j];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

cplx ode_residual(int n, Branch b, cplx xi) {
  if (n < 0) throw std::invalid_argument("ode_residual: n must be nonnegative");
  const double s = branch_sign(b);
  const ComplexPoly1D f = hermite_pm(n, b);
  const ComplexPoly1D f1 = poly_derivative(f);
  const ComplexPoly1D f2 = poly_derivative(f1);
  return eval_poly(f2, xi) + s * 2.0 * I * xi * eval_poly(f1, xi) -
         s * 2.0 * I * static_cast<double>(n) * eval_poly(f, xi);
}

}  // namespace ppb
