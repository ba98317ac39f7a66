#pragma once

#include <vector>

#include "ppb2d/types.hpp"

namespace ppb {

/// The two analytic branches of the barrier eigenfunctions. Plus carries
/// outward-moving boundary character, Minus inward-moving; complex
/// conjugation maps one onto the other.
enum class Branch { Plus, Minus };

inline Branch conjugate(Branch b) {
  return b == Branch::Plus ? Branch::Minus : Branch::Plus;
}

inline int branch_sign(Branch b) { return b == Branch::Plus ? +1 : -1; }

/// Dense complex polynomial in one variable, coefficients in ascending
/// degree. The leading coefficient is kept nonzero except for the zero
/// polynomial, which is stored as {0}.
struct ComplexPoly1D {
  std::vector<cplx> coeffs{cplx{0.0}};

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Horner evaluation of p at xi. Exact for degree <= 1.
cplx eval_poly(const ComplexPoly1D& p, cplx xi);

/// Coefficient-wise derivative; the derivative of a constant is {0}.
ComplexPoly1D poly_derivative(const ComplexPoly1D& p);

/// The degree-n member of the complex Hermite family H^+_n / H^-_n that
/// multiplies the quadratic phase in the barrier eigenfunctions.
///
/// Built from the three-term recurrence with imaginary coupling
///   H_0 = 1,  H_1 = 2 xi,  H_{n+1} = 2 xi H_n -+ 2 i n H_{n-1}
/// (upper sign for Plus). Normalization convention: leading coefficient
/// 2^n. Coefficients are Gaussian integers scaled by powers of 2 and stay
/// exact in double precision up to n ~ 26.
ComplexPoly1D hermite_pm(int n, Branch b);

/// Residual of the defining ODE,  f'' +- 2 i xi f' -+ 2 i n f  with
/// f = H^{+-}_n (upper signs for Plus). Zero to machine precision for the
/// recurrence output; this is the ground truth the recurrence is checked
/// against.
cplx ode_residual(int n, Branch b, cplx xi);

}  // namespace ppb
