#pragma once

#include <vector>

#include "ppb2d/types.hpp"

namespace ppb {

/// Dense complex polynomial in two variables, coefficient of x^i y^j at
/// (i, j). Degrees stay small here (<= ~32 per variable), so the dense
/// matrix is the right representation.
class Poly2D {
 public:
  Poly2D() : nx_(1), ny_(1), c_(1, cplx{0.0}) {}
  Poly2D(int nx_terms, int ny_terms)
      : nx_(nx_terms), ny_(ny_terms), c_(static_cast<std::size_t>(nx_terms) * ny_terms, cplx{0.0}) {}

  static Poly2D constant(cplx value) {
    Poly2D p(1, 1);
    p.at(0, 0) = value;
    return p;
  }

  int x_terms() const { return nx_; }  // max x power + 1
  int y_terms() const { return ny_; }

  cplx& at(int i, int j) { return c_[static_cast<std::size_t>(i) * ny_ + j]; }
  const cplx& at(int i, int j) const { return c_[static_cast<std::size_t>(i) * ny_ + j]; }

  /// Horner evaluation, outer in x, inner in y.
  cplx eval(double x, double y) const {
    cplx acc{0.0};
    for (int i = nx_ - 1; i >= 0; --i) {
      cplx row{0.0};
      for (int j = ny_ - 1; j >= 0; --j) row = row * y + at(i, j);
      acc = acc * x + row;
    }
    return acc;
  }

  Poly2D dx() const {
    if (nx_ == 1) return Poly2D(1, ny_);
    Poly2D d(nx_ - 1, ny_);
    for (int i = 1; i < nx_; ++i)
      for (int j = 0; j < ny_; ++j) d.at(i - 1, j) = static_cast<double>(i) * at(i, j);
    return d;
  }

  Poly2D dy() const {
    if (ny_ == 1) return Poly2D(nx_, 1);
    Poly2D d(nx_, ny_ - 1);
    for (int i = 0; i < nx_; ++i)
      for (int j = 1; j < ny_; ++j) d.at(i, j - 1) = static_cast<double>(j) * at(i, j);
    return d;
  }

  /// Multiplication by x^sx y^sy (index shift).
  Poly2D shifted(int sx, int sy) const {
    Poly2D s(nx_ + sx, ny_ + sy);
    for (int i = 0; i < nx_; ++i)
      for (int j = 0; j < ny_; ++j) s.at(i + sx, j + sy) = at(i, j);
    return s;
  }

  Poly2D conjugated() const {
    Poly2D p(nx_, ny_);
    for (std::size_t k = 0; k < c_.size(); ++k) p.c_[k] = std::conj(c_[k]);
    return p;
  }

  Poly2D scaled(cplx w) const {
    Poly2D p(nx_, ny_);
    for (std::size_t k = 0; k < c_.size(); ++k) p.c_[k] = w * c_[k];
    return p;
  }

  void add_scaled(const Poly2D& other, cplx w) {
    grow_to(other.nx_, other.ny_);
    for (int i = 0; i < other.nx_; ++i)
      for (int j = 0; j < other.ny_; ++j) at(i, j) += w * other.at(i, j);
  }

  friend Poly2D operator+(const Poly2D& a, const Poly2D& b) {
    Poly2D r = a;
    r.add_scaled(b, cplx{1.0});
    return r;
  }

 private:
  void grow_to(int nx_terms, int ny_terms) {
    if (nx_terms <= nx_ && ny_terms <= ny_) return;
    Poly2D bigger(std::max(nx_, nx_terms), std::max(ny_, ny_terms));
    for (int i = 0; i < nx_; ++i)
      for (int j = 0; j < ny_; ++j) bigger.at(i, j) = at(i, j);
    *this = std::move(bigger);
  }

  int nx_, ny_;
  std::vector<cplx> c_;
};

}  // namespace ppb
