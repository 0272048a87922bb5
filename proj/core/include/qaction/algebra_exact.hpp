#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Exact arithmetic over Gaussian rationals for the finite matrix identities:
// these are algebraic statements, so no floating point appears anywhere.

namespace qaction {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT implicit by design
  Rational(std::int64_t n, std::int64_t d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-num, den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool is_zero() const { return num == 0; }
  std::string str() const;

 private:
  void normalize();
};

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r) : re(r) {}  // NOLINT implicit by design
  GaussianRational(Rational r, Rational i) : re(r), im(i) {}
  static GaussianRational unit_imag() { return GaussianRational(Rational(0), Rational(1)); }

  GaussianRational operator+(const GaussianRational& o) const;
  GaussianRational operator-(const GaussianRational& o) const;
  GaussianRational operator*(const GaussianRational& o) const;
  GaussianRational operator-() const { return GaussianRational(-re, -im); }
  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }
  GaussianRational conj() const { return GaussianRational(re, -im); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  bool is_imaginary() const { return re.is_zero(); }
  std::string str() const;
};

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  static ExactMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GaussianRational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussianRational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator*(const GaussianRational& s) const;
  ExactMatrix operator-() const;
  bool operator==(const ExactMatrix& o) const;

  ExactMatrix transpose() const;
  ExactMatrix conjugate() const;
  ExactMatrix adjoint() const { return conjugate().transpose(); }

  bool is_zero() const;
  bool is_symmetric() const { return *this == transpose(); }
  bool is_antisymmetric() const { return transpose() == -*this; }
  bool is_real() const;
  bool is_imaginary() const;

  // exact rank by Gauss-Jordan elimination over the Gaussian rationals
  std::size_t rank() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<GaussianRational> data_;
};

ExactMatrix anticommutator(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b);

// Kronecker product, used to assemble 4x4 matrices from 2x2 blocks.
ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);

}  // namespace qaction
