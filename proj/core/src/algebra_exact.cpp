#include "qaction/algebra_exact.hpp"

#include <numeric>
#include <sstream>

namespace qaction {

namespace {
std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("Rational: 64-bit overflow");
  }
  return out;
}
std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("Rational: 64-bit overflow");
  }
  return out;
}
}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

void Rational::normalize() {
  if (den == 0) {
    throw std::domain_error("Rational: zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                  checked_mul(den, o.den));
}
Rational Rational::operator-(const Rational& o) const { return *this + (-o); }
Rational Rational::operator*(const Rational& o) const {
  return Rational(checked_mul(num, o.num), checked_mul(den, o.den));
}
Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) {
    throw std::domain_error("Rational: division by zero");
  }
  return Rational(checked_mul(num, o.den), checked_mul(den, o.num));
}

std::string Rational::str() const {
  std::ostringstream os;
  os << num;
  if (den != 1) os << "/" << den;
  return os.str();
}

GaussianRational GaussianRational::operator+(const GaussianRational& o) const {
  return {re + o.re, im + o.im};
}
GaussianRational GaussianRational::operator-(const GaussianRational& o) const {
  return {re - o.re, im - o.im};
}
GaussianRational GaussianRational::operator*(const GaussianRational& o) const {
  return {re * o.re - im * o.im, re * o.im + im * o.re};
}

std::string GaussianRational::str() const {
  if (im.is_zero()) return re.str();
  if (re.is_zero()) return im.str() + "i";
  return re.str() + (im.num < 0 ? "" : "+") + im.str() + "i";
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = GaussianRational(Rational(1));
  }
  return m;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw std::invalid_argument("ExactMatrix: shape mismatch");
  }
  ExactMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
  return m;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const { return *this + (-o); }

ExactMatrix ExactMatrix::operator-() const {
  ExactMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) {
    throw std::invalid_argument("ExactMatrix: shape mismatch in product");
  }
  ExactMatrix m(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const GaussianRational& a = at(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        const GaussianRational& b = o.at(k, c);
        if (b.is_zero()) continue;
        m.at(r, c) = m.at(r, c) + a * b;
      }
    }
  }
  return m;
}

ExactMatrix ExactMatrix::operator*(const GaussianRational& s) const {
  ExactMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * s;
  return m;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      m.at(c, r) = at(r, c);
    }
  }
  return m;
}

ExactMatrix ExactMatrix::conjugate() const {
  ExactMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i].conj();
  return m;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool ExactMatrix::is_real() const {
  for (const auto& x : data_) {
    if (!x.is_real()) return false;
  }
  return true;
}

bool ExactMatrix::is_imaginary() const {
  for (const auto& x : data_) {
    if (!x.is_imaginary()) return false;
  }
  return true;
}

std::size_t ExactMatrix::rank() const {
  ExactMatrix work = *this;
  std::size_t rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t pivot = row;
    while (pivot < rows_ && work.at(pivot, col).is_zero()) ++pivot;
    if (pivot == rows_) continue;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::swap(work.at(row, c), work.at(pivot, c));
    }
    // scale the pivot row to 1 and clear below
    const GaussianRational p = work.at(row, col);
    const Rational norm = p.re * p.re + p.im * p.im;
    const GaussianRational inv(p.re / norm, (-p.im) / norm);
    for (std::size_t c = col; c < cols_; ++c) {
      work.at(row, c) = work.at(row, c) * inv;
    }
    for (std::size_t r = row + 1; r < rows_; ++r) {
      const GaussianRational f = work.at(r, col);
      if (f.is_zero()) continue;
      for (std::size_t c = col; c < cols_; ++c) {
        work.at(r, c) = work.at(r, c) - f * work.at(row, c);
      }
    }
    ++row;
    ++rank;
  }
  return rank;
}

ExactMatrix anticommutator(const ExactMatrix& a, const ExactMatrix& b) {
  return a * b + b * a;
}

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) { return a * b - b * a; }

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      if (a.at(ar, ac).is_zero()) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          m.at(ar * b.rows() + br, ac * b.cols() + bc) = a.at(ar, ac) * b.at(br, bc);
        }
      }
    }
  }
  return m;
}

}  // namespace qaction
