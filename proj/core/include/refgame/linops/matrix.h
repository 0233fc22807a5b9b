#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace refgame::linops {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

// Square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix diagonal(std::span<const double> diag);
  // |v><v|
  static ComplexMatrix outer(std::span<const Complex> v);
  // Projector onto computational basis state `index`.
  static ComplexMatrix basis_projector(std::size_t dim, std::size_t index);

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  std::span<Complex> entries() { return data_; }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);
  // this += s * o
  ComplexMatrix& axpy(Complex s, const ComplexMatrix& o);

  ComplexMatrix adjoint() const;
  Complex trace() const;
  // 0.5 * (A + A^dagger)
  ComplexMatrix hermitian_part() const;

  double frobenius_norm() const;
  double max_abs() const;
  bool is_hermitian(double tol = 1e-10) const;

  bool operator==(const ComplexMatrix& o) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
Vector operator*(const ComplexMatrix& a, std::span<const Complex> v);

// tr(A^dagger B); real part is the Frobenius inner product.
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);
// tr(A B) for Hermitian A, B; imaginary round-off is dropped.
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

double norm(std::span<const Complex> v);
Complex dot(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>

}  // namespace refgame::linops
