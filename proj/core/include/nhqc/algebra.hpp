#pragma once

// Small dense complex linear algebra (dimension 2..64).
//
// Matrix is a plain value type with row-major storage. Column vectors are
// n x 1 matrices; helpers below build the common ones.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nhqc {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

namespace tol {
inline constexpr double unitary = 1e-12;
inline constexpr double hermitian = 1e-12;
inline constexpr double oracle = 1e-11;
inline constexpr double density_trace = 1e-10;
inline constexpr double density_eigen = 1e-10;
}  // namespace tol

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  // Nested initializer, one inner list per row.
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix column(std::span<const Complex> entries);
  static Matrix column(std::initializer_list<Complex> entries);
  // |index> in dimension n.
  static Matrix basis(std::size_t n, std::size_t index);
  static Matrix diagonal(std::span<const Complex> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  // Flat access for column/row vectors.
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Complex trace() const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, Complex s);
Matrix operator*(Complex s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

Matrix matmul(const Matrix& a, const Matrix& b);

// a's indices are the slow (leftmost) factor.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron(std::initializer_list<Matrix> factors);

// |u><v|
Matrix outer(const Matrix& u, const Matrix& v);
// <u|v> for column vectors.
Complex inner(const Matrix& u, const Matrix& v);
double norm(const Matrix& v);

double max_abs_diff(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tolerance = tol::hermitian);
bool is_unitary(const Matrix& m, double tolerance = tol::unitary);
bool is_density(const Matrix& m);

// Ascending eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const Matrix& h);

/// exp(-i h t) for Hermitian h, via a Jacobi eigendecomposition of the real
/// 2n x 2n embedding of h. Throws ValidationError if h is not Hermitian or t < 0.
Matrix expm_generator(const Matrix& h, double t);

/// |Tr(U_ideal^dag U_actual)| / |Tr(U_ideal^dag U_ideal)|. Invariant under a
/// global phase of either argument.
double trace_fidelity(const Matrix& u_ideal, const Matrix& u_actual);

// Pauli matrices in the {|0>, |1>} basis.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace nhqc
