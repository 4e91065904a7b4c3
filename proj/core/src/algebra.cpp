#include "nhqc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nhqc/errors.hpp"

namespace nhqc {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
}

// Cyclic Jacobi on a dense real symmetric n x n matrix (row-major). On return
// `a` holds the eigenvalues on its diagonal and `v` the eigenvectors as columns.
void jacobi_symmetric(std::vector<double>& a, std::vector<double>& v, std::size_t n) {
  v.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double total = 0.0;
  for (double x : a) total += x * x;
  if (total == 0.0) return;

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a[p * n + q] * a[p * n + q];
    if (off <= 1e-30 * total) return;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  throw NumericalError("jacobi_symmetric: no convergence");
}

// [[Re h, -Im h], [Im h, Re h]]: real symmetric when h is Hermitian.
std::vector<double> real_embedding(const Matrix& h) {
  const std::size_t n = h.rows();
  const std::size_t m = 2 * n;
  std::vector<double> e(m * m, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Complex z = h(r, c);
      e[r * m + c] = z.real();
      e[(r + n) * m + (c + n)] = z.real();
      e[r * m + (c + n)] = -z.imag();
      e[(r + n) * m + c] = z.imag();
    }
  }
  return e;
}

void require_hermitian(const Matrix& h, const char* what) {
  if (!h.square()) throw ShapeError(std::string(what) + ": matrix is not square");
  if (!is_hermitian(h, tol::hermitian * std::max(1.0, h.max_abs()))) {
    throw ValidationError(std::string(what) + ": matrix is not Hermitian");
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ShapeError("Matrix: ragged initializer list");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::column(std::span<const Complex> entries) {
  Matrix m(entries.size(), 1);
  std::copy(entries.begin(), entries.end(), m.data_.begin());
  return m;
}

Matrix Matrix::column(std::initializer_list<Complex> entries) {
  return column(std::span<const Complex>(entries.begin(), entries.size()));
}

Matrix Matrix::basis(std::size_t n, std::size_t index) {
  if (index >= n) throw ShapeError("Matrix::basis: index out of range");
  Matrix m(n, 1);
  m[index] = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

Complex Matrix::trace() const {
  if (!square()) throw ShapeError("trace: matrix is not square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, Complex s) { return a *= s; }
Matrix operator*(Complex s, Matrix a) { return a *= s; }
Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()) + ")");
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

Matrix kron(std::initializer_list<Matrix> factors) {
  if (factors.size() == 0) return Matrix::identity(1);
  auto it = factors.begin();
  Matrix out = *it++;
  for (; it != factors.end(); ++it) out = kron(out, *it);
  return out;
}

Matrix outer(const Matrix& u, const Matrix& v) {
  if (u.cols() != 1 || v.cols() != 1) throw ShapeError("outer: arguments must be column vectors");
  Matrix out(u.rows(), v.rows());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < v.rows(); ++j) out(i, j) = u[i] * std::conj(v[j]);
  return out;
}

Complex inner(const Matrix& u, const Matrix& v) {
  if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows())
    throw ShapeError("inner: arguments must be column vectors of equal length");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double norm(const Matrix& v) { return std::sqrt(std::abs(inner(v, v))); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

bool is_hermitian(const Matrix& m, double tolerance) {
  if (!m.square()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) >= tolerance) return false;
  return true;
}

bool is_unitary(const Matrix& m, double tolerance) {
  if (!m.square()) return false;
  return max_abs_diff(m.adjoint() * m, Matrix::identity(m.rows())) < tolerance;
}

bool is_density(const Matrix& m) {
  if (!is_hermitian(m)) return false;
  if (std::abs(m.trace() - Complex{1.0}) > tol::density_trace) return false;
  const auto eig = hermitian_eigenvalues(m);
  return eig.empty() || eig.front() >= -tol::density_eigen;
}

std::vector<double> hermitian_eigenvalues(const Matrix& h) {
  require_hermitian(h, "hermitian_eigenvalues");
  const std::size_t n = h.rows();
  auto a = real_embedding(h);
  std::vector<double> v;
  jacobi_symmetric(a, v, 2 * n);
  std::vector<double> all(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) all[i] = a[i * 2 * n + i];
  std::sort(all.begin(), all.end());
  // Each eigenvalue of h appears twice in the embedding.
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (all[2 * i] + all[2 * i + 1]);
  return out;
}

Matrix expm_generator(const Matrix& h, double t) {
  require_hermitian(h, "expm_generator");
  if (!(t >= 0.0)) throw ValidationError("expm_generator: duration must be non-negative");
  const std::size_t n = h.rows();
  const std::size_t m = 2 * n;

  auto a = real_embedding(h);
  std::vector<double> v;
  jacobi_symmetric(a, v, m);

  std::vector<double> cos_l(m), sin_l(m);
  for (std::size_t k = 0; k < m; ++k) {
    cos_l[k] = std::cos(a[k * m + k] * t);
    sin_l[k] = std::sin(a[k * m + k] * t);
  }

  // f(embedding) = V f(L) V^T embeds f(h); only the left block column is needed
  // to read off Re f(h) (top) and Im f(h) (bottom).
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double cos_re = 0.0, cos_im = 0.0, sin_re = 0.0, sin_im = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double top = v[r * m + k] * v[c * m + k];
        const double bottom = v[(r + n) * m + k] * v[c * m + k];
        cos_re += top * cos_l[k];
        cos_im += bottom * cos_l[k];
        sin_re += top * sin_l[k];
        sin_im += bottom * sin_l[k];
      }
      // exp(-iht) = cos(ht) - i sin(ht)
      out(r, c) = Complex{cos_re + sin_im, cos_im - sin_re};
    }
  }
  return out;
}

double trace_fidelity(const Matrix& u_ideal, const Matrix& u_actual) {
  if (!u_ideal.square() || !u_actual.square() || u_ideal.rows() != u_actual.rows()) {
    throw ShapeError("trace_fidelity: operands must be square with equal dimensions");
  }
  const Matrix ideal_dag = u_ideal.adjoint();
  const double norm_ideal = std::abs((ideal_dag * u_ideal).trace());
  if (norm_ideal == 0.0) throw ValidationError("trace_fidelity: ideal operator has zero norm");
  return std::abs((ideal_dag * u_actual).trace()) / norm_ideal;
}

Matrix pauli_x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
Matrix pauli_y() { return Matrix{{0.0, -kI}, {kI, 0.0}}; }
Matrix pauli_z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace nhqc
