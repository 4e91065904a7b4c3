#pragma once

// Reference implementations used only by the tests. They share the Matrix
// container with the library but none of its arithmetic, exponentials or pulse
// tables, so agreement is a genuine cross-check.

#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "nhqc/algebra.hpp"
#include "nhqc/pulses.hpp"

namespace oracle {

using nhqc::Complex;
using nhqc::Matrix;
constexpr double pi = 3.14159265358979323846;

inline Matrix naive_matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

inline Matrix dagger(const Matrix& a) {
  Matrix c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

inline Matrix add(const Matrix& a, const Matrix& b, Complex sb = 1.0) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + sb * b(i, j);
  return c;
}

inline Matrix scale(const Matrix& a, Complex s) {
  Matrix c = a;
  for (auto& x : c.data()) x *= s;
  return c;
}

// (A ⊗ B)[i*p + k, j*q + l] = A[i, j] B[k, l]
inline Matrix naive_kron(const Matrix& a, const Matrix& b) {
  const std::size_t p = b.rows(), q = b.cols();
  Matrix c(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) c(i * p + k, j * q + l) = a(i, j) * b(k, l);
  return c;
}

inline double max_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline Matrix eye(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

/// exp(-i h t) by scaling and squaring of a 40-term Taylor series.
inline Matrix taylor_expm(const Matrix& h, double t) {
  const std::size_t n = h.rows();
  Matrix a = scale(h, Complex(0.0, -t));
  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(a(i, j));
    norm1 = std::max(norm1, col);
  }
  int squarings = 0;
  while (norm1 > 0.25) {
    norm1 /= 2.0;
    ++squarings;
  }
  a = scale(a, std::ldexp(1.0, -squarings));
  Matrix sum = eye(n), term = eye(n);
  for (int k = 1; k <= 40; ++k) {
    term = scale(naive_matmul(term, a), 1.0 / k);
    sum = add(sum, term);
  }
  for (int s = 0; s < squarings; ++s) sum = naive_matmul(sum, sum);
  return sum;
}

/// i[ρ, H] + ½ Σ Γ (2σρσ† − σ†σρ − ρσ†σ), term by term.
inline Matrix lindblad_rhs(const Matrix& rho, const Matrix& h, const std::vector<Matrix>& ops,
                           const std::vector<double>& rates) {
  Matrix out = scale(add(naive_matmul(rho, h), naive_matmul(h, rho), -1.0), Complex(0.0, 1.0));
  for (std::size_t j = 0; j < ops.size(); ++j) {
    const Matrix& s = ops[j];
    const Matrix sd = dagger(s);
    const Matrix sds = naive_matmul(sd, s);
    Matrix l = scale(naive_matmul(naive_matmul(s, rho), sd), 2.0);
    l = add(l, naive_matmul(sds, rho), -1.0);
    l = add(l, naive_matmul(rho, sds), -1.0);
    out = add(out, scale(l, 0.5 * rates[j]));
  }
  return out;
}

// Three-level drive in the (|0>, |1>, |e>) basis, built straight from the
// bright-state definition.
inline Matrix hamiltonian(double theta, double phi, double phi0, double eps, double delta) {
  const Complex b0 = std::sin(theta / 2);
  const Complex b1 = -std::cos(theta / 2) * std::polar(1.0, phi);
  const Complex drive = (1.0 + eps) * std::polar(1.0, -phi0);
  Matrix h(3, 3);
  h(0, 2) = drive * b0;
  h(1, 2) = drive * b1;
  h(2, 0) = std::conj(h(0, 2));
  h(2, 1) = std::conj(h(1, 2));
  h(2, 2) = delta;
  return h;
}

// (area, phase) pairs with p = base phase, listed independently of the library.
inline std::vector<std::pair<double, double>> sequence(nhqc::SchemeId s, double g, double p = 0.0) {
  using nhqc::SchemeId;
  const double h = pi / 2;
  switch (s) {
    case SchemeId::nhqc:
      return {{h, p}, {h, p + pi - g}};
    case SchemeId::opnhqc:
      return {{h, p}, {h, p + pi - g / 2}, {h, p + pi - g}, {h, p + 2 * pi - 1.5 * g}};
    case SchemeId::tlnhqc:
      return {{h, p}, {h, p + pi - g / 2}, {h, p}, {h, p + pi - g / 2}};
    case SchemeId::dcnhqc:
      return {{pi / 4, p},          {h, p + h},          {pi / 4, p},
              {pi / 4, p + pi - g}, {h, p - h - g},      {pi / 4, p + pi - g}};
  }
  return {};
}

inline Matrix propagate(nhqc::SchemeId s, double theta, double phi, double g, double eps, double delta,
                        double p = 0.0) {
  Matrix u = eye(3);
  for (const auto& [area, phase] : sequence(s, g, p))
    u = naive_matmul(taylor_expm(hamiltonian(theta, phi, phase, eps, delta), area), u);
  return u;
}

// e^{iγ/2}(cos(γ/2) I − i sin(γ/2) n·σ)
inline Matrix target(double theta, double phi, double g) {
  const double nx = std::sin(theta) * std::cos(phi), ny = std::sin(theta) * std::sin(phi), nz = std::cos(theta);
  const Complex c = std::cos(g / 2), s = Complex(0.0, -std::sin(g / 2));
  Matrix u(2, 2);
  u(0, 0) = c + s * nz;
  u(0, 1) = s * Complex(nx, -ny);
  u(1, 0) = s * Complex(nx, ny);
  u(1, 1) = c - s * nz;
  return scale(u, std::polar(1.0, g / 2));
}

inline double gate_fidelity(const Matrix& ideal2, const Matrix& u3) {
  Complex tr = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) tr += std::conj(ideal2(k, i)) * u3(k, i);
  return std::abs(tr) / 2.0;
}

inline double scheme_fidelity(nhqc::SchemeId s, double theta, double phi, double g, double eps, double delta = 0.0) {
  return gate_fidelity(target(theta, phi, g), propagate(s, theta, phi, g, eps, delta));
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen); }

  Matrix matrix(std::size_t r, std::size_t c) {
    Matrix m(r, c);
    for (auto& x : m.data()) x = Complex(uniform(), uniform());
    return m;
  }
  Matrix hermitian(std::size_t n) {
    const Matrix a = matrix(n, n);
    return scale(add(a, dagger(a)), 0.5);
  }
  Matrix density(std::size_t n) {
    const Matrix a = matrix(n, n);
    Matrix rho = naive_matmul(a, dagger(a));
    Complex tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += rho(i, i);
    return scale(rho, 1.0 / tr.real());
  }
};

}  // namespace oracle
