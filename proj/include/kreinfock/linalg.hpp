#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace kreinfock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultMetricTol = 1e-10;

// Largest absolute entry; 0 for empty matrices.
inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

// Seeded source of complex Gaussian samples. Every randomized check threads one
// of these through so a run is reproducible from its seed.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  Complex complex_normal() {
    double re = normal_(engine_);
    double im = normal_(engine_);
    return {re, im};
  }

  Vector vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
    return v;
  }

  Vector unit_vector(Eigen::Index n) {
    Vector v = vector(n);
    double norm = v.norm();
    return norm > 0 ? Vector(v / norm) : v;
  }

  Matrix matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
  }

  // Haar-ish random unitary from the QR factor of a Ginibre matrix.
  Matrix unitary(Eigen::Index n) {
    Eigen::HouseholderQR<Matrix> qr(matrix(n, n));
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex d = r(i, i);
      double a = std::abs(d);
      if (a > 0) q.col(i) *= d / a;
    }
    return q;
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace kreinfock
