#include "kreinfock/krein.hpp"

#include <cmath>
#include <string>

namespace kreinfock {

MetricVerdict validate_metric(const Matrix& eta, double tol) {
  if (eta.rows() != eta.cols()) {
    throw Error(ErrorKind::kNonSquare, "metric is " + std::to_string(eta.rows()) +
                                           "x" + std::to_string(eta.cols()));
  }
  MetricVerdict verdict;
  verdict.selfadjoint_residual = max_abs(Matrix(eta - eta.adjoint()));
  Matrix identity = Matrix::Identity(eta.rows(), eta.cols());
  verdict.involution_residual = max_abs(Matrix(eta * eta - identity));
  if (verdict.selfadjoint_residual > tol) {
    verdict.failure = ErrorKind::kNotSelfadjoint;
  } else if (verdict.involution_residual > tol) {
    verdict.failure = ErrorKind::kNotInvolutive;
  }
  verdict.valid = !verdict.failure.has_value();
  return verdict;
}

KreinTriplet::KreinTriplet(Matrix eta, double tol) : eta_(std::move(eta)), tol_(tol) {
  if (eta_.rows() == 0 || eta_.cols() == 0) {
    throw Error(ErrorKind::kDimensionMismatch, "metric over the zero space");
  }
  verdict_ = validate_metric(eta_, tol_);
  if (!verdict_.valid) {
    throw Error(ErrorKind::kMetricInvalid,
                std::string(to_string(*verdict_.failure)) + " (selfadjoint residual " +
                    std::to_string(verdict_.selfadjoint_residual) + ", involution residual " +
                    std::to_string(verdict_.involution_residual) + ")");
  }
}

Complex KreinTriplet::form(const Vector& v, const Vector& w) const {
  return indefinite_form(eta_, v, w);
}

Complex indefinite_form(const Matrix& eta, const Vector& v, const Vector& w) {
  if (eta.rows() != eta.cols() || v.size() != eta.rows() || w.size() != eta.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "indefinite_form operands");
  }
  // Eigen's dot is conjugate-linear in the first argument.
  return v.dot(eta * w);
}

FundamentalDecomposition fundamental_decomposition(const Matrix& eta, double tol) {
  MetricVerdict verdict = validate_metric(eta, tol);
  if (!verdict.valid) {
    throw Error(ErrorKind::kMetricInvalid, "fundamental decomposition of a non-metric");
  }
  Matrix hermitian = 0.5 * (eta + eta.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kMetricInvalid, "eigensolve did not converge");
  }
  FundamentalDecomposition out;
  const Eigen::Index n = eta.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    double lambda = solver.eigenvalues()(k);
    if (std::abs(lambda - 1.0) <= tol) {
      out.basis_plus.push_back(solver.eigenvectors().col(k));
    } else if (std::abs(lambda + 1.0) <= tol) {
      out.basis_minus.push_back(solver.eigenvectors().col(k));
    } else {
      throw Error(ErrorKind::kMetricInvalid,
                  "eigenvalue " + std::to_string(lambda) + " is not +-1");
    }
  }
  out.proj_plus = Matrix::Zero(n, n);
  out.proj_minus = Matrix::Zero(n, n);
  for (const Vector& v : out.basis_plus) out.proj_plus += v * v.adjoint();
  for (const Vector& v : out.basis_minus) out.proj_minus += v * v.adjoint();
  return out;
}

HermitianForm standard_form() {
  return [](const Vector& v, const Vector& w) {
    if (v.size() != w.size()) throw Error(ErrorKind::kDimensionMismatch, "inner product");
    return v.dot(w);
  };
}

HermitianForm metric_form(Matrix eta) {
  return [eta = std::move(eta)](const Vector& v, const Vector& w) {
    return indefinite_form(eta, v, w);
  };
}

Matrix gram_matrix(const HermitianForm& form, const std::vector<Vector>& vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  for (const Vector& v : vectors) {
    if (v.size() != vectors.front().size()) {
      throw Error(ErrorKind::kDimensionMismatch, "gram_matrix vectors differ in length");
    }
  }
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = form(vectors[i], vectors[j]);
  return g;
}

}  // namespace kreinfock
