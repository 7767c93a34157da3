#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "kreinfock/error.hpp"
#include "kreinfock/linalg.hpp"

namespace kreinfock {

/// Outcome of checking that a matrix is a selfadjoint unitary (a metric
/// operator). Residuals are max-entry norms of eta - eta* and eta^2 - I.
struct MetricVerdict {
  bool valid = false;
  std::optional<ErrorKind> failure;
  double selfadjoint_residual = 0.0;
  double involution_residual = 0.0;
};

/// Never throws for square input; throws kNonSquare otherwise.
MetricVerdict validate_metric(const Matrix& eta, double tol = kDefaultMetricTol);

/// A finite-dimensional Hilbert space C^dim with its standard inner product
/// <v|w> (conjugate-linear on the left) and a validated metric operator eta.
class KreinTriplet {
 public:
  /// Throws kMetricInvalid if eta is not a selfadjoint unitary within tol, and
  /// kDimensionMismatch for an empty matrix.
  explicit KreinTriplet(Matrix eta, double tol = kDefaultMetricTol);

  Eigen::Index dim() const { return eta_.rows(); }
  const Matrix& eta() const { return eta_; }
  double tol() const { return tol_; }
  const MetricVerdict& verdict() const { return verdict_; }

  /// (v|w) = <v|eta w>.
  Complex form(const Vector& v, const Vector& w) const;

 private:
  Matrix eta_;
  double tol_;
  MetricVerdict verdict_;
};

/// (v|w) = <v|eta w>. Throws kDimensionMismatch on length mismatch.
Complex indefinite_form(const Matrix& eta, const Vector& v, const Vector& w);

struct FundamentalDecomposition {
  std::vector<Vector> basis_plus;
  std::vector<Vector> basis_minus;
  Matrix proj_plus;
  Matrix proj_minus;

  Eigen::Index dim_plus() const { return static_cast<Eigen::Index>(basis_plus.size()); }
  Eigen::Index dim_minus() const { return static_cast<Eigen::Index>(basis_minus.size()); }
};

/// Splits C^dim into the +1 and -1 eigenspaces of eta. Eigenvalues from a
/// hermitian eigensolve are snapped to +-1 when within tol; anything else is
/// rejected with kMetricInvalid.
FundamentalDecomposition fundamental_decomposition(const Matrix& eta,
                                                   double tol = kDefaultMetricTol);

using HermitianForm = std::function<Complex(const Vector&, const Vector&)>;

/// Standard positive-definite inner product <v|w>.
HermitianForm standard_form();
/// Indefinite form (v|w) = <v|eta w>; copies eta.
HermitianForm metric_form(Matrix eta);

/// G(i, j) = form(v_i, v_j). Throws kDimensionMismatch on ragged input.
Matrix gram_matrix(const HermitianForm& form, const std::vector<Vector>& vectors);

}  // namespace kreinfock
