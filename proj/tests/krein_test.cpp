#include "kreinfock/krein.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "kreinfock/models.hpp"

namespace kreinfock {
namespace {

Vector e(int d, int k) {
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return v;
}

Matrix diag(std::initializer_list<double> entries) {
  Matrix m = Matrix::Zero(entries.size(), entries.size());
  int i = 0;
  for (double x : entries) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

TEST(ValidateMetric, IdentityIsValid) {
  MetricVerdict v = validate_metric(Matrix::Identity(2, 2));
  EXPECT_TRUE(v.valid);
  EXPECT_EQ(v.selfadjoint_residual, 0.0);
  EXPECT_EQ(v.involution_residual, 0.0);
}

TEST(ValidateMetric, MinusMinkowskiIsValid) {
  EXPECT_TRUE(validate_metric(diag({-1, 1, 1, 1})).valid);
}

TEST(ValidateMetric, UpperTriangularIsNotSelfadjoint) {
  Matrix m(2, 2);
  m << 1, 1, 0, 1;
  MetricVerdict v = validate_metric(m);
  EXPECT_FALSE(v.valid);
  ASSERT_TRUE(v.failure.has_value());
  EXPECT_EQ(*v.failure, ErrorKind::kNotSelfadjoint);
  EXPECT_DOUBLE_EQ(v.selfadjoint_residual, 1.0);
}

TEST(ValidateMetric, SelfadjointButNotInvolutive) {
  MetricVerdict v = validate_metric(diag({2, 1}));
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(*v.failure, ErrorKind::kNotInvolutive);
  EXPECT_DOUBLE_EQ(v.involution_residual, 3.0);
}

TEST(ValidateMetric, NonSquareThrows) {
  try {
    validate_metric(Matrix::Zero(2, 3));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::kNonSquare);
  }
}

TEST(KreinTriplet, RejectsZeroDimensionAndBadMetric) {
  EXPECT_THROW(KreinTriplet(Matrix(0, 0)), Error);
  try {
    KreinTriplet t(diag({2, 1}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::kMetricInvalid);
  }
}

TEST(IndefiniteForm, Examples) {
  EXPECT_EQ(indefinite_form(Matrix::Identity(2, 2), e(2, 0), e(2, 0)), Complex(1.0));
  EXPECT_EQ(indefinite_form(-Matrix::Identity(1, 1), e(1, 0), e(1, 0)), Complex(-1.0));
  EXPECT_EQ(indefinite_form(eta_zero(), e(2, 0), e(2, 1)), Complex(1.0));
}

TEST(IndefiniteForm, DimensionMismatch) {
  try {
    indefinite_form(Matrix::Identity(2, 2), e(3, 0), e(2, 0));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::kDimensionMismatch);
  }
}

TEST(IndefiniteForm, ConjugateSymmetricAndSesquilinear) {
  Sampler s(7);
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = s.uniform(0, 2 * std::numbers::pi);
    const double xi = s.uniform(0, 2 * std::numbers::pi);
    Matrix eta = eta_theta_xi(theta, xi);
    Vector v = s.vector(2), w = s.vector(2), u = s.vector(2);
    Complex alpha = s.complex_normal(), beta = s.complex_normal();
    EXPECT_LT(std::abs(indefinite_form(eta, v, w) - std::conj(indefinite_form(eta, w, v))), 1e-12);
    // Linear on the right.
    Complex lin = indefinite_form(eta, v, Vector(alpha * w + beta * u));
    EXPECT_LT(std::abs(lin - alpha * indefinite_form(eta, v, w) - beta * indefinite_form(eta, v, u)),
              1e-12);
    // Conjugate-linear on the left.
    Complex anti = indefinite_form(eta, Vector(alpha * v + beta * u), w);
    EXPECT_LT(std::abs(anti - std::conj(alpha) * indefinite_form(eta, v, w) -
                       std::conj(beta) * indefinite_form(eta, u, w)),
              1e-12);
  }
}

TEST(FundamentalDecomposition, IdentityIsAllPositive) {
  FundamentalDecomposition fd = fundamental_decomposition(Matrix::Identity(2, 2));
  EXPECT_EQ(fd.dim_plus(), 2);
  EXPECT_EQ(fd.dim_minus(), 0);
  EXPECT_LT(max_abs(Matrix(fd.proj_plus - Matrix::Identity(2, 2))), 1e-15);
}

TEST(FundamentalDecomposition, SwapMetric) {
  FundamentalDecomposition fd = fundamental_decomposition(eta_zero());
  ASSERT_EQ(fd.dim_plus(), 1);
  ASSERT_EQ(fd.dim_minus(), 1);
  Vector plus(2), minus(2);
  plus << 1, 1;
  minus << 1, -1;
  plus /= std::sqrt(2.0);
  minus /= std::sqrt(2.0);
  EXPECT_NEAR(std::abs(plus.dot(fd.basis_plus[0])), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(minus.dot(fd.basis_minus[0])), 1.0, 1e-14);
}

// theta = 0 gives the real reflection [[cos xi, sin xi], [sin xi, -cos xi]];
// analytic eigenvectors are (cos xi/2, sin xi/2) for +1 and (-sin xi/2, cos xi/2)
// for -1.
TEST(FundamentalDecomposition, ReflectionMatchesAnalyticEigenvectors) {
  const double xi = std::numbers::pi / 3;
  FundamentalDecomposition fd = fundamental_decomposition(eta_theta_xi(0.0, xi));
  ASSERT_EQ(fd.dim_plus(), 1);
  ASSERT_EQ(fd.dim_minus(), 1);
  Vector plus(2), minus(2);
  plus << std::cos(xi / 2), std::sin(xi / 2);
  minus << -std::sin(xi / 2), std::cos(xi / 2);
  EXPECT_LT(max_abs(Matrix(fd.proj_plus - plus * plus.adjoint())), 1e-14);
  EXPECT_LT(max_abs(Matrix(fd.proj_minus - minus * minus.adjoint())), 1e-14);
}

TEST(FundamentalDecomposition, RejectsNonMetric) {
  try {
    fundamental_decomposition(diag({2, 1}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::kMetricInvalid);
  }
}

TEST(FundamentalDecomposition, PropertiesOverMetricFamilies) {
  Sampler s(11);
  std::vector<Matrix> metrics = {Matrix::Identity(3, 3), -Matrix::Identity(2, 2), eta_zero(),
                                 -minkowski_metric(), pairing_metric(2), icar_metric(2)};
  for (int i = 0; i < 20; ++i) {
    metrics.push_back(eta_theta_xi(s.uniform(0, 2 * std::numbers::pi),
                                   s.uniform(0, 2 * std::numbers::pi)));
  }
  for (const Matrix& eta : metrics) {
    FundamentalDecomposition fd = fundamental_decomposition(eta);
    const Eigen::Index n = eta.rows();
    const Matrix id = Matrix::Identity(n, n);
    EXPECT_EQ(fd.dim_plus() + fd.dim_minus(), n);
    EXPECT_LT(max_abs(Matrix(fd.proj_plus + fd.proj_minus - id)), 1e-12);
    EXPECT_LT(max_abs(Matrix(fd.proj_plus * fd.proj_minus)), 1e-12);
    EXPECT_LT(max_abs(Matrix(fd.proj_plus * fd.proj_plus - fd.proj_plus)), 1e-12);
    EXPECT_LT(max_abs(Matrix(fd.proj_plus - fd.proj_plus.adjoint())), 1e-12);
    EXPECT_LT(max_abs(Matrix(fd.proj_plus - fd.proj_minus - eta)), 1e-12);

    HermitianForm form = metric_form(eta);
    if (fd.dim_plus() > 0) {
      Eigen::SelfAdjointEigenSolver<Matrix> g(gram_matrix(form, fd.basis_plus));
      EXPECT_GT(g.eigenvalues().minCoeff(), 1e-10);
    }
    if (fd.dim_minus() > 0) {
      Eigen::SelfAdjointEigenSolver<Matrix> g(gram_matrix(form, fd.basis_minus));
      EXPECT_LT(g.eigenvalues().maxCoeff(), -1e-10);
    }
  }
}

TEST(GramMatrix, Examples) {
  std::vector<Vector> standard = {e(2, 0), e(2, 1)};
  EXPECT_EQ(gram_matrix(standard_form(), standard), Matrix(Matrix::Identity(2, 2)));
  EXPECT_EQ(gram_matrix(metric_form(diag({1, -1})), standard), diag({1, -1}));

  Vector plus(2), minus(2);
  plus << 1, 1;
  minus << 1, -1;
  std::vector<Vector> rotated = {plus / std::sqrt(2.0), minus / std::sqrt(2.0)};
  EXPECT_LT(max_abs(Matrix(gram_matrix(metric_form(eta_zero()), rotated) - diag({1, -1}))),
            1e-15);
}

TEST(GramMatrix, RaggedInputThrows) {
  try {
    gram_matrix(standard_form(), {e(2, 0), e(3, 0)});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::kDimensionMismatch);
  }
}

}  // namespace
}  // namespace kreinfock
