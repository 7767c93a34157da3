#include "kreinfock/models.hpp"

#include <cmath>
#include <numbers>

namespace kreinfock {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vector unit(int d, int k) {
  Vector e = Vector::Zero(d);
  e(k) = 1.0;
  return e;
}

double param(const ModelParams& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

int integer_param(const ModelParams& params, const std::string& key, int fallback, int min) {
  double v = param(params, key, fallback);
  if (!std::isfinite(v) || v != std::floor(v) || v < min || v > 64) {
    throw Error(ErrorKind::kBadParams,
                key + " must be an integer in [" + std::to_string(min) + ", 64]");
  }
  return static_cast<int>(v);
}

double angle_param(const ModelParams& params, const std::string& key, double fallback) {
  double v = param(params, key, fallback);
  if (!std::isfinite(v) || v < 0.0 || v >= kTwoPi) {
    throw Error(ErrorKind::kBadParams, key + " must lie in [0, 2pi)");
  }
  return v;
}

void reject_unknown(const std::string& model, const ModelParams& params,
                    const std::vector<ParamSchema>& schema) {
  for (const auto& [key, value] : params) {
    bool known = false;
    for (const ParamSchema& p : schema) known = known || p.name == key;
    if (!known) throw Error(ErrorKind::kBadParams, model + " has no parameter '" + key + "'");
  }
}

// All (e_i, e_j) pairs with the coefficient the model's defining relations
// prescribe. `coefficient` encodes the displayed relation, independent of eta.
template <typename Coefficient, typename Name>
std::vector<ExpectedRelation> basis_relations(int d, RelationKind kind, Coefficient coefficient,
                                              Name name) {
  std::vector<ExpectedRelation> out;
  const char* bracket = kind == RelationKind::kCommutator ? "[" : "{";
  const char* close = kind == RelationKind::kCommutator ? "]" : "}";
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out.push_back({std::string(bracket) + name(i) + ", " + name(j) + "^dag" + close,
                     unit(d, i), unit(d, j), coefficient(i, j), kind});
  return out;
}

std::string indexed(const std::string& stem, int i) { return stem + std::to_string(i); }

const std::vector<CatalogEntry> kCatalog = {
    {"abnormal_bose", ModelStatistics::kBose,
     {{"d", 1, "number of modes"}},
     "abnormal commutation relations, eta = -I"},
    {"abnormal_fermi", ModelStatistics::kFermi,
     {{"d", 1, "number of modes"}},
     "abnormal anti-commutation relations, eta = -I"},
    {"froissart", ModelStatistics::kBose,
     {{"m", 2, "number of (alpha, beta) pairs"}},
     "Froissart model, eta e(n,+-) = e(n,-+)"},
    {"icar", ModelStatistics::kFermi,
     {{"m", 2, "number of (e(n,+), e(n,-)) pairs"}},
     "ICAR, eta e(n,+-) = +-e(n,+-)"},
    {"eta_theta_xi", ModelStatistics::kBose,
     {{"theta", 0.0, "phase in [0, 2pi)"}, {"xi", std::numbers::pi / 3, "angle in [0, 2pi)"}},
     "rank-2 metric family eta(theta, xi)"},
    {"feynman", ModelStatistics::kBose, {}, "Feynman gauge photon modes, eta = -g"},
    {"brs", ModelStatistics::kMatrix,
     {{"a", 0.0, "real shift of the ghost-number diagonal"}},
     "BRS algebra on C^2 with x^dag = U x* U*"},
    {"two_field", ModelStatistics::kBose,
     {{"m", 2, "number of discretized momenta p"}},
     "two-field distribution model, eta = I (x) eta0"},
};

}  // namespace

std::string to_string(ModelStatistics s) {
  switch (s) {
    case ModelStatistics::kBose: return "bose";
    case ModelStatistics::kFermi: return "fermi";
    case ModelStatistics::kMatrix: return "matrix";
  }
  return "unknown";
}

Statistics ModelSpec::fock_statistics() const {
  switch (statistics) {
    case ModelStatistics::kBose: return Statistics::kBose;
    case ModelStatistics::kFermi: return Statistics::kFermi;
    case ModelStatistics::kMatrix: break;
  }
  throw Error(ErrorKind::kBasisMismatch, name + " has no Fock representation");
}

const std::vector<CatalogEntry>& model_catalog() { return kCatalog; }

const CatalogEntry* find_model(const std::string& name) {
  for (const CatalogEntry& e : kCatalog)
    if (e.name == name) return &e;
  return nullptr;
}

Matrix minkowski_metric() {
  Matrix g = Matrix::Zero(4, 4);
  g.diagonal() << 1.0, -1.0, -1.0, -1.0;
  return g;
}

Matrix eta_theta_xi(double theta, double xi) {
  const Complex phase = std::polar(1.0, theta);
  Matrix eta(2, 2);
  eta << std::cos(xi), phase * std::sin(xi), std::conj(phase) * std::sin(xi), -std::cos(xi);
  return eta;
}

Matrix eta_zero() {
  Matrix eta(2, 2);
  eta << 0.0, 1.0, 1.0, 0.0;
  return eta;
}

Matrix pairing_metric(int pairs) {
  Matrix eta = Matrix::Zero(2 * pairs, 2 * pairs);
  for (int n = 0; n < pairs; ++n) eta.block(2 * n, 2 * n, 2, 2) = eta_zero();
  return eta;
}

Matrix icar_metric(int pairs) {
  Matrix eta = Matrix::Zero(2 * pairs, 2 * pairs);
  // Mode j carries a_{j+1}: odd k = 2n-1 is e(n,-), even k = 2n is e(n,+).
  for (int j = 0; j < 2 * pairs; ++j) eta(j, j) = (j + 1) % 2 == 0 ? 1.0 : -1.0;
  return eta;
}

ModelSpec two_field_model(int m, int cutoff) {
  if (m < 1) throw Error(ErrorKind::kBadParams, "two_field needs m >= 1");
  if (cutoff < 0) throw Error(ErrorKind::kBadParams, "negative cutoff");
  ModelSpec spec;
  spec.name = "two_field";
  spec.statistics = ModelStatistics::kBose;
  spec.modes = 2 * m;
  spec.eta_builder = "I_m (x) eta0 (m=" + std::to_string(m) + ")";
  spec.params = {{"m", m}};
  spec.eta = pairing_metric(m);
  spec.cutoff = cutoff;
  spec.anchor = find_model("two_field")->anchor;
  auto field_name = [](int j) {
    return std::string(j % 2 == 0 ? "a(p" : "b(p") + std::to_string(j / 2 + 1) + ")";
  };
  spec.expected_relations = basis_relations(
      2 * m, RelationKind::kCommutator,
      [](int i, int j) { return Complex(i / 2 == j / 2 && i % 2 != j % 2 ? 1.0 : 0.0); },
      field_name);
  return spec;
}

ModelSpec build_model(const std::string& name, const ModelParams& params,
                      std::optional<int> cutoff) {
  const CatalogEntry* entry = find_model(name);
  if (!entry) throw Error(ErrorKind::kUnknownModel, "no model named '" + name + "'");
  reject_unknown(name, params, entry->params);
  if (cutoff && *cutoff < 0) throw Error(ErrorKind::kBadParams, "negative cutoff");

  ModelSpec spec;
  spec.name = name;
  spec.statistics = entry->statistics;
  spec.anchor = entry->anchor;

  if (name == "abnormal_bose" || name == "abnormal_fermi") {
    const int d = integer_param(params, "d", 1, 1);
    const bool bose = name == "abnormal_bose";
    spec.modes = d;
    spec.eta = -Matrix::Identity(d, d);
    spec.eta_builder = "-I (d=" + std::to_string(d) + ")";
    spec.params = {{"d", d}};
    spec.cutoff = cutoff.value_or(bose ? 3 : d);
    spec.expected_relations = basis_relations(
        d, bose ? RelationKind::kCommutator : RelationKind::kAnticommutator,
        [](int i, int j) { return Complex(i == j ? -1.0 : 0.0); },
        [](int i) { return indexed("a", i + 1); });
  } else if (name == "froissart") {
    const int m = integer_param(params, "m", 2, 1);
    spec.modes = 2 * m;
    spec.eta = pairing_metric(m);
    spec.eta_builder = "pairing e(n,+-) -> e(n,-+) (m=" + std::to_string(m) + ")";
    spec.params = {{"m", m}};
    spec.cutoff = cutoff.value_or(4);
    spec.expected_relations = basis_relations(
        2 * m, RelationKind::kCommutator,
        [](int i, int j) { return Complex(i / 2 == j / 2 && i % 2 != j % 2 ? 1.0 : 0.0); },
        [](int j) { return indexed(j % 2 == 0 ? "alpha" : "beta", j / 2 + 1); });
  } else if (name == "icar") {
    const int m = integer_param(params, "m", 2, 1);
    spec.modes = 2 * m;
    spec.eta = icar_metric(m);
    spec.eta_builder = "sign e(n,+-) -> +-e(n,+-) (m=" + std::to_string(m) + ")";
    spec.params = {{"m", m}};
    spec.cutoff = cutoff.value_or(2 * m);
    spec.expected_relations = basis_relations(
        2 * m, RelationKind::kAnticommutator,
        [](int i, int j) { return Complex(i != j ? 0.0 : ((i + 1) % 2 == 0 ? 1.0 : -1.0)); },
        [](int j) { return indexed("a", j + 1); });
  } else if (name == "eta_theta_xi") {
    const double theta = angle_param(params, "theta", entry->params[0].default_value);
    const double xi = angle_param(params, "xi", entry->params[1].default_value);
    spec.modes = 2;
    spec.eta = eta_theta_xi(theta, xi);
    spec.eta_builder = "eta(theta, xi)";
    spec.params = {{"theta", theta}, {"xi", xi}};
    spec.cutoff = cutoff.value_or(4);
    const Complex phase = std::polar(1.0, theta);
    const Complex displayed[2][2] = {{std::cos(xi), phase * std::sin(xi)},
                                     {std::conj(phase) * std::sin(xi), -std::cos(xi)}};
    spec.expected_relations = basis_relations(
        2, RelationKind::kCommutator, [&](int i, int j) { return displayed[i][j]; },
        [](int i) { return indexed("a", i + 1); });
  } else if (name == "feynman") {
    spec.modes = 4;
    spec.eta = -minkowski_metric();
    spec.eta_builder = "-g, g = diag(1,-1,-1,-1)";
    spec.cutoff = cutoff.value_or(4);
    const double g[4] = {1.0, -1.0, -1.0, -1.0};
    spec.expected_relations = basis_relations(
        4, RelationKind::kCommutator, [&](int i, int j) { return Complex(i == j ? -g[i] : 0.0); },
        [](int mu) { return indexed("a_", mu); });
  } else if (name == "brs") {
    const double a = param(params, "a", 0.0);
    if (!std::isfinite(a)) throw Error(ErrorKind::kBadParams, "a must be finite");
    spec.modes = 2;
    spec.eta = eta_zero();
    spec.eta_builder = "U = [[0,1],[1,0]]";
    spec.params = {{"a", a}};
    spec.cutoff = 0;
  } else if (name == "two_field") {
    const int m = integer_param(params, "m", 2, 1);
    return two_field_model(m, cutoff.value_or(4));
  }
  return spec;
}

FeynmanDecompositionReport feynman_decomposition_check(int cutoff, double tol) {
  ModelSpec spec = build_model("feynman", {}, cutoff);
  FockRepresentation rep(KreinTriplet(spec.eta), Statistics::kBose, cutoff);
  const SectorBasis& basis = *rep.basis();
  const Matrix& gamma = rep.gamma_eta().matrix();

  FeynmanDecompositionReport report;
  report.basis_size = basis.size();
  std::vector<Eigen::Index> plus_idx;
  std::vector<Eigen::Index> minus_idx;
  for (Eigen::Index i = 0; i < basis.size(); ++i) {
    const Label& occupation = basis.label(i);
    if (occupation[0] % 2 == 0) {
      report.plus_labels.push_back(occupation);
      plus_idx.push_back(i);
    } else {
      report.minus_labels.push_back(occupation);
      minus_idx.push_back(i);
    }
    Vector e = Vector::Zero(basis.size());
    e(i) = 1.0;
    Vector image = gamma * e;
    if ((image - e).cwiseAbs().maxCoeff() <= tol) {
      report.gamma_plus.push_back(occupation);
    } else if ((image + e).cwiseAbs().maxCoeff() <= tol) {
      report.gamma_minus.push_back(occupation);
    }
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eigen(0.5 * (gamma + gamma.adjoint()));
  for (Eigen::Index k = 0; k < eigen.eigenvalues().size(); ++k) {
    const double lambda = eigen.eigenvalues()(k);
    if (std::abs(lambda - 1.0) <= tol) ++report.eigen_plus;
    if (std::abs(lambda + 1.0) <= tol) ++report.eigen_minus;
  }
  report.partitions_match =
      report.plus_labels == report.gamma_plus && report.minus_labels == report.gamma_minus &&
      report.eigen_plus == static_cast<Eigen::Index>(report.plus_labels.size()) &&
      report.eigen_minus == static_cast<Eigen::Index>(report.minus_labels.size());

  // The occupation basis is <.|.>-orthonormal, so the Gram matrix of (.|.) on a
  // label subset is the corresponding principal submatrix of Gamma(eta).
  auto min_eigenvalue = [&](const std::vector<Eigen::Index>& idx, double sign) {
    if (idx.empty()) return 1.0;
    const auto n = static_cast<Eigen::Index>(idx.size());
    Matrix g(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) g(r, c) = sign * gamma(idx[r], idx[c]);
    Eigen::SelfAdjointEigenSolver<Matrix> s(g);
    return s.eigenvalues().minCoeff();
  };
  report.min_plus_eigenvalue = min_eigenvalue(plus_idx, 1.0);
  report.min_minus_eigenvalue = min_eigenvalue(minus_idx, -1.0);
  report.passed = report.partitions_match && report.min_plus_eigenvalue >= 1.0 - tol &&
                  report.min_minus_eigenvalue >= 1.0 - tol;
  return report;
}

BrsRep brs_build(double a) {
  BrsRep rep;
  rep.a = a;
  rep.q_b = Matrix::Zero(2, 2);
  rep.q_b(0, 1) = 1.0;
  rep.q_c = Matrix::Zero(2, 2);
  rep.q_c(0, 0) = Complex(a, 0.5);
  rep.q_c(1, 1) = Complex(a, -0.5);
  rep.u = eta_zero();
  return rep;
}

BrsReport brs_check(const BrsRep& rep, double tol, Sampler& sampler, int samples) {
  BrsReport report;
  report.tol = tol;
  report.qb_selfadjoint = max_abs(Matrix(rep.dagger(rep.q_b) - rep.q_b));
  report.qc_selfadjoint = max_abs(Matrix(rep.dagger(rep.q_c) - rep.q_c));
  report.qb_nilpotent = max_abs(Matrix(rep.q_b * rep.q_b));

  const Matrix bracket = rep.q_c * rep.q_b - rep.q_b * rep.q_c;
  report.measured_constant = bracket(0, 1) / rep.q_b(0, 1);
  report.constant_fit = max_abs(Matrix(bracket - report.measured_constant * rep.q_b));

  for (int s = 0; s < samples; ++s) {
    Matrix x = sampler.matrix(2, 2);
    Vector v = sampler.vector(2);
    Vector w = sampler.vector(2);
    report.pairing =
        std::max(report.pairing, std::abs(rep.form(rep.dagger(x) * v, w) - rep.form(v, x * w)));
    Vector qv = rep.q_b * v;
    report.null_norm = std::max(report.null_norm, std::abs(rep.form(qv, qv)));
  }

  report.det_u = rep.u.determinant();
  report.nondegenerate = std::abs(std::abs(report.det_u) - 1.0) <= tol;

  FundamentalDecomposition fd = fundamental_decomposition(rep.u, tol);
  Vector plus(2), minus(2);
  plus << 1.0, 1.0;
  minus << 1.0, -1.0;
  Matrix expected_plus = plus * plus.adjoint() / 2.0;
  Matrix expected_minus = minus * minus.adjoint() / 2.0;
  report.decomposition = std::max(max_abs(Matrix(fd.proj_plus - expected_plus)),
                                  max_abs(Matrix(fd.proj_minus - expected_minus)));

  // Vectors killed by Q_B: is any of them cyclic for the algebra of {Q_B, Q_C}?
  Eigen::JacobiSVD<Matrix> svd(rep.q_b, Eigen::ComputeFullV);
  for (Eigen::Index k = 0; k < 2; ++k) {
    if (svd.singularValues()(k) > tol) continue;
    Vector v = svd.matrixV().col(k);
    Matrix krylov(2, 5);
    krylov << v, rep.q_b * v, rep.q_c * v, rep.q_b * rep.q_c * v, rep.q_c * rep.q_c * v;
    Eigen::JacobiSVD<Matrix> span(krylov);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < span.singularValues().size(); ++i)
      if (span.singularValues()(i) > 1e-10) ++rank;
    report.kernel_vector_cyclic = report.kernel_vector_cyclic || rank == 2;
  }

  report.passed = report.qb_selfadjoint <= tol && report.qc_selfadjoint <= tol &&
                  report.qb_nilpotent <= tol && report.constant_fit <= tol &&
                  report.pairing <= tol && report.null_norm <= tol && report.nondegenerate &&
                  report.decomposition <= tol;
  return report;
}

EtaFamilyReport eta_family_check(double theta, double xi, int cutoff, double tol,
                                 Sampler& sampler, double car_tol) {
  EtaFamilyReport report;
  const Matrix eta = eta_theta_xi(theta, xi);
  report.metric = validate_metric(eta, kDefaultMetricTol);
  if (!report.metric.valid) {
    throw Error(ErrorKind::kMetricInvalid, "eta(theta, xi) failed validation");
  }
  report.determinant = eta.determinant();
  std::vector<Probe> probes = default_probes(2, sampler);
  FockRepresentation bose(KreinTriplet(eta), Statistics::kBose, cutoff);
  FockRepresentation fermi(KreinTriplet(eta), Statistics::kFermi, 2);
  report.ccr = check_eta_ccr(bose, probes, tol);
  report.car = check_eta_car(fermi, probes, car_tol);
  report.passed = report.ccr.passed && report.car.passed;
  return report;
}

}  // namespace kreinfock
