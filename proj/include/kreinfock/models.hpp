#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kreinfock/field_ops.hpp"
#include "kreinfock/fock_space.hpp"
#include "kreinfock/krein.hpp"

namespace kreinfock {

enum class ModelStatistics { kBose, kFermi, kMatrix };

std::string to_string(ModelStatistics s);

/// Relation the model is expected to satisfy:
/// a(f) a^dag(g) -+ a^dag(g) a(f) = coefficient * I.
struct ExpectedRelation {
  std::string label;
  Vector f;
  Vector g;
  Complex coefficient;
  RelationKind kind = RelationKind::kCommutator;
};

using ModelParams = std::map<std::string, double>;

struct ModelSpec {
  std::string name;
  ModelStatistics statistics = ModelStatistics::kBose;
  int modes = 0;
  std::string eta_builder;
  ModelParams params;
  Matrix eta;
  int cutoff = 0;
  std::vector<ExpectedRelation> expected_relations;
  std::string anchor;

  Statistics fock_statistics() const;
};

struct ParamSchema {
  std::string name;
  double default_value;
  std::string description;
};

struct CatalogEntry {
  std::string name;
  ModelStatistics statistics;
  std::vector<ParamSchema> params;
  std::string anchor;
};

/// Registered models in a fixed order.
const std::vector<CatalogEntry>& model_catalog();
const CatalogEntry* find_model(const std::string& name);

/// Builds one of the registered models. Unknown names raise kUnknownModel;
/// unknown parameter keys or inadmissible values raise kBadParams. When cutoff
/// is empty the model's default applies.
ModelSpec build_model(const std::string& name, const ModelParams& params = {},
                      std::optional<int> cutoff = std::nullopt);

// Metric builders.
Matrix minkowski_metric();                    // g = diag(1,-1,-1,-1)
Matrix eta_theta_xi(double theta, double xi);
Matrix eta_zero();                            // [[0,1],[1,0]]
Matrix pairing_metric(int pairs);             // I_m (x) eta0, modes (n,+),(n,-)
Matrix icar_metric(int pairs);                // diag((-1)^k), k = 1..2m

/// Bose model with d = 2m, eta = I_m (x) eta0, fields interleaved (p,1),(p,2).
ModelSpec two_field_model(int m, int cutoff);

struct FeynmanDecompositionReport {
  std::vector<Label> plus_labels;   // even occupation of mode 0
  std::vector<Label> minus_labels;  // odd occupation of mode 0
  std::vector<Label> gamma_plus;    // labels in the +1 eigenspace of Gamma(-g)
  std::vector<Label> gamma_minus;
  Eigen::Index eigen_plus = 0;      // multiplicity of +1 in a dense eigensolve
  Eigen::Index eigen_minus = 0;
  bool partitions_match = false;
  double min_plus_eigenvalue = 0.0;   // of the Gram matrix of (.|.) on the plus part
  double min_minus_eigenvalue = 0.0;  // of the Gram matrix of -(.|.) on the minus part
  Eigen::Index basis_size = 0;
  bool passed = false;
};

/// Fundamental decomposition of the eta = -g Bose-Fock space over C^4 by parity
/// of the e_0 occupation.
FeynmanDecompositionReport feynman_decomposition_check(int cutoff, double tol);

struct BrsRep {
  double a = 0.0;
  Matrix q_b;
  Matrix q_c;
  Matrix u;

  /// (v|w) = <v|U w>.
  Complex form(const Vector& v, const Vector& w) const { return indefinite_form(u, v, w); }
  /// x^dag = U x* U*.
  Matrix dagger(const Matrix& x) const { return u * x.adjoint() * u.adjoint(); }
};

BrsRep brs_build(double a);

struct BrsReport {
  double qb_selfadjoint = 0.0;        // |Q_B^dag - Q_B|
  double qc_selfadjoint = 0.0;        // |Q_C^dag - Q_C|
  double qb_nilpotent = 0.0;          // |Q_B^2|
  Complex measured_constant;          // c with Q_C Q_B - Q_B Q_C = c Q_B
  double constant_fit = 0.0;          // |Q_C Q_B - Q_B Q_C - c Q_B|
  double pairing = 0.0;               // max |(x^dag v|w) - (v|x w)|
  double null_norm = 0.0;             // max |(Q_B v|Q_B v)|
  Complex det_u;
  bool nondegenerate = false;
  double decomposition = 0.0;         // projections vs C(e1 +- e2)
  bool kernel_vector_cyclic = false;  // Q_B v = 0 with v cyclic for {Q_B, Q_C}
  double tol = 0.0;
  bool passed = false;                // excludes the informative constant
};

BrsReport brs_check(const BrsRep& rep, double tol, Sampler& sampler, int samples = 50);

struct EtaFamilyReport {
  MetricVerdict metric;
  Complex determinant;
  RelationReport ccr;
  RelationReport car;
  bool passed = false;
};

/// Validates eta(theta, xi) and runs eta-CCR (bose, cutoff N) and eta-CAR (fermi,
/// full space) on d = 2.
EtaFamilyReport eta_family_check(double theta, double xi, int cutoff, double tol,
                                 Sampler& sampler, double car_tol = 1e-12);

}  // namespace kreinfock
