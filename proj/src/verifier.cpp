#include "kreinfock/verifier.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace kreinfock {
namespace {

constexpr double kTolCcr = 1e-10;
constexpr double kTolExact = 1e-12;
constexpr double kTolSwap = 1e-10;
constexpr double kTolBrs = 1e-14;
constexpr int kPairingSamples = 50;
constexpr int kOperatorPairs = 50;

const std::vector<std::pair<std::string, std::string>> kAnchors = {
    {"model-relations", "displayed (anti)commutation relations of the model"},
    {"expected-self-consistency", "expected coefficient equals <f|eta g>"},
    {"eta-ccr", "eta-CCR: a(f)a^dag(g) - a^dag(g)a(f) = <f|eta g> I, [a,a] = [a^dag,a^dag] = 0"},
    {"eta-car", "eta-CAR: a(f)a^dag(g) + a^dag(g)a(f) = <f|eta g> I, {a,a} = {a^dag,a^dag} = 0"},
    {"top-sector-defect", "truncation defect of the relations outside sectors 0..N-2"},
    {"icar-alternation", "ICAR: a_n a_m^dag + a_m^dag a_n = (-1)^n delta_nm I"},
    {"eta-family", "eta(theta, xi) is a selfadjoint unitary with det = -1"},
    {"adjoint-pairing", "(a^dag(f) v|w) = (v|a(f) w) with (x|y) = <x|Gamma(eta) y>"},
    {"vacuum", "a(f) Omega = 0"},
    {"vacuum-creation", "a^dag(f) Omega = eta f"},
    {"cyclicity", "the algebra generated by a(f), a^dag(f) applied to Omega spans the Fock space"},
    {"metric", "eta is a selfadjoint unitary on H"},
    {"fundamental-decomposition", "H = H+ (+) H-, H+- = {v : eta v = +-v}, +-(.|.) definite on H+-"},
    {"gamma-selfadjoint-unitary", "Gamma(eta) is a selfadjoint unitary"},
    {"projection-commutation", "P+- Gamma(eta) = Gamma(eta) P+-"},
    {"fock-krein-decomposition", "+-(.|.) is definite on the +-1 eigenspaces of Gamma(eta)"},
    {"feynman-decomposition", "F+(C^4)+- by parity of the e0 occupation, +-(.|.) positive-definite"},
    {"dagger-creator", "a^dag(f) = Gamma(eta) a*(f) Gamma(eta)* = a*(eta f)"},
    {"dagger-involution", "x^dag = Gamma(eta) x* Gamma(eta)* is involutive"},
    {"dagger-antimultiplicative", "(xy)^dag = y^dag x^dag"},
    {"dagger-plain", "eta = I gives the ordinary adjoint"},
    {"involution-swap", "Gamma(eta) A_eta Gamma(eta)* satisfies ordinary CCR/CAR"},
    {"brs-relations", "Q_B^dag = Q_B, Q_B^2 = 0, Q_C^dag = Q_C, Q_C Q_B - Q_B Q_C = -i Q_B"},
    {"brs-pairing", "(x^dag v|w) = (v|x w) with x^dag = U x* U*, (v|w) = <v|U w>"},
    {"brs-null", "(Q_B v|Q_B v) = (v|Q_B^2 v) = 0"},
    {"brs-decomposition", "H+ = C(e1 + e2), H- = C(e1 - e2)"},
    {"brs-degenerate-vacuum", "Q_B Omega = 0 forces a degenerate cyclic representation"},
};

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
  return out;
}

Json label_json(const Label& l) {
  Json out = Json::array();
  for (int x : l) out.push_back(x);
  return out;
}

class RecordSink {
 public:
  RecordSink(std::vector<CheckRecord>& out, const std::set<CheckGroup>& selected,
             std::optional<double> override_tol)
      : out_(out), selected_(selected), override_(override_tol) {}

  bool wants(CheckGroup g) const { return selected_.empty() || selected_.count(g) > 0; }

  void add(const std::string& name, CheckGroup group, const std::string& anchor_key,
           double residual, double default_tol, std::string domain, Json details = Json::object(),
           bool informative = false) {
    CheckRecord r;
    r.name = name;
    r.group = group;
    r.anchor = anchor_for(anchor_key);
    r.residual = residual;
    r.tolerance = override_ ? *override_ : default_tol;
    r.verdict = informative ? Verdict::kInfo
                            : (residual <= r.tolerance ? Verdict::kPass : Verdict::kFail);
    r.domain = std::move(domain);
    r.details = std::move(details);
    out_.push_back(std::move(r));
  }

  double tol(double default_tol) const { return override_ ? *override_ : default_tol; }

 private:
  std::vector<CheckRecord>& out_;
  const std::set<CheckGroup>& selected_;
  std::optional<double> override_;
};

Vector unit(int d, int k) {
  Vector e = Vector::Zero(d);
  e(k) = 1.0;
  return e;
}

// Basis vectors followed by two seeded random smearing vectors.
std::vector<Vector> smearing_vectors(int d, Sampler& sampler) {
  std::vector<Vector> out;
  for (int k = 0; k < d; ++k) out.push_back(unit(d, k));
  out.push_back(sampler.vector(d));
  out.push_back(sampler.vector(d));
  return out;
}

double definiteness_defect(const Matrix& gram, double sign) {
  if (gram.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> s(sign * 0.5 * (gram + gram.adjoint()));
  return std::max(0.0, 1.0 - s.eigenvalues().minCoeff());
}

std::string domain_note(const FockRepresentation& rep, bool pairing) {
  if (!rep.basis()->is_truncated()) return "whole space";
  const int top = rep.basis()->top_sector();
  return pairing ? "sectors 0..N-1 (N=" + std::to_string(top) + ")"
                 : "sectors 0..N-2 (N=" + std::to_string(top) + ")";
}

void relation_records(RecordSink& sink, const ModelSpec& model, const FockRepresentation& rep,
                      Sampler& sampler) {
  const CheckGroup g = CheckGroup::kRelations;
  const Eigen::Index domain_end = rep.relation_domain_end();
  const Eigen::Index size = rep.basis()->size();
  const Matrix identity = Matrix::Identity(size, size);
  const bool bose = rep.statistics() == Statistics::kBose;

  Json per_relation = Json::array();
  double worst = 0.0;
  double consistency = 0.0;
  for (const ExpectedRelation& rel : model.expected_relations) {
    GradedOperator a = rep.annihilator(rel.f);
    GradedOperator c = rep.creator_dagger(rel.g);
    GradedOperator bracket =
        rel.kind == RelationKind::kCommutator ? commutator(a, c) : anticommutator(a, c);
    Matrix defect = bracket.matrix() - rel.coefficient * identity;
    double residual = restricted_norm(defect, 0, domain_end);
    worst = std::max(worst, residual);
    consistency =
        std::max(consistency, std::abs(rel.coefficient - indefinite_form(model.eta, rel.f, rel.g)));
    per_relation.push_back(Json{{"relation", rel.label},
                                {"expected", complex_json(rel.coefficient)},
                                {"residual", residual}});
  }
  const double relation_tol = bose ? kTolCcr : kTolExact;
  sink.add("model_relations", g, "model-relations", worst, relation_tol,
           domain_note(rep, false), Json{{"relations", per_relation}});
  sink.add("expected_self_consistency", g, "expected-self-consistency", consistency, kTolExact,
           "probe pairs");

  std::vector<Probe> probes = default_probes(rep.modes(), sampler);
  RelationReport report = bose ? check_eta_ccr(rep, probes, sink.tol(kTolCcr))
                               : check_eta_car(rep, probes, sink.tol(kTolExact));
  sink.add(bose ? "eta_ccr" : "eta_car", g, bose ? "eta-ccr" : "eta-car",
           std::max(report.max_residual, report.zero_relation_residual), relation_tol,
           report.domain,
           Json{{"probes", report.probes.size()},
                {"max_relation_residual", report.max_residual},
                {"zero_relation_residual", report.zero_relation_residual}});
  if (rep.basis()->is_truncated()) {
    std::size_t nonzero = 0;
    for (const ProbeResidual& p : report.probes)
      if (p.top_defect > 0.0) ++nonzero;
    sink.add("top_sector_defect", g, "top-sector-defect", report.max_top_defect, 0.0,
             "sectors above N-2",
             Json{{"probes_with_nonzero_defect", nonzero},
                  {"note", "expected nonzero: creators annihilate the top sector"}},
             true);
  }

  if (model.name == "icar") {
    Json measured = Json::array();
    double alternation = 0.0;
    bool signs_exact = true;
    for (int k = 1; k <= rep.modes(); ++k) {
      Vector e = unit(rep.modes(), k - 1);
      Matrix bracket = anticommutator(rep.annihilator(e), rep.creator_dagger(e)).matrix();
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      const Complex value = bracket(0, 0);
      signs_exact = signs_exact && std::round(value.real()) == sign;
      alternation = std::max(
          alternation,
          max_abs(Matrix(bracket - sign * Matrix::Identity(bracket.rows(), bracket.cols()))));
      measured.push_back(Json{{"n", k}, {"coefficient", complex_json(value)}});
    }
    sink.add("icar_alternation", g, "icar-alternation", signs_exact ? alternation : 2.0,
             sink.tol(kTolExact), "full space",
             Json{{"measured", measured}, {"signs_exact", signs_exact}});
  }

  if (model.name == "eta_theta_xi") {
    EtaFamilyReport family =
        eta_family_check(model.params.at("theta"), model.params.at("xi"), rep.basis()->cutoff(),
                         sink.tol(kTolCcr), sampler, sink.tol(kTolExact));
    sink.add("eta_family_metric", g, "eta-family",
             std::max({family.metric.selfadjoint_residual, family.metric.involution_residual,
                       std::abs(family.determinant + 1.0)}),
             kTolExact, "C^2", Json{{"determinant", complex_json(family.determinant)}});
    sink.add("eta_family_car", g, "eta-car",
             std::max(family.car.max_residual, family.car.zero_relation_residual), kTolExact,
             family.car.domain, Json{{"statistics", "fermi"}, {"probes", family.car.probes.size()}});
  }
}

void adjoint_records(RecordSink& sink, const FockRepresentation& rep, Sampler& sampler) {
  double worst = 0.0;
  int vectors = 0;
  for (const Vector& f : smearing_vectors(rep.modes(), sampler)) {
    PairingReport p = check_adjoint_pairing(rep.field(f), rep.gamma_eta(),
                                            rep.pairing_domain_end(), kPairingSamples, sampler,
                                            sink.tol(kTolExact));
    worst = std::max(worst, p.residual);
    ++vectors;
  }
  sink.add("adjoint_pairing", CheckGroup::kAdjoint, "adjoint-pairing", worst, kTolExact,
           domain_note(rep, true),
           Json{{"smearing_vectors", vectors}, {"samples_per_vector", kPairingSamples}});
}

void vacuum_records(RecordSink& sink, const FockRepresentation& rep, Sampler& sampler) {
  double column = 0.0;
  double creation = 0.0;
  bool all_vanish = true;
  const Matrix& eta = rep.triplet().eta();
  for (const Vector& f : smearing_vectors(rep.modes(), sampler)) {
    FieldOperatorPair pair = rep.field(f);
    all_vanish = all_vanish && check_vacuum(pair);
    column = std::max(column, max_abs(Vector(pair.annihilator.matrix().col(0))));
    if (rep.basis()->top_sector() >= 1) {
      Vector image = pair.creator_dagger.apply(rep.vacuum());
      Vector one_particle = image.segment(rep.basis()->sector_begin(1), rep.modes());
      Vector rest = image;
      rest.segment(rep.basis()->sector_begin(1), rep.modes()).setZero();
      creation = std::max({creation, max_abs(Vector(one_particle - eta * f)), max_abs(rest)});
    }
  }
  sink.add("vacuum_annihilation", CheckGroup::kVacuum, "vacuum", column, 0.0, "vacuum column",
           Json{{"all_vanish", all_vanish}});
  if (rep.basis()->top_sector() >= 1) {
    sink.add("vacuum_creation", CheckGroup::kVacuum, "vacuum-creation", creation, kTolExact,
             "one-particle sector");
  }
}

void cyclicity_records(RecordSink& sink, const FockRepresentation& rep) {
  CyclicityReport c = check_cyclicity(rep);
  sink.add("cyclicity", CheckGroup::kCyclicity, "cyclicity",
           static_cast<double>(c.basis_size - c.rank), 0.0, "singular values above 1e-8",
           Json{{"rank", c.rank}, {"basis_size", c.basis_size}, {"monomials", c.monomials}});
}

void decomposition_records(RecordSink& sink, const ModelSpec& model,
                           const FockRepresentation& rep, double metric_tol) {
  const CheckGroup g = CheckGroup::kDecomposition;
  const Matrix& eta = model.eta;
  const MetricVerdict& verdict = rep.triplet().verdict();
  sink.add("metric_valid", g, "metric",
           std::max(verdict.selfadjoint_residual, verdict.involution_residual), metric_tol,
           "one-particle space");

  FundamentalDecomposition fd = fundamental_decomposition(eta, metric_tol);
  const double reconstruction = max_abs(Matrix(fd.proj_plus - fd.proj_minus - eta));
  const HermitianForm form = metric_form(eta);
  const double definiteness =
      std::max(definiteness_defect(gram_matrix(form, fd.basis_plus), 1.0),
               definiteness_defect(gram_matrix(form, fd.basis_minus), -1.0));
  sink.add("fundamental_decomposition", g, "fundamental-decomposition",
           std::max(reconstruction, definiteness), kTolExact, "one-particle space",
           Json{{"dim_plus", fd.dim_plus()}, {"dim_minus", fd.dim_minus()},
                {"reconstruction", reconstruction}, {"definiteness_defect", definiteness}});

  const Matrix& gamma = rep.gamma_eta().matrix();
  const Eigen::Index n = gamma.rows();
  const double gamma_defect =
      std::max(max_abs(Matrix(gamma - gamma.adjoint())),
               max_abs(Matrix(gamma * gamma - Matrix::Identity(n, n))));
  sink.add("gamma_selfadjoint_unitary", g, "gamma-selfadjoint-unitary", gamma_defect, kTolExact,
           rep.basis()->describe());

  const BasisPtr& full = rep.full_basis();
  GradedOperator gamma_full = second_quantization(eta, full, metric_tol);
  GradedOperator projection = fock_projection(full, rep.statistics());
  sink.add("projection_commutation", g, "projection-commutation",
           check_projection_commutation(gamma_full, projection), kTolExact, full->describe());

  Eigen::SelfAdjointEigenSolver<Matrix> eigen(0.5 * (gamma + gamma.adjoint()));
  std::vector<Eigen::Index> plus, minus;
  for (Eigen::Index k = 0; k < n; ++k) {
    (eigen.eigenvalues()(k) > 0 ? plus : minus).push_back(k);
  }
  auto gram_on = [&](const std::vector<Eigen::Index>& cols) {
    Matrix v(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i)
      v.col(static_cast<Eigen::Index>(i)) = eigen.eigenvectors().col(cols[i]);
    return Matrix(v.adjoint() * gamma * v);
  };
  const double fock_definiteness =
      std::max(definiteness_defect(gram_on(plus), 1.0), definiteness_defect(gram_on(minus), -1.0));
  sink.add("fock_krein_decomposition", g, "fock-krein-decomposition", fock_definiteness,
           kTolExact, rep.basis()->describe(),
           Json{{"dim_plus", plus.size()}, {"dim_minus", minus.size()}});

  if (model.name == "feynman") {
    FeynmanDecompositionReport f =
        feynman_decomposition_check(rep.basis()->cutoff(), sink.tol(kTolExact));
    const double residual =
        f.partitions_match
            ? std::max({0.0, 1.0 - f.min_plus_eigenvalue, 1.0 - f.min_minus_eigenvalue})
            : 1.0;
    sink.add("feynman_decomposition", g, "feynman-decomposition", residual, kTolExact,
             rep.basis()->describe(),
             Json{{"partitions_match", f.partitions_match},
                  {"plus_labels", f.plus_labels.size()},
                  {"minus_labels", f.minus_labels.size()},
                  {"min_plus_eigenvalue", f.min_plus_eigenvalue},
                  {"min_minus_eigenvalue", f.min_minus_eigenvalue}});
  }
}

void dagger_records(RecordSink& sink, const FockRepresentation& rep, Sampler& sampler) {
  const CheckGroup g = CheckGroup::kDaggerSwap;
  std::vector<Probe> probes = default_probes(rep.modes(), sampler);
  DaggerReport d = check_dagger_identities(rep, probes, kOperatorPairs, sampler);
  const std::string where = rep.basis()->describe();
  sink.add("dagger_creator_identity", g, "dagger-creator", d.creator_identity, kTolExact, where);
  sink.add("dagger_involutive", g, "dagger-involution", d.involutive, kTolExact, where,
           Json{{"operator_pairs", d.pairs}});
  sink.add("dagger_antimultiplicative", g, "dagger-antimultiplicative", d.antimultiplicative,
           kTolExact, where, Json{{"operator_pairs", d.pairs}});
  sink.add("dagger_plain_adjoint", g, "dagger-plain", d.eta_identity_adjoint, kTolExact, where);
  RelationReport swap = check_involution_swap(rep, probes, sink.tol(kTolSwap));
  sink.add("involution_swap", g, "involution-swap",
           std::max(swap.max_residual, swap.zero_relation_residual), kTolSwap, swap.domain,
           Json{{"relation", swap.kind == RelationKind::kCommutator ? "CCR" : "CAR"}});
}

void brs_records(RecordSink& sink, const ModelSpec& model, Sampler& sampler) {
  BrsRep rep = brs_build(model.params.at("a"));
  BrsReport r = brs_check(rep, sink.tol(kTolBrs), sampler);
  if (sink.wants(CheckGroup::kRelations)) {
    const CheckGroup g = CheckGroup::kRelations;
    sink.add("brs_qb_selfadjoint", g, "brs-relations", r.qb_selfadjoint, kTolBrs, "C^2");
    sink.add("brs_qc_selfadjoint", g, "brs-relations", r.qc_selfadjoint, kTolBrs, "C^2");
    sink.add("brs_qb_nilpotent", g, "brs-relations", r.qb_nilpotent, kTolBrs, "C^2");
    sink.add("brs_commutator_proportional", g, "brs-relations", r.constant_fit, kTolBrs, "C^2");
    const Complex plus_i(0.0, 1.0);
    sink.add("measured_commutator_constant", g, "brs-relations",
             std::abs(r.measured_constant - plus_i), kTolBrs, "C^2",
             Json{{"measured", complex_json(r.measured_constant)},
                  {"stated", complex_json(-plus_i)},
                  {"distance_to_stated", std::abs(r.measured_constant + plus_i)},
                  {"note",
                   "the displayed Q_B, Q_C give Q_C Q_B - Q_B Q_C = +i Q_B; the stated relation "
                   "carries -i"}},
             true);
  }
  if (sink.wants(CheckGroup::kAdjoint)) {
    sink.add("brs_pairing", CheckGroup::kAdjoint, "brs-pairing", r.pairing, kTolBrs, "C^2",
             Json{{"samples", 50}});
    sink.add("brs_null_norm", CheckGroup::kAdjoint, "brs-null", r.null_norm, kTolBrs, "C^2");
  }
  if (sink.wants(CheckGroup::kDecomposition)) {
    const CheckGroup g = CheckGroup::kDecomposition;
    sink.add("brs_nondegenerate", g, "brs-decomposition", std::abs(std::abs(r.det_u) - 1.0),
             kTolBrs, "C^2", Json{{"det_u", complex_json(r.det_u)}});
    sink.add("brs_decomposition", g, "brs-decomposition", r.decomposition, kTolBrs, "C^2");
    sink.add("brs_kernel_vector_cyclic", g, "brs-degenerate-vacuum",
             r.kernel_vector_cyclic ? 1.0 : 0.0, 0.0, "ker Q_B",
             Json{{"cyclic", r.kernel_vector_cyclic}}, true);
  }
}

Complex read_complex(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im") || !j["re"].is_number() ||
      !j["im"].is_number()) {
    throw Error(ErrorKind::kSchemaError, where + " must be {re, im}");
  }
  return {j["re"].get<double>(), j["im"].get<double>()};
}

Vector read_vector(const Json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw Error(ErrorKind::kSchemaError, where + " must be an array of " + std::to_string(dim));
  }
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = read_complex(j[i], where);
  return v;
}

}  // namespace

std::string to_string(CheckGroup group) {
  switch (group) {
    case CheckGroup::kRelations: return "relations";
    case CheckGroup::kAdjoint: return "adjoint";
    case CheckGroup::kVacuum: return "vacuum";
    case CheckGroup::kCyclicity: return "cyclicity";
    case CheckGroup::kDecomposition: return "decomposition";
    case CheckGroup::kDaggerSwap: return "dagger-swap";
  }
  return "unknown";
}

std::set<CheckGroup> parse_check_list(const std::string& list) {
  std::set<CheckGroup> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item == "all") continue;
    bool found = false;
    for (CheckGroup g : {CheckGroup::kRelations, CheckGroup::kAdjoint, CheckGroup::kVacuum,
                         CheckGroup::kCyclicity, CheckGroup::kDecomposition,
                         CheckGroup::kDaggerSwap}) {
      if (to_string(g) == item) {
        out.insert(g);
        found = true;
      }
    }
    if (!found) throw Error(ErrorKind::kConfigInvalid, "unknown check group '" + item + "'");
  }
  return out;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kInfo: return "info";
  }
  return "unknown";
}

const std::vector<std::pair<std::string, std::string>>& anchor_table() { return kAnchors; }

const std::string& anchor_for(const std::string& key) {
  for (const auto& [k, v] : kAnchors)
    if (k == key) return v;
  throw Error(ErrorKind::kConfigInvalid, "no anchor '" + key + "'");
}

bool VerificationReport::passed() const {
  for (const CheckRecord& r : records)
    if (r.verdict == Verdict::kFail) return false;
  return true;
}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  for (const CheckRecord& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

Json VerificationReport::to_json(bool include_wall_time) const {
  Json params = Json::object();
  for (const auto& [k, v] : model.params) params[k] = v;
  Json checks = Json::array();
  for (const CheckRecord& r : records) {
    checks.push_back(Json{{"name", r.name},
                          {"group", to_string(r.group)},
                          {"anchor", r.anchor},
                          {"residual", r.residual},
                          {"tolerance", r.tolerance},
                          {"verdict", to_string(r.verdict)},
                          {"informative", r.verdict == Verdict::kInfo},
                          {"domain", r.domain},
                          {"details", r.details}});
  }
  Json env{{"seed", seed}, {"basis_size", basis_size}, {"full_basis_size", full_basis_size}};
  if (include_wall_time) env["wall_time_s"] = wall_time_s;
  return Json{{"model",
               {{"name", model.name},
                {"source", source},
                {"statistics", to_string(model.statistics)},
                {"modes", model.modes},
                {"cutoff", model.cutoff},
                {"eta_builder", model.eta_builder},
                {"params", params},
                {"anchor", model.anchor}}},
              {"checks", checks},
              {"environment", env},
              {"overall", passed() ? "pass" : "fail"}};
}

ModelSpec load_model_file(const std::string& path, double metric_tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kParseError, path + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::kSchemaError, "model file must hold an object");
  for (const char* key : {"name", "statistics", "dim", "eta", "cutoff"}) {
    if (!j.contains(key)) throw Error(ErrorKind::kSchemaError, std::string("missing '") + key + "'");
  }
  if (!j["name"].is_string()) throw Error(ErrorKind::kSchemaError, "name must be a string");
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1) {
    throw Error(ErrorKind::kSchemaError, "dim must be a positive integer");
  }
  if (!j["cutoff"].is_number_integer() || j["cutoff"].get<int>() < 0) {
    throw Error(ErrorKind::kSchemaError, "cutoff must be a nonnegative integer");
  }
  const std::string stats = j["statistics"].is_string() ? j["statistics"].get<std::string>() : "";
  std::optional<Statistics> statistics = parse_statistics(stats);
  if (!statistics || *statistics == Statistics::kFull) {
    throw Error(ErrorKind::kSchemaError, "statistics must be 'bose' or 'fermi'");
  }
  const int dim = j["dim"].get<int>();
  const Json& eta_json = j["eta"];
  if (!eta_json.is_object() || !eta_json.contains("rows") || !eta_json["rows"].is_array() ||
      static_cast<int>(eta_json["rows"].size()) != dim) {
    throw Error(ErrorKind::kSchemaError, "eta.rows must hold dim rows");
  }
  Matrix eta(dim, dim);
  for (int r = 0; r < dim; ++r) {
    eta.row(r) = read_vector(eta_json["rows"][r], dim, "eta row " + std::to_string(r)).transpose();
  }
  MetricVerdict verdict = validate_metric(eta, metric_tol);
  if (!verdict.valid) {
    throw Error(ErrorKind::kMetricInvalid, std::string(to_string(*verdict.failure)) +
                                               " (selfadjoint " +
                                               std::to_string(verdict.selfadjoint_residual) +
                                               ", involution " +
                                               std::to_string(verdict.involution_residual) + ")");
  }

  ModelSpec spec;
  spec.name = j["name"].get<std::string>();
  spec.statistics =
      *statistics == Statistics::kBose ? ModelStatistics::kBose : ModelStatistics::kFermi;
  spec.modes = dim;
  spec.eta = eta;
  spec.eta_builder = "explicit matrix";
  spec.cutoff = j["cutoff"].get<int>();
  spec.anchor = "custom metric";
  const RelationKind kind = *statistics == Statistics::kBose ? RelationKind::kCommutator
                                                             : RelationKind::kAnticommutator;
  if (j.contains("probes")) {
    if (!j["probes"].is_array()) throw Error(ErrorKind::kSchemaError, "probes must be an array");
    int index = 0;
    for (const Json& p : j["probes"]) {
      if (!p.is_object() || !p.contains("f") || !p.contains("g")) {
        throw Error(ErrorKind::kSchemaError, "probe needs f and g");
      }
      const std::string where = "probe " + std::to_string(index);
      Vector f = read_vector(p["f"], dim, where + ".f");
      Vector g = read_vector(p["g"], dim, where + ".g");
      spec.expected_relations.push_back({where, f, g, indefinite_form(eta, f, g), kind});
      ++index;
    }
  } else {
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        Vector f = unit(dim, a);
        Vector g = unit(dim, b);
        spec.expected_relations.push_back({"(e" + std::to_string(a) + ",e" + std::to_string(b) + ")",
                                           f, g, eta(a, b), kind});
      }
  }
  return spec;
}

Json list_models() {
  Json models = Json::array();
  for (const CatalogEntry& e : model_catalog()) {
    Json params = Json::array();
    for (const ParamSchema& p : e.params) {
      params.push_back(
          Json{{"name", p.name}, {"default", p.default_value}, {"description", p.description}});
    }
    models.push_back(Json{{"name", e.name},
                          {"statistics", to_string(e.statistics)},
                          {"params", params},
                          {"anchor", e.anchor}});
  }
  return Json{{"models", models}};
}

ModelSpec resolve_model(const RunConfig& config, std::string* source) {
  try {
    if (find_model(config.model)) {
      if (source) *source = "builtin";
      return build_model(config.model, config.params, config.cutoff);
    }
    if (!std::filesystem::exists(config.model)) {
      throw Error(ErrorKind::kUnknownModel, "'" + config.model + "' is neither a model nor a file");
    }
    if (!config.params.empty()) {
      throw Error(ErrorKind::kConfigInvalid, "--param does not apply to model files");
    }
    ModelSpec spec = load_model_file(config.model, config.metric_tol);
    if (config.cutoff) spec.cutoff = *config.cutoff;
    if (source) *source = config.model;
    return spec;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfigInvalid || e.kind() == ErrorKind::kSizeOverflow) throw;
    throw Error(ErrorKind::kModelBuildFailed, e.what());
  }
}

VerificationReport run_suite(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.tol && !(*config.tol > 0.0 && std::isfinite(*config.tol))) {
    throw Error(ErrorKind::kConfigInvalid, "tolerance must be positive");
  }
  if (!(config.metric_tol > 0.0 && std::isfinite(config.metric_tol))) {
    throw Error(ErrorKind::kConfigInvalid, "metric tolerance must be positive");
  }
  if (config.cutoff && *config.cutoff < 0) {
    throw Error(ErrorKind::kConfigInvalid, "cutoff must be nonnegative");
  }

  VerificationReport report;
  report.model = resolve_model(config, &report.source);
  report.seed = config.seed;
  const ModelSpec& model = report.model;

  RecordSink sink(report.records, config.checks, config.tol);
  Sampler sampler(config.seed);

  if (model.statistics == ModelStatistics::kMatrix) {
    brs_records(sink, model, sampler);
  } else {
    const bool bose = model.statistics == ModelStatistics::kBose;
    if (bose && model.cutoff < 2 &&
        (sink.wants(CheckGroup::kRelations) || sink.wants(CheckGroup::kDaggerSwap))) {
      throw Error(ErrorKind::kConfigInvalid,
                  "bose relation checks need cutoff >= 2, got " + std::to_string(model.cutoff));
    }
    std::optional<FockRepresentation> rep;
    try {
      rep.emplace(KreinTriplet(model.eta, config.metric_tol), model.fock_statistics(),
                  model.cutoff);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kSizeOverflow) throw;
      throw Error(ErrorKind::kModelBuildFailed, e.what());
    }
    report.basis_size = rep->basis()->size();
    report.full_basis_size = rep->full_basis()->size();
    if (sink.wants(CheckGroup::kRelations)) relation_records(sink, model, *rep, sampler);
    if (sink.wants(CheckGroup::kAdjoint)) adjoint_records(sink, *rep, sampler);
    if (sink.wants(CheckGroup::kVacuum)) vacuum_records(sink, *rep, sampler);
    if (sink.wants(CheckGroup::kCyclicity)) cyclicity_records(sink, *rep);
    if (sink.wants(CheckGroup::kDecomposition))
      decomposition_records(sink, model, *rep, config.metric_tol);
    if (sink.wants(CheckGroup::kDaggerSwap)) dagger_records(sink, *rep, sampler);
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json describe_decomposition(const ModelSpec& model, double metric_tol) {
  FundamentalDecomposition fd = fundamental_decomposition(model.eta, metric_tol);
  Json plus = Json::array();
  Json minus = Json::array();
  for (const Vector& v : fd.basis_plus) plus.push_back(vector_json(v));
  for (const Vector& v : fd.basis_minus) minus.push_back(vector_json(v));
  Json out{{"model", model.name},
           {"one_particle",
            {{"dim", model.modes},
             {"dim_plus", fd.dim_plus()},
             {"dim_minus", fd.dim_minus()},
             {"basis_plus", plus},
             {"basis_minus", minus}}}};
  if (model.statistics == ModelStatistics::kMatrix) return out;

  FockRepresentation rep(KreinTriplet(model.eta, metric_tol), model.fock_statistics(),
                         model.cutoff);
  const SectorBasis& basis = *rep.basis();
  const GradedOperator& gamma = rep.gamma_eta();
  Json sectors = Json::array();
  Eigen::Index total_plus = 0;
  Eigen::Index total_minus = 0;
  for (int n = 0; n <= basis.top_sector(); ++n) {
    Matrix block = gamma.block(n, n);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (block + block.adjoint()));
    Eigen::Index p = 0;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k)
      if (eig.eigenvalues()(k) > 0) ++p;
    const Eigen::Index m = block.rows() - p;
    total_plus += p;
    total_minus += m;
    Json sector{{"n", n}, {"size", block.rows()}, {"plus", p}, {"minus", m}};
    Matrix off = block;
    off.diagonal().setZero();
    if (max_abs(off) <= metric_tol) {
      Json labels_plus = Json::array();
      Json labels_minus = Json::array();
      for (Eigen::Index i = 0; i < block.rows(); ++i) {
        const Label& l = basis.label(basis.sector_begin(n) + i);
        (block(i, i).real() > 0 ? labels_plus : labels_minus).push_back(label_json(l));
      }
      sector["labels_plus"] = labels_plus;
      sector["labels_minus"] = labels_minus;
    }
    sectors.push_back(sector);
  }
  out["fock"] = Json{{"statistics", to_string(basis.statistics())},
                     {"cutoff", model.cutoff},
                     {"basis_size", basis.size()},
                     {"dim_plus", total_plus},
                     {"dim_minus", total_minus},
                     {"sectors", sectors}};
  return out;
}

int exit_code(const VerificationReport& report) { return report.passed() ? 0 : 1; }

int exit_code(const Error&) { return 2; }

}  // namespace kreinfock
