// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kreinfock/field_ops.hpp"
#include "kreinfock/models.hpp"
#include "kreinfock/verifier.hpp"

using namespace kreinfock;

namespace {

constexpr std::uint64_t kSeed = 20090420;

struct Outcome {
  bool passed = true;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

Vector unit(int d, int k) {
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return v;
}

struct NamedMetric {
  std::string name;
  Matrix eta;
};

// I and -I for d = 1..4, eta0 (+) eta0, -g, and eta(theta, xi) at 8 seeded angles.
std::vector<NamedMetric> metric_family() {
  std::vector<NamedMetric> out;
  for (int d = 1; d <= 4; ++d) {
    out.push_back({"I_" + std::to_string(d), Matrix::Identity(d, d)});
    out.push_back({"-I_" + std::to_string(d), -Matrix::Identity(d, d)});
  }
  out.push_back({"eta0+eta0", pairing_metric(2)});
  out.push_back({"-g", -minkowski_metric()});
  Sampler s(kSeed);
  for (int i = 0; i < 8; ++i) {
    const double theta = s.uniform(0, 2 * std::numbers::pi);
    const double xi = s.uniform(0, 2 * std::numbers::pi);
    out.push_back({"eta(" + sci(theta) + "," + sci(xi) + ")", eta_theta_xi(theta, xi)});
  }
  return out;
}

Outcome oracle_equivalence() {
  Clock clock;
  Sampler s(kSeed + 1);
  double worst = 0.0;
  int cases = 0;
  for (Statistics st : {Statistics::kBose, Statistics::kFermi}) {
    for (int d = 1; d <= 3; ++d) {
      for (int cutoff = 2; cutoff <= 4; ++cutoff) {
        FockRepresentation rep(KreinTriplet(Matrix::Identity(d, d)), st, cutoff);
        std::vector<Vector> fs;
        for (int k = 0; k < d; ++k) fs.push_back(unit(d, k));
        for (int i = 0; i < 20; ++i) fs.push_back(s.vector(d));
        for (const Vector& f : fs) {
          Matrix compressed = rep.field(f).annihilator.matrix();
          Matrix direct = st == Statistics::kBose ? direct_bose(f, rep.basis()).matrix()
                                                  : direct_fermi(f, rep.basis()).matrix();
          worst = std::max(worst, max_abs(Matrix(compressed - direct)));
          ++cases;
        }
      }
    }
  }
  const double t = clock.seconds();
  return {worst <= 1e-12 && t < 30.0, "max entry diff " + sci(worst) + " over " +
                                          std::to_string(cases) + " operators, tol 1e-12, " +
                                          sci(t) + " s (limit 30 s)"};
}

Outcome eta_ccr() {
  Clock clock;
  Sampler s(kSeed + 2);
  double worst = 0.0;
  std::string missing_defect;
  for (const NamedMetric& m : metric_family()) {
    const int d = static_cast<int>(m.eta.rows());
    FockRepresentation rep(KreinTriplet(m.eta), Statistics::kBose, 4);
    RelationReport r = check_eta_ccr(rep, default_probes(d, s), 1e-10);
    worst = std::max({worst, r.max_residual, r.zero_relation_residual});
    bool nonzero = false;
    for (const ProbeResidual& p : r.probes) nonzero = nonzero || p.top_defect > 0.0;
    if (!nonzero) missing_defect += " " + m.name;
  }
  const double t = clock.seconds();
  Outcome out{worst <= 1e-10 && missing_defect.empty() && t < 60.0,
              "max residual " + sci(worst) + " on sectors <= N-2, tol 1e-10, N=4, " + sci(t) +
                  " s (limit 60 s)"};
  if (!missing_defect.empty()) out.detail += "; zero top defect for" + missing_defect;
  return out;
}

Outcome eta_car() {
  Sampler s(kSeed + 3);
  double worst = 0.0;
  for (const NamedMetric& m : metric_family()) {
    const int d = static_cast<int>(m.eta.rows());
    FockRepresentation rep(KreinTriplet(m.eta), Statistics::kFermi, d);
    RelationReport r = check_eta_car(rep, default_probes(d, s), 1e-12);
    worst = std::max({worst, r.max_residual, r.zero_relation_residual});
  }
  // {a_n, a_n^dag} = (-1)^n I, n = 1..4: every diagonal entry must round to the
  // exact sign, and the whole bracket must sit within the CAR tolerance.
  ModelSpec icar = build_model("icar", {{"m", 2}});
  FockRepresentation rep(KreinTriplet(icar.eta), Statistics::kFermi, icar.cutoff);
  double alternation = 0.0;
  bool signs_exact = true;
  for (int n = 1; n <= 4; ++n) {
    Vector e = unit(4, n - 1);
    Matrix bracket = anticommutator(rep.annihilator(e), rep.creator_dagger(e)).matrix();
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    for (Eigen::Index i = 0; i < bracket.rows(); ++i)
      signs_exact = signs_exact && std::round(bracket(i, i).real()) == sign;
    alternation = std::max(
        alternation, max_abs(Matrix(bracket - sign * Matrix::Identity(bracket.rows(), bracket.cols()))));
  }
  return {worst <= 1e-12 && signs_exact && alternation <= 1e-12,
          "max residual " + sci(worst) + " on full fermi spaces, tol 1e-12; ICAR signs " +
              (signs_exact ? "exact" : "wrong") + ", bracket defect " + sci(alternation) +
              " (tol 1e-12)"};
}

Outcome involution() {
  Sampler s(kSeed + 4);
  double identities = 0.0;
  double swap = 0.0;
  for (const NamedMetric& m : metric_family()) {
    const int d = static_cast<int>(m.eta.rows());
    for (Statistics st : {Statistics::kBose, Statistics::kFermi}) {
      FockRepresentation rep(KreinTriplet(m.eta), st, st == Statistics::kBose ? 4 : d);
      std::vector<Probe> probes = default_probes(d, s);
      DaggerReport r = check_dagger_identities(rep, probes, 50, s);
      identities = std::max({identities, r.creator_identity, r.involutive, r.antimultiplicative,
                             r.eta_identity_adjoint});
      RelationReport sw = check_involution_swap(rep, probes, 1e-10);
      swap = std::max({swap, sw.max_residual, sw.zero_relation_residual});
    }
  }
  return {identities <= 1e-12 && swap <= 1e-10,
          "dagger identities " + sci(identities) + " (tol 1e-12, 50 pairs per model); swap " +
              sci(swap) + " (tol 1e-10)"};
}

Outcome krein_structure() {
  Sampler s(kSeed + 5);
  double gamma = 0.0;
  double commutation = 0.0;
  double pairing = 0.0;
  for (const NamedMetric& m : metric_family()) {
    const int d = static_cast<int>(m.eta.rows());
    for (Statistics st : {Statistics::kBose, Statistics::kFermi}) {
      FockRepresentation rep(KreinTriplet(m.eta), st, st == Statistics::kBose ? 4 : d);
      const Matrix& g = rep.gamma_eta().matrix();
      const Matrix id = Matrix::Identity(g.rows(), g.cols());
      gamma = std::max({gamma, max_abs(Matrix(g - g.adjoint())),
                        max_abs(Matrix(g * g.adjoint() - id))});
      FieldOperatorPair pair = rep.field(s.vector(d));
      PairingReport p =
          check_adjoint_pairing(pair, rep.gamma_eta(), rep.pairing_domain_end(), 50, s, 1e-12);
      pairing = std::max(pairing, p.residual);
    }
    BasisPtr full = enumerate_basis(Statistics::kFull, d, 4);
    GradedOperator g_full = second_quantization(m.eta, full);
    for (Statistics st : {Statistics::kBose, Statistics::kFermi}) {
      commutation =
          std::max(commutation, check_projection_commutation(g_full, fock_projection(full, st)));
    }
  }
  return {gamma <= 1e-12 && commutation <= 1e-12 && pairing <= 1e-12,
          "Gamma selfadjoint/unitary " + sci(gamma) + ", P Gamma - Gamma P " + sci(commutation) +
              ", adjoint pairing " + sci(pairing) + " (all tol 1e-12)"};
}

Outcome feynman() {
  FeynmanDecompositionReport r = feynman_decomposition_check(4, 1e-12);
  const bool ok = r.partitions_match && r.min_plus_eigenvalue >= 1.0 - 1e-12 &&
                  r.min_minus_eigenvalue >= 1.0 - 1e-12;
  return {ok, "partition " + std::string(r.partitions_match ? "matches" : "differs") + " (" +
                  std::to_string(r.plus_labels.size()) + " plus, " +
                  std::to_string(r.minus_labels.size()) + " minus of " +
                  std::to_string(r.basis_size) + "); min Gram eigenvalues " +
                  sci(r.min_plus_eigenvalue) + ", " + sci(r.min_minus_eigenvalue)};
}

Outcome brs() {
  Sampler s(kSeed + 7);
  double worst = 0.0;
  double constant = 0.0;
  for (double a : {0.0, 1.0, -2.5}) {
    BrsReport r = brs_check(brs_build(a), 1e-14, s);
    worst = std::max({worst, r.qb_selfadjoint, r.qc_selfadjoint, r.qb_nilpotent, r.pairing});
    constant = std::max(constant, std::abs(r.measured_constant - Complex(0.0, 1.0)));
  }
  return {worst <= 1e-14 && constant <= 1e-14,
          "relations " + sci(worst) + " (tol 1e-14); measured constant |c - i| = " + sci(constant) +
              " (stated -i, informative)"};
}

Outcome cyclicity() {
  std::string failures;
  int cases = 0;
  for (int d = 1; d <= 3; ++d) {
    for (int cutoff = 0; cutoff <= 3; ++cutoff) {
      std::vector<Matrix> metrics = {Matrix::Identity(d, d), -Matrix::Identity(d, d)};
      if (d == 2) metrics.push_back(eta_zero());
      for (const Matrix& eta : metrics) {
        std::vector<Statistics> stats = {Statistics::kFermi};
        if (d <= 2) stats.push_back(Statistics::kBose);
        for (Statistics st : stats) {
          CyclicityReport r = check_cyclicity(FockRepresentation(KreinTriplet(eta), st, cutoff));
          ++cases;
          if (r.rank != r.basis_size) {
            failures += " " + to_string(st) + "(d=" + std::to_string(d) +
                        ",N=" + std::to_string(cutoff) + ")";
          }
        }
      }
    }
  }
  return {failures.empty(), std::to_string(cases) + " spaces" +
                                (failures.empty() ? ", all full rank" : ", rank deficient:" + failures)};
}

int run(const std::string& args) {
  const std::string cmd = std::string(KREINVERIFY_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string without_wall_time(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (line.find("\"wall_time_s\"") == std::string::npos) out += line + "\n";
  }
  return out;
}

Outcome cli_contract() {
  const auto dir = std::filesystem::temp_directory_path() / "kreinfock_acceptance";
  std::filesystem::create_directories(dir);
  bool identical = true;
  for (const char* model : {"froissart", "eta_theta_xi", "brs"}) {
    const auto a = dir / "a.json", b = dir / "b.json";
    run(std::string("verify --quiet --model ") + model + " --out " + a.string());
    run(std::string("verify --quiet --model ") + model + " --out " + b.string());
    const std::string ra = without_wall_time(a);
    identical = identical && !ra.empty() && ra == without_wall_time(b);
  }
  const std::string data = TEST_DATA_DIR;
  const int pass = run("verify --quiet --model froissart");
  const int fail =
      run("verify --quiet --model " + data + "/near_involutive.json --metric-tol 1e-5");
  const int error = run("verify --quiet --model " + data + "/malformed.json");
  std::filesystem::remove_all(dir);
  return {identical && pass == 0 && fail == 1 && error == 2,
          std::string("reports ") + (identical ? "identical" : "differ") + "; exit codes " +
              std::to_string(pass) + "/" + std::to_string(fail) + "/" + std::to_string(error) +
              " (want 0/1/2)"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"eta-CCR", eta_ccr},
      {"eta-CAR", eta_car},
      {"involution identities", involution},
      {"Krein structure", krein_structure},
      {"Feynman decomposition", feynman},
      {"BRS", brs},
      {"cyclicity", cyclicity},
      {"CLI contract", cli_contract},
  };
  int failed = 0;
  int index = 1;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::cout << (o.passed ? "PASS" : "FAIL") << " [" << index++ << "] " << c.name << ": "
              << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
