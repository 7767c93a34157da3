#pragma once

#include <string>
#include <vector>

#include "kreinfock/fock_space.hpp"
#include "kreinfock/krein.hpp"

namespace kreinfock {

/// a(f) on the truncated full Fock space:
///   a(f) (f_1 (x) ... (x) f_n) = sqrt(n) <f|f_1> f_2 (x) ... (x) f_n,  a(f) Omega = 0.
GradedOperator annihilator_full(const Vector& f, const BasisPtr& basis_full);

/// a*(f) (f_1 (x) ... (x) f_n) = sqrt(n+1) f (x) f_1 (x) ... (x) f_n,  a*(f) Omega = f.
/// Creation out of the top sector is dropped.
GradedOperator creator_full(const Vector& f, const BasisPtr& basis_full);

struct FieldOperatorPair {
  Vector f;
  GradedOperator annihilator;     // grade -1
  GradedOperator creator_star;    // adjoint w.r.t. <.|.>
  GradedOperator creator_dagger;  // adjoint w.r.t. (.|.) = <.|Gamma(eta) .>
};

/// a_pm(f) = V* a(f) V with V = embed_symmetric(basis_pm, basis_full), i.e. the
/// compression P a(f) P read off in the normalized occupation/subset basis.
/// creator_dagger is Gamma(eta) a_pm*(f) Gamma(eta)*, so gamma_eta must live on
/// basis_pm.
FieldOperatorPair compressed_field(const Vector& f, const BasisPtr& basis_pm,
                                   const BasisPtr& basis_full, const Matrix& embedding,
                                   const GradedOperator& gamma_eta);

/// Occupation-number oracle: a(e_k)|..n_k..> = sqrt(n_k)|..n_k - 1..>, extended
/// conjugate-linearly in f.
GradedOperator direct_bose(const Vector& f, const BasisPtr& basis_bose);

/// Subset oracle: a(e_k) S = (-1)^{#{j in S : j < k}} S\{k} for k in S, 0 otherwise.
GradedOperator direct_fermi(const Vector& f, const BasisPtr& basis_fermi);

/// x^dagger = Gamma(eta) x* Gamma(eta)*.
GradedOperator dagger(const GradedOperator& x, const GradedOperator& gamma_eta);

GradedOperator commutator(const GradedOperator& x, const GradedOperator& y);
GradedOperator anticommutator(const GradedOperator& x, const GradedOperator& y);

/// Fock representation of the eta-CCR (bose) or eta-CAR (fermi) over a Krein
/// triplet, cut off at total particle number N. Holds the embedding into the
/// full Fock space and Gamma(eta) on the representation space.
class FockRepresentation {
 public:
  FockRepresentation(KreinTriplet triplet, Statistics statistics, int cutoff,
                     std::size_t cap = kDefaultSizeCap);

  const KreinTriplet& triplet() const { return triplet_; }
  Statistics statistics() const { return basis_->statistics(); }
  const BasisPtr& basis() const { return basis_; }
  const BasisPtr& full_basis() const { return full_; }
  const Matrix& embedding() const { return embedding_; }
  const GradedOperator& gamma_eta() const { return gamma_; }
  int modes() const { return basis_->modes(); }

  /// Direct compression of the full-Fock operators for this f.
  FieldOperatorPair field(const Vector& f) const;
  /// sum_k conj(f_k) a(e_k) from the per-mode compressions cached at
  /// construction; agrees with field(f).annihilator to rounding.
  GradedOperator annihilator(const Vector& f) const;
  GradedOperator creator_star(const Vector& f) const;
  GradedOperator creator_dagger(const Vector& f) const;

  Vector vacuum() const;
  Vector mode(int k) const;

  /// Columns [0, relation_domain_end()) span the sectors on which the truncated
  /// relations must hold exactly: 0..N-2 when truncated, everything otherwise.
  Eigen::Index relation_domain_end() const;
  /// Columns [0, pairing_domain_end()) span sectors 0..N-1 (everything when
  /// not truncated).
  Eigen::Index pairing_domain_end() const;

 private:
  KreinTriplet triplet_;
  BasisPtr basis_;
  BasisPtr full_;
  Matrix embedding_;
  GradedOperator gamma_;
  std::vector<Matrix> mode_annihilators_;
};

struct Probe {
  Vector f;
  Vector g;
  std::string name;
};

/// All (e_i, e_j) pairs followed by `random_pairs` seeded random complex pairs.
std::vector<Probe> default_probes(int modes, Sampler& sampler, int random_pairs = 10);

enum class RelationKind { kCommutator, kAnticommutator };

struct ProbeResidual {
  std::string probe;
  Complex expected = 0.0;
  double residual = 0.0;     // max over unit v in the relation domain
  double top_defect = 0.0;   // same quantity on the complement of the domain
};

struct RelationReport {
  RelationKind kind = RelationKind::kCommutator;
  std::vector<ProbeResidual> probes;
  double max_residual = 0.0;
  double zero_relation_residual = 0.0;  // [a,a]_-+ and [a^dag,a^dag]_-+
  double max_top_defect = 0.0;
  double tol = 0.0;
  bool passed = false;
  std::string domain;
};

/// a(f) a^dag(g) - a^dag(g) a(f) = <f|eta g> I on sectors 0..N-2 for every probe,
/// and the vanishing commutators of a's and of a^dag's. Throws kCutoffTooSmall
/// for N < 2 and kBasisMismatch for a non-bose representation.
RelationReport check_eta_ccr(const FockRepresentation& rep, const std::vector<Probe>& probes,
                             double tol);

/// Anticommutator counterpart on a fermi representation.
RelationReport check_eta_car(const FockRepresentation& rep, const std::vector<Probe>& probes,
                             double tol);

/// Conjugates each annihilator by Gamma(eta), b(f) = Gamma a(f) Gamma*, and
/// checks ordinary CCR/CAR for b(f) against its <.|.>-adjoint.
RelationReport check_involution_swap(const FockRepresentation& rep,
                                     const std::vector<Probe>& probes, double tol);

struct PairingReport {
  double residual = 0.0;
  int samples = 0;
  bool passed = false;
};

/// max |(a^dag(f) v | w) - (v | a(f) w)| over seeded unit vectors v, w in the
/// pairing domain, with (x|y) = <x|Gamma(eta) y>.
PairingReport check_adjoint_pairing(const FieldOperatorPair& pair,
                                    const GradedOperator& gamma_eta,
                                    Eigen::Index domain_end, int samples, Sampler& sampler,
                                    double tol);

/// True when the annihilator's vacuum column is identically zero.
bool check_vacuum(const FieldOperatorPair& pair);

struct CyclicityReport {
  Eigen::Index rank = 0;
  Eigen::Index basis_size = 0;
  std::size_t monomials = 0;
  bool full_rank = false;
};

/// Rank of span{ a^dag(e_{i_1}) ... a^dag(e_{i_k}) Omega : k <= top sector } over
/// all words; singular values above 1e-8 count. Throws kSizeOverflow when the
/// number of words exceeds max_monomials.
CyclicityReport check_cyclicity(const FockRepresentation& rep,
                                std::size_t max_monomials = 100'000);

struct DaggerReport {
  double creator_identity = 0.0;   // max |a^dag(f) - a*(eta f)|
  double involutive = 0.0;         // max |(x^dag)^dag - x|
  double antimultiplicative = 0.0; // max |(xy)^dag - y^dag x^dag|
  double eta_identity_adjoint = 0.0;  // with eta = I the dagger is the plain adjoint
  int pairs = 0;
};

/// Involution identities over the probe vectors and `pairs` seeded random
/// operator pairs drawn from words in the generators.
DaggerReport check_dagger_identities(const FockRepresentation& rep,
                                     const std::vector<Probe>& probes, int pairs,
                                     Sampler& sampler);

/// Largest singular value of columns [begin, end), i.e. max ‖m v‖ over unit v
/// supported there. 0 for an empty range.
double restricted_norm(const Matrix& m, Eigen::Index begin, Eigen::Index end);

}  // namespace kreinfock
