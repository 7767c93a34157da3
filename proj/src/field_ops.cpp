#include "kreinfock/field_ops.hpp"

#include <cmath>

namespace kreinfock {
namespace {

void require_full(const BasisPtr& basis, const Vector& f) {
  if (basis->statistics() != Statistics::kFull) {
    throw Error(ErrorKind::kBasisMismatch, "expected a full Fock basis");
  }
  if (f.size() != basis->modes()) {
    throw Error(ErrorKind::kDimensionMismatch, "smearing vector length != modes");
  }
}

Vector basis_vector(int d, int k) {
  Vector e = Vector::Zero(d);
  e(k) = 1.0;
  return e;
}

std::string probe_name(int i, int j) {
  return "(e" + std::to_string(i) + ",e" + std::to_string(j) + ")";
}

// Shared body of the (eta-)CCR / CAR checks. annihilate(f) and create(g) pick
// the generator pair, coefficient(f, g) the expected multiple of I.
template <typename Annihilate, typename Create, typename Coefficient>
RelationReport check_relations(const FockRepresentation& rep, const std::vector<Probe>& probes,
                               RelationKind kind, double tol, Annihilate annihilate,
                               Create create, Coefficient coefficient) {
  RelationReport report;
  report.kind = kind;
  report.tol = tol;
  const Eigen::Index domain_end = rep.relation_domain_end();
  const Eigen::Index size = rep.basis()->size();
  if (rep.basis()->is_truncated()) {
    report.domain = "sectors 0..N-2 (N=" + std::to_string(rep.basis()->top_sector()) + ")";
  } else {
    report.domain = "whole space";
  }
  auto bracket = [kind](const GradedOperator& x, const GradedOperator& y) {
    return kind == RelationKind::kCommutator ? commutator(x, y) : anticommutator(x, y);
  };
  const Matrix identity = Matrix::Identity(size, size);
  for (const Probe& probe : probes) {
    GradedOperator af = annihilate(probe.f);
    GradedOperator ag = annihilate(probe.g);
    GradedOperator cf = create(probe.f);
    GradedOperator cg = create(probe.g);
    ProbeResidual r;
    r.probe = probe.name;
    r.expected = coefficient(probe.f, probe.g);
    Matrix defect = bracket(af, cg).matrix() - r.expected * identity;
    r.residual = restricted_norm(defect, 0, domain_end);
    r.top_defect = restricted_norm(defect, domain_end, size);
    report.max_residual = std::max(report.max_residual, r.residual);
    report.max_top_defect = std::max(report.max_top_defect, r.top_defect);
    report.zero_relation_residual =
        std::max({report.zero_relation_residual, max_abs(bracket(af, ag).matrix()),
                  max_abs(bracket(cf, cg).matrix())});
    report.probes.push_back(std::move(r));
  }
  report.passed = report.max_residual <= tol && report.zero_relation_residual <= tol;
  return report;
}

}  // namespace

GradedOperator annihilator_full(const Vector& f, const BasisPtr& basis_full) {
  require_full(basis_full, f);
  const SectorBasis& b = *basis_full;
  check_matrix_size(b.size(), b.size());
  Matrix m = Matrix::Zero(b.size(), b.size());
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    const Label& word = b.label(j);
    if (word.empty()) continue;
    const double amplitude = std::sqrt(static_cast<double>(word.size()));
    Label rest(word.begin() + 1, word.end());
    m(*b.index_of(rest), j) = amplitude * std::conj(f(word.front()));
  }
  return GradedOperator(basis_full, basis_full, std::move(m), -1);
}

GradedOperator creator_full(const Vector& f, const BasisPtr& basis_full) {
  require_full(basis_full, f);
  const SectorBasis& b = *basis_full;
  check_matrix_size(b.size(), b.size());
  Matrix m = Matrix::Zero(b.size(), b.size());
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    const Label& word = b.label(j);
    if (static_cast<int>(word.size()) >= b.top_sector()) continue;
    const double amplitude = std::sqrt(static_cast<double>(word.size() + 1));
    Label longer(word.size() + 1);
    std::copy(word.begin(), word.end(), longer.begin() + 1);
    for (int k = 0; k < b.modes(); ++k) {
      longer.front() = k;
      m(*b.index_of(longer), j) = amplitude * f(k);
    }
  }
  return GradedOperator(basis_full, basis_full, std::move(m), 1);
}

FieldOperatorPair compressed_field(const Vector& f, const BasisPtr& basis_pm,
                                   const BasisPtr& basis_full, const Matrix& embedding,
                                   const GradedOperator& gamma_eta) {
  if (embedding.rows() != basis_full->size() || embedding.cols() != basis_pm->size() ||
      !gamma_eta.domain().same_space(*basis_pm)) {
    throw Error(ErrorKind::kBasisMismatch, "compressed_field operands disagree");
  }
  GradedOperator full_a = annihilator_full(f, basis_full);
  GradedOperator full_c = creator_full(f, basis_full);
  GradedOperator a(basis_pm, basis_pm, embedding.adjoint() * full_a.matrix() * embedding, -1);
  GradedOperator c(basis_pm, basis_pm, embedding.adjoint() * full_c.matrix() * embedding, 1);
  GradedOperator c_dagger = dagger(a, gamma_eta);
  return FieldOperatorPair{f, std::move(a), std::move(c), std::move(c_dagger)};
}

GradedOperator direct_bose(const Vector& f, const BasisPtr& basis_bose) {
  const SectorBasis& b = *basis_bose;
  if (b.statistics() != Statistics::kBose) throw Error(ErrorKind::kBasisMismatch, "not bose");
  if (f.size() != b.modes()) throw Error(ErrorKind::kDimensionMismatch, "smearing vector");
  Matrix m = Matrix::Zero(b.size(), b.size());
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    const Label& occ = b.label(j);
    for (int k = 0; k < b.modes(); ++k) {
      if (occ[k] == 0) continue;
      Label lowered = occ;
      --lowered[k];
      m(*b.index_of(lowered), j) += std::sqrt(static_cast<double>(occ[k])) * std::conj(f(k));
    }
  }
  return GradedOperator(basis_bose, basis_bose, std::move(m), -1);
}

GradedOperator direct_fermi(const Vector& f, const BasisPtr& basis_fermi) {
  const SectorBasis& b = *basis_fermi;
  if (b.statistics() != Statistics::kFermi) throw Error(ErrorKind::kBasisMismatch, "not fermi");
  if (f.size() != b.modes()) throw Error(ErrorKind::kDimensionMismatch, "smearing vector");
  Matrix m = Matrix::Zero(b.size(), b.size());
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    const Label& subset = b.label(j);
    for (std::size_t p = 0; p < subset.size(); ++p) {
      Label removed = subset;
      removed.erase(removed.begin() + static_cast<std::ptrdiff_t>(p));
      const double sign = p % 2 == 0 ? 1.0 : -1.0;
      m(*b.index_of(removed), j) += sign * std::conj(f(subset[p]));
    }
  }
  return GradedOperator(basis_fermi, basis_fermi, std::move(m), -1);
}

GradedOperator dagger(const GradedOperator& x, const GradedOperator& gamma_eta) {
  if (!x.domain().same_space(gamma_eta.domain()) ||
      !x.codomain().same_space(gamma_eta.domain())) {
    throw Error(ErrorKind::kBasisMismatch, "dagger needs x and Gamma(eta) on one basis");
  }
  return gamma_eta * x.adjoint() * gamma_eta.adjoint();
}

GradedOperator commutator(const GradedOperator& x, const GradedOperator& y) {
  return x * y - y * x;
}

GradedOperator anticommutator(const GradedOperator& x, const GradedOperator& y) {
  return x * y + y * x;
}

FockRepresentation::FockRepresentation(KreinTriplet triplet, Statistics statistics, int cutoff,
                                       std::size_t cap)
    : triplet_(std::move(triplet)),
      basis_(enumerate_basis(statistics, static_cast<int>(triplet_.dim()), cutoff, cap)),
      full_(enumerate_basis(Statistics::kFull, static_cast<int>(triplet_.dim()),
                            basis_->top_sector(), cap)),
      embedding_(statistics == Statistics::kFull
                     ? Matrix(Matrix::Identity(full_->size(), full_->size()))
                     : embed_symmetric(*basis_, *full_)),
      gamma_(second_quantization(triplet_.eta(), basis_, triplet_.tol())) {
  for (int k = 0; k < modes(); ++k) {
    mode_annihilators_.push_back(embedding_.adjoint() *
                                 annihilator_full(basis_vector(modes(), k), full_).matrix() *
                                 embedding_);
  }
}

FieldOperatorPair FockRepresentation::field(const Vector& f) const {
  return compressed_field(f, basis_, full_, embedding_, gamma_);
}

GradedOperator FockRepresentation::annihilator(const Vector& f) const {
  if (f.size() != modes()) throw Error(ErrorKind::kDimensionMismatch, "smearing vector");
  Matrix m = Matrix::Zero(basis_->size(), basis_->size());
  for (int k = 0; k < modes(); ++k)
    if (f(k) != Complex(0.0)) m += std::conj(f(k)) * mode_annihilators_[k];
  return GradedOperator(basis_, basis_, std::move(m), -1);
}

GradedOperator FockRepresentation::creator_star(const Vector& f) const {
  return annihilator(f).adjoint();
}

GradedOperator FockRepresentation::creator_dagger(const Vector& f) const {
  return dagger(annihilator(f), gamma_);
}

Vector FockRepresentation::vacuum() const {
  Vector v = Vector::Zero(basis_->size());
  v(0) = 1.0;
  return v;
}

Vector FockRepresentation::mode(int k) const { return basis_vector(modes(), k); }

Eigen::Index FockRepresentation::relation_domain_end() const {
  if (!basis_->is_truncated()) return basis_->size();
  const int top = basis_->top_sector();
  return top < 2 ? 0 : basis_->sector_end(top - 2);
}

Eigen::Index FockRepresentation::pairing_domain_end() const {
  if (!basis_->is_truncated()) return basis_->size();
  const int top = basis_->top_sector();
  return top < 1 ? 0 : basis_->sector_end(top - 1);
}

std::vector<Probe> default_probes(int modes, Sampler& sampler, int random_pairs) {
  std::vector<Probe> probes;
  for (int i = 0; i < modes; ++i)
    for (int j = 0; j < modes; ++j)
      probes.push_back({basis_vector(modes, i), basis_vector(modes, j), probe_name(i, j)});
  for (int r = 0; r < random_pairs; ++r) {
    Vector f = sampler.vector(modes);
    Vector g = sampler.vector(modes);
    probes.push_back({std::move(f), std::move(g), "random#" + std::to_string(r)});
  }
  return probes;
}

RelationReport check_eta_ccr(const FockRepresentation& rep, const std::vector<Probe>& probes,
                             double tol) {
  if (rep.statistics() != Statistics::kBose) {
    throw Error(ErrorKind::kBasisMismatch, "eta-CCR needs a bose representation");
  }
  if (rep.basis()->cutoff() < 2) {
    throw Error(ErrorKind::kCutoffTooSmall, "eta-CCR check needs N >= 2");
  }
  const Matrix eta = rep.triplet().eta();
  return check_relations(
      rep, probes, RelationKind::kCommutator, tol,
      [&](const Vector& f) { return rep.annihilator(f); },
      [&](const Vector& g) { return rep.creator_dagger(g); },
      [&](const Vector& f, const Vector& g) { return indefinite_form(eta, f, g); });
}

RelationReport check_eta_car(const FockRepresentation& rep, const std::vector<Probe>& probes,
                             double tol) {
  if (rep.statistics() != Statistics::kFermi) {
    throw Error(ErrorKind::kBasisMismatch, "eta-CAR needs a fermi representation");
  }
  const Matrix eta = rep.triplet().eta();
  return check_relations(
      rep, probes, RelationKind::kAnticommutator, tol,
      [&](const Vector& f) { return rep.annihilator(f); },
      [&](const Vector& g) { return rep.creator_dagger(g); },
      [&](const Vector& f, const Vector& g) { return indefinite_form(eta, f, g); });
}

RelationReport check_involution_swap(const FockRepresentation& rep,
                                     const std::vector<Probe>& probes, double tol) {
  if (rep.statistics() == Statistics::kFull) {
    throw Error(ErrorKind::kBasisMismatch, "swap check needs a bose or fermi representation");
  }
  if (rep.statistics() == Statistics::kBose && rep.basis()->cutoff() < 2) {
    throw Error(ErrorKind::kCutoffTooSmall, "CCR check needs N >= 2");
  }
  const GradedOperator& gamma = rep.gamma_eta();
  auto swapped = [&](const Vector& f) { return gamma * rep.annihilator(f) * gamma.adjoint(); };
  const RelationKind kind = rep.statistics() == Statistics::kBose
                                ? RelationKind::kCommutator
                                : RelationKind::kAnticommutator;
  return check_relations(
      rep, probes, kind, tol, swapped,
      [&](const Vector& g) { return swapped(g).adjoint(); },
      [](const Vector& f, const Vector& g) { return f.dot(g); });
}

PairingReport check_adjoint_pairing(const FieldOperatorPair& pair,
                                    const GradedOperator& gamma_eta,
                                    Eigen::Index domain_end, int samples, Sampler& sampler,
                                    double tol) {
  const SectorBasis& b = pair.annihilator.domain();
  if (!gamma_eta.domain().same_space(b) || !pair.creator_dagger.domain().same_space(b)) {
    throw Error(ErrorKind::kBasisMismatch, "pairing operands on different bases");
  }
  const Eigen::Index size = b.size();
  if (domain_end < 0 || domain_end > size) {
    throw Error(ErrorKind::kDimensionMismatch, "pairing domain outside the basis");
  }
  const Matrix& g = gamma_eta.matrix();
  PairingReport report;
  report.samples = samples;
  for (int s = 0; s < samples && domain_end > 0; ++s) {
    Vector v = Vector::Zero(size);
    Vector w = Vector::Zero(size);
    v.head(domain_end) = sampler.unit_vector(domain_end);
    w.head(domain_end) = sampler.unit_vector(domain_end);
    Complex lhs = (pair.creator_dagger.matrix() * v).dot(g * w);
    Complex rhs = v.dot(g * (pair.annihilator.matrix() * w));
    report.residual = std::max(report.residual, std::abs(lhs - rhs));
  }
  report.passed = report.residual <= tol;
  return report;
}

bool check_vacuum(const FieldOperatorPair& pair) {
  const Matrix& a = pair.annihilator.matrix();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (a(i, 0) != Complex(0.0)) return false;
  return true;
}

CyclicityReport check_cyclicity(const FockRepresentation& rep, std::size_t max_monomials) {
  const int d = rep.modes();
  const int top = rep.basis()->top_sector();
  std::size_t count = 0;
  std::size_t layer = 1;
  for (int k = 0; k <= top; ++k) {
    count += layer;
    if (count > max_monomials) {
      throw Error(ErrorKind::kSizeOverflow, "too many creator monomials");
    }
    layer *= static_cast<std::size_t>(d);
  }
  std::vector<Matrix> creators;
  for (int k = 0; k < d; ++k) creators.push_back(rep.creator_dagger(rep.mode(k)).matrix());

  const Eigen::Index size = rep.basis()->size();
  Matrix span(size, static_cast<Eigen::Index>(count));
  Eigen::Index column = 0;
  // Breadth-first: words of length k+1 are a^dag(e_i) applied to words of length k.
  std::vector<Vector> frontier{rep.vacuum()};
  span.col(column++) = frontier.front();
  for (int k = 1; k <= top; ++k) {
    std::vector<Vector> next;
    next.reserve(frontier.size() * d);
    for (const Vector& v : frontier)
      for (const Matrix& c : creators) next.push_back(c * v);
    for (const Vector& v : next) span.col(column++) = v;
    frontier = std::move(next);
  }
  Eigen::JacobiSVD<Matrix> svd(span);
  CyclicityReport report;
  report.basis_size = size;
  report.monomials = count;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-8) ++report.rank;
  report.full_rank = report.rank == size;
  return report;
}

DaggerReport check_dagger_identities(const FockRepresentation& rep,
                                     const std::vector<Probe>& probes, int pairs,
                                     Sampler& sampler) {
  DaggerReport report;
  report.pairs = pairs;
  const Matrix& eta = rep.triplet().eta();
  for (const Probe& probe : probes) {
    for (const Vector* f : {&probe.f, &probe.g}) {
      Matrix lhs = rep.creator_dagger(*f).matrix();
      Matrix rhs = rep.creator_star(eta * *f).matrix();
      report.creator_identity = std::max(report.creator_identity, max_abs(Matrix(lhs - rhs)));
    }
  }

  const int d = rep.modes();
  std::vector<GradedOperator> generators;
  for (int k = 0; k < d; ++k) {
    generators.push_back(rep.annihilator(rep.mode(k)));
    generators.push_back(rep.creator_dagger(rep.mode(k)));
  }
  auto pick = [&]() -> const GradedOperator& {
    auto i = static_cast<std::size_t>(sampler.uniform(0.0, 1.0) * generators.size());
    return generators[std::min(i, generators.size() - 1)];
  };
  // c1 g1 + c2 g2 g3: mixed-grade elements of the generated algebra.
  auto random_element = [&]() {
    Complex c1 = sampler.complex_normal();
    const GradedOperator& g1 = pick();
    Complex c2 = sampler.complex_normal();
    const GradedOperator& g2 = pick();
    const GradedOperator& g3 = pick();
    return c1 * g1 + c2 * (g2 * g3);
  };
  const GradedOperator& gamma = rep.gamma_eta();
  const GradedOperator plain = GradedOperator::identity(rep.basis());
  for (int p = 0; p < pairs; ++p) {
    GradedOperator x = random_element();
    GradedOperator y = random_element();
    report.involutive =
        std::max(report.involutive, max_abs(Matrix(dagger(dagger(x, gamma), gamma).matrix() -
                                                   x.matrix())));
    Matrix lhs = dagger(x * y, gamma).matrix();
    Matrix rhs = (dagger(y, gamma) * dagger(x, gamma)).matrix();
    report.antimultiplicative = std::max(report.antimultiplicative, max_abs(Matrix(lhs - rhs)));
    report.eta_identity_adjoint =
        std::max(report.eta_identity_adjoint,
                 max_abs(Matrix(dagger(x, plain).matrix() - x.matrix().adjoint())));
  }
  return report;
}

double restricted_norm(const Matrix& m, Eigen::Index begin, Eigen::Index end) {
  if (end <= begin) return 0.0;
  Matrix cols = m.middleCols(begin, end - begin);
  if (max_abs(cols) == 0.0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(cols);
  return svd.singularValues()(0);
}

}  // namespace kreinfock
