#include "kreinfock/fock_space.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kreinfock {
namespace {

// Words of length n over {0..d-1}: all of them (full), nondecreasing (bose)
// or strictly increasing (fermi), in lexicographic order.
void enumerate_words(Statistics statistics, int modes, int n, std::vector<int>& current,
                     std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == n) {
    out.push_back(current);
    return;
  }
  int first = 0;
  if (!current.empty()) {
    if (statistics == Statistics::kBose) first = current.back();
    if (statistics == Statistics::kFermi) first = current.back() + 1;
  }
  for (int k = first; k < modes; ++k) {
    current.push_back(k);
    enumerate_words(statistics, modes, n, current, out);
    current.pop_back();
  }
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t sector_count(Statistics statistics, int modes, int n) {
  const auto d = static_cast<std::size_t>(modes);
  const auto m = static_cast<std::size_t>(n);
  switch (statistics) {
    case Statistics::kFull: {
      std::size_t r = 1;
      for (int i = 0; i < n; ++i) {
        if (r > (std::size_t{1} << 62) / d) return std::size_t{1} << 62;
        r *= d;
      }
      return r;
    }
    case Statistics::kBose: return binomial(d + m - 1, m);
    case Statistics::kFermi: return binomial(d, m);
  }
  return 0;
}

// Index of a word inside the full n-particle sector: base-d with the first
// factor most significant.
Eigen::Index word_index(const std::vector<int>& word, int modes) {
  Eigen::Index idx = 0;
  for (int k : word) idx = idx * modes + k;
  return idx;
}

Eigen::Index power(int base, int exponent) {
  Eigen::Index r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// (n!)^{-1} sum_sigma [sgn(sigma)] e_{w(sigma(1))} (x) ... (x) e_{w(sigma(n))},
// written as a vector in the full n-particle sector.
Vector symmetrize_word(const std::vector<int>& word, int modes, bool antisymmetric) {
  const int n = static_cast<int>(word.size());
  Vector out = Vector::Zero(power(modes, n));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const double weight = 1.0 / factorial(n);
  std::vector<int> permuted(n);
  do {
    for (int i = 0; i < n; ++i) permuted[i] = word[perm[i]];
    double sign = antisymmetric ? permutation_sign(perm) : 1.0;
    out(word_index(permuted, modes)) += sign * weight;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Matrix sector_projection(int modes, int n, bool antisymmetric, std::size_t cap) {
  if (modes < 1 || n < 0) throw Error(ErrorKind::kBadParams, "projection needs d >= 1, n >= 0");
  const Eigen::Index dim = power(modes, n);
  check_matrix_size(dim, dim, cap);
  Matrix p = Matrix::Zero(dim, dim);
  std::vector<std::vector<int>> words;
  std::vector<int> current;
  enumerate_words(Statistics::kFull, modes, n, current, words);
  for (const auto& word : words) {
    p.col(word_index(word, modes)) = symmetrize_word(word, modes, antisymmetric);
  }
  return p;
}

// U^{(x)n} in the lexicographic word basis.
Matrix tensor_power(const Matrix& u, int n) {
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    Matrix next(out.rows() * u.rows(), out.cols() * u.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block(i * u.rows(), j * u.cols(), u.rows(), u.cols()) = out(i, j) * u;
    out = std::move(next);
  }
  return out;
}

void check_grade(const GradedOperator& op) {
  if (!op.grade_shift()) return;
  const int shift = *op.grade_shift();
  const Matrix& m = op.matrix();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const int target = op.domain().sector_of(j) + shift;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (op.codomain().sector_of(i) != target && m(i, j) != Complex(0.0)) {
        throw Error(ErrorKind::kBasisMismatch, "entry violates grade shift " +
                                                   std::to_string(shift));
      }
    }
  }
}

}  // namespace

std::string to_string(Statistics s) {
  switch (s) {
    case Statistics::kFull: return "full";
    case Statistics::kBose: return "bose";
    case Statistics::kFermi: return "fermi";
  }
  return "unknown";
}

std::optional<Statistics> parse_statistics(const std::string& name) {
  if (name == "full") return Statistics::kFull;
  if (name == "bose") return Statistics::kBose;
  if (name == "fermi") return Statistics::kFermi;
  return std::nullopt;
}

bool SectorBasis::is_truncated() const {
  return !(statistics_ == Statistics::kFermi && top_sector_ == modes_);
}

std::optional<Eigen::Index> SectorBasis::index_of(const Label& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> SectorBasis::mode_word(Eigen::Index index) const {
  const Label& l = label(index);
  if (statistics_ != Statistics::kBose) return l;
  std::vector<int> word;
  for (int k = 0; k < modes_; ++k)
    for (int c = 0; c < l[k]; ++c) word.push_back(k);
  return word;
}

std::string SectorBasis::describe() const {
  std::ostringstream os;
  os << to_string(statistics_) << "(d=" << modes_ << ", N=" << cutoff_ << ", size=" << size()
     << ")";
  return os.str();
}

BasisPtr enumerate_basis(Statistics statistics, int modes, int cutoff, std::size_t cap) {
  if (modes < 1) throw Error(ErrorKind::kBadParams, "basis needs at least one mode");
  if (cutoff < 0) throw Error(ErrorKind::kBadParams, "negative cutoff");
  const int top = statistics == Statistics::kFermi ? std::min(cutoff, modes) : cutoff;

  std::size_t total = 0;
  for (int n = 0; n <= top; ++n) {
    total += sector_count(statistics, modes, n);
    if (total > cap) {
      throw Error(ErrorKind::kSizeOverflow, to_string(statistics) + " basis with d=" +
                                                std::to_string(modes) + ", N=" +
                                                std::to_string(cutoff) + " exceeds cap");
    }
  }

  std::shared_ptr<SectorBasis> basis(new SectorBasis());
  basis->statistics_ = statistics;
  basis->modes_ = modes;
  basis->cutoff_ = cutoff;
  basis->top_sector_ = top;
  basis->labels_.reserve(total);
  basis->offsets_.push_back(0);
  for (int n = 0; n <= top; ++n) {
    std::vector<std::vector<int>> words;
    std::vector<int> current;
    enumerate_words(statistics, modes, n, current, words);
    for (const auto& word : words) {
      Label label = word;
      if (statistics == Statistics::kBose) {
        label.assign(modes, 0);
        for (int k : word) ++label[k];
      }
      basis->index_.emplace(label, static_cast<Eigen::Index>(basis->labels_.size()));
      basis->labels_.push_back(std::move(label));
      basis->sector_of_.push_back(n);
    }
    basis->offsets_.push_back(static_cast<Eigen::Index>(basis->labels_.size()));
  }
  return basis;
}

void check_matrix_size(Eigen::Index rows, Eigen::Index cols, std::size_t cap) {
  if (rows < 0 || cols < 0 ||
      static_cast<double>(rows) * static_cast<double>(cols) > static_cast<double>(cap)) {
    throw Error(ErrorKind::kSizeOverflow, std::to_string(rows) + "x" + std::to_string(cols) +
                                              " matrix exceeds cap of " +
                                              std::to_string(cap) + " entries");
  }
}

GradedOperator::GradedOperator(BasisPtr domain, BasisPtr codomain, Matrix matrix,
                               std::optional<int> grade_shift)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      matrix_(std::move(matrix)),
      grade_shift_(grade_shift) {
  if (!domain_ || !codomain_) throw Error(ErrorKind::kBasisMismatch, "null basis");
  if (matrix_.rows() != codomain_->size() || matrix_.cols() != domain_->size()) {
    throw Error(ErrorKind::kDimensionMismatch, "operator matrix does not match its bases");
  }
  check_grade(*this);
}

GradedOperator GradedOperator::identity(BasisPtr basis) {
  const Eigen::Index n = basis->size();
  return GradedOperator(basis, basis, Matrix::Identity(n, n), 0);
}

GradedOperator GradedOperator::zero(BasisPtr domain, BasisPtr codomain,
                                    std::optional<int> grade_shift) {
  Matrix m = Matrix::Zero(codomain->size(), domain->size());
  return GradedOperator(std::move(domain), std::move(codomain), std::move(m), grade_shift);
}

Matrix GradedOperator::block(int to, int from) const {
  return matrix_.block(codomain_->sector_begin(to), domain_->sector_begin(from),
                       codomain_->sector_size(to), domain_->sector_size(from));
}

GradedOperator GradedOperator::adjoint() const {
  std::optional<int> shift;
  if (grade_shift_) shift = -*grade_shift_;
  return GradedOperator(codomain_, domain_, matrix_.adjoint(), shift);
}

void GradedOperator::require_same_spaces(const GradedOperator& rhs, const char* what) const {
  if (!domain_->same_space(*rhs.domain_) || !codomain_->same_space(*rhs.codomain_)) {
    throw Error(ErrorKind::kBasisMismatch, what);
  }
}

GradedOperator GradedOperator::operator*(const GradedOperator& rhs) const {
  if (!domain_->same_space(*rhs.codomain_)) {
    throw Error(ErrorKind::kBasisMismatch, "composition of operators on different bases");
  }
  std::optional<int> shift;
  if (grade_shift_ && rhs.grade_shift_) shift = *grade_shift_ + *rhs.grade_shift_;
  return GradedOperator(rhs.domain_, codomain_, matrix_ * rhs.matrix_, shift);
}

GradedOperator GradedOperator::operator+(const GradedOperator& rhs) const {
  require_same_spaces(rhs, "sum of operators on different bases");
  std::optional<int> shift = grade_shift_ == rhs.grade_shift_ ? grade_shift_ : std::nullopt;
  return GradedOperator(domain_, codomain_, matrix_ + rhs.matrix_, shift);
}

GradedOperator GradedOperator::operator-(const GradedOperator& rhs) const {
  require_same_spaces(rhs, "difference of operators on different bases");
  std::optional<int> shift = grade_shift_ == rhs.grade_shift_ ? grade_shift_ : std::nullopt;
  return GradedOperator(domain_, codomain_, matrix_ - rhs.matrix_, shift);
}

GradedOperator GradedOperator::operator*(Complex scalar) const {
  return GradedOperator(domain_, codomain_, scalar * matrix_, grade_shift_);
}

Vector GradedOperator::apply(const Vector& v) const {
  if (v.size() != domain_->size()) {
    throw Error(ErrorKind::kDimensionMismatch, "vector length does not match domain");
  }
  return matrix_ * v;
}

Matrix symmetrizer(int modes, int n, std::size_t cap) {
  return sector_projection(modes, n, false, cap);
}

Matrix antisymmetrizer(int modes, int n, std::size_t cap) {
  return sector_projection(modes, n, true, cap);
}

GradedOperator fock_projection(const BasisPtr& full_basis, Statistics target) {
  if (full_basis->statistics() != Statistics::kFull || target == Statistics::kFull) {
    throw Error(ErrorKind::kBasisMismatch, "projection needs a full basis and bose/fermi target");
  }
  const Eigen::Index dim = full_basis->size();
  check_matrix_size(dim, dim);
  Matrix p = Matrix::Zero(dim, dim);
  for (int n = 0; n <= full_basis->top_sector(); ++n) {
    const Eigen::Index begin = full_basis->sector_begin(n);
    const Eigen::Index size = full_basis->sector_size(n);
    p.block(begin, begin, size, size) = target == Statistics::kBose
                                            ? symmetrizer(full_basis->modes(), n)
                                            : antisymmetrizer(full_basis->modes(), n);
  }
  return GradedOperator(full_basis, full_basis, std::move(p), 0);
}

Matrix embed_symmetric(const SectorBasis& basis_pm, const SectorBasis& basis_full) {
  if (basis_full.statistics() != Statistics::kFull ||
      basis_pm.statistics() == Statistics::kFull || basis_pm.modes() != basis_full.modes() ||
      basis_pm.top_sector() > basis_full.top_sector()) {
    throw Error(ErrorKind::kBasisMismatch,
                "cannot embed " + basis_pm.describe() + " into " + basis_full.describe());
  }
  check_matrix_size(basis_full.size(), basis_pm.size());
  const bool antisymmetric = basis_pm.statistics() == Statistics::kFermi;
  Matrix v = Matrix::Zero(basis_full.size(), basis_pm.size());
  for (Eigen::Index j = 0; j < basis_pm.size(); ++j) {
    const std::vector<int> word = basis_pm.mode_word(j);
    const int n = static_cast<int>(word.size());
    Vector column = symmetrize_word(word, basis_pm.modes(), antisymmetric);
    column.normalize();
    v.block(basis_full.sector_begin(n), j, column.size(), 1) = column;
  }
  return v;
}

GradedOperator second_quantization(const Matrix& unitary, const BasisPtr& basis, double tol) {
  const int d = basis->modes();
  if (unitary.rows() != d || unitary.cols() != d) {
    throw Error(ErrorKind::kDimensionMismatch, "one-particle operator does not match modes");
  }
  const double defect = max_abs(Matrix(unitary.adjoint() * unitary - Matrix::Identity(d, d)));
  if (defect > tol) {
    throw Error(ErrorKind::kNotUnitary, "U*U - I residual " + std::to_string(defect));
  }
  check_matrix_size(basis->size(), basis->size());

  Matrix gamma = Matrix::Zero(basis->size(), basis->size());
  BasisPtr full;
  Matrix embedding;
  if (basis->statistics() != Statistics::kFull) {
    full = enumerate_basis(Statistics::kFull, d, basis->top_sector());
    embedding = embed_symmetric(*basis, *full);
  }
  for (int n = 0; n <= basis->top_sector(); ++n) {
    check_matrix_size(power(d, n), power(d, n));
    Matrix block = tensor_power(unitary, n);
    if (full) {
      Matrix v = embedding.block(full->sector_begin(n), basis->sector_begin(n),
                                 full->sector_size(n), basis->sector_size(n));
      block = v.adjoint() * block * v;
    }
    gamma.block(basis->sector_begin(n), basis->sector_begin(n), block.rows(), block.cols()) =
        block;
  }
  return GradedOperator(basis, basis, std::move(gamma), 0);
}

double check_projection_commutation(const GradedOperator& gamma_eta,
                                    const GradedOperator& projection) {
  const SectorBasis& b = gamma_eta.domain();
  if (b.statistics() != Statistics::kFull || !b.same_space(gamma_eta.codomain()) ||
      !b.same_space(projection.domain()) || !b.same_space(projection.codomain())) {
    throw Error(ErrorKind::kBasisMismatch, "projection and Gamma on different bases");
  }
  return max_abs(Matrix(projection.matrix() * gamma_eta.matrix() -
                        gamma_eta.matrix() * projection.matrix()));
}

}  // namespace kreinfock
