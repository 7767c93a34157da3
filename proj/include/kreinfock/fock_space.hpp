#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kreinfock/error.hpp"
#include "kreinfock/linalg.hpp"

namespace kreinfock {

enum class Statistics { kFull, kBose, kFermi };

std::string to_string(Statistics s);
std::optional<Statistics> parse_statistics(const std::string& name);

inline constexpr std::size_t kDefaultSizeCap = 1'000'000;

// Modes are 0-based. A label is
//   full:  the tensor word (i_1, ..., i_n)
//   bose:  the occupation vector (n_0, ..., n_{d-1})
//   fermi: the strictly increasing subset (i_1 < ... < i_n)
using Label = std::vector<int>;

/// Basis of a particle-number-truncated full, Bose or Fermi Fock space,
/// grouped into sectors n = 0..top_sector(). Sector 0 holds only the vacuum.
class SectorBasis {
 public:
  Statistics statistics() const { return statistics_; }
  int modes() const { return modes_; }
  /// Requested cutoff N.
  int cutoff() const { return cutoff_; }
  /// Highest sector actually present; min(N, d) for fermi.
  int top_sector() const { return top_sector_; }
  /// False only for a Fermi space that already contains every sector.
  bool is_truncated() const;

  Eigen::Index size() const { return static_cast<Eigen::Index>(labels_.size()); }
  Eigen::Index sector_begin(int n) const { return offsets_.at(n); }
  Eigen::Index sector_end(int n) const { return offsets_.at(n + 1); }
  Eigen::Index sector_size(int n) const { return sector_end(n) - sector_begin(n); }
  int sector_of(Eigen::Index index) const { return sector_of_.at(index); }

  const Label& label(Eigen::Index index) const { return labels_.at(index); }
  const std::vector<Label>& labels() const { return labels_; }
  std::optional<Eigen::Index> index_of(const Label& label) const;

  /// Nondecreasing mode word of a label: the word itself for full, the sorted
  /// multiset for bose, the subset for fermi.
  std::vector<int> mode_word(Eigen::Index index) const;

  std::string describe() const;

  bool same_space(const SectorBasis& other) const {
    return statistics_ == other.statistics_ && modes_ == other.modes_ &&
           cutoff_ == other.cutoff_;
  }

  friend std::shared_ptr<const SectorBasis> enumerate_basis(Statistics, int, int,
                                                            std::size_t);

 private:
  SectorBasis() = default;

  Statistics statistics_ = Statistics::kFull;
  int modes_ = 0;
  int cutoff_ = 0;
  int top_sector_ = 0;
  std::vector<Label> labels_;
  std::vector<Eigen::Index> offsets_;
  std::vector<int> sector_of_;
  std::map<Label, Eigen::Index> index_;
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

/// Throws kBadParams for d < 1 or N < 0 and kSizeOverflow when the number of
/// labels exceeds cap.
BasisPtr enumerate_basis(Statistics statistics, int modes, int cutoff,
                         std::size_t cap = kDefaultSizeCap);

/// Throws kSizeOverflow when rows * cols exceeds cap.
void check_matrix_size(Eigen::Index rows, Eigen::Index cols,
                       std::size_t cap = kDefaultSizeCap);

/// Dense operator between two sector bases. When grade_shift is set, every
/// entry mapping sector n into a sector other than n + shift is zero; operators
/// without a definite grade (sums of mixed words, random test operators) leave
/// it empty.
class GradedOperator {
 public:
  GradedOperator(BasisPtr domain, BasisPtr codomain, Matrix matrix,
                 std::optional<int> grade_shift);

  static GradedOperator identity(BasisPtr basis);
  static GradedOperator zero(BasisPtr domain, BasisPtr codomain,
                             std::optional<int> grade_shift);

  const SectorBasis& domain() const { return *domain_; }
  const SectorBasis& codomain() const { return *codomain_; }
  const BasisPtr& domain_ptr() const { return domain_; }
  const BasisPtr& codomain_ptr() const { return codomain_; }
  const Matrix& matrix() const { return matrix_; }
  std::optional<int> grade_shift() const { return grade_shift_; }

  /// Block mapping sector `from` of the domain into sector `to` of the codomain.
  Matrix block(int to, int from) const;

  /// Conjugate transpose with respect to <.|.>.
  GradedOperator adjoint() const;

  GradedOperator operator*(const GradedOperator& rhs) const;
  GradedOperator operator+(const GradedOperator& rhs) const;
  GradedOperator operator-(const GradedOperator& rhs) const;
  GradedOperator operator*(Complex scalar) const;

  Vector apply(const Vector& v) const;

 private:
  void require_same_spaces(const GradedOperator& rhs, const char* what) const;

  BasisPtr domain_;
  BasisPtr codomain_;
  Matrix matrix_;
  std::optional<int> grade_shift_;
};

inline GradedOperator operator*(Complex scalar, const GradedOperator& op) {
  return op * scalar;
}

/// P+ restricted to the n-particle full sector (C^d)^{(x)n}, words indexed
/// lexicographically with the first tensor factor most significant.
Matrix symmetrizer(int modes, int n, std::size_t cap = kDefaultSizeCap);
/// P- on the same sector; the zero matrix when n > d.
Matrix antisymmetrizer(int modes, int n, std::size_t cap = kDefaultSizeCap);

/// Block-diagonal P+ (kBose) or P- (kFermi) on a full Fock basis.
GradedOperator fock_projection(const BasisPtr& full_basis, Statistics target);

/// Columns are the normalized (anti)symmetrized vectors of basis_pm written in
/// the full Fock basis. Throws kBasisMismatch for incompatible bases.
Matrix embed_symmetric(const SectorBasis& basis_pm, const SectorBasis& basis_full);

/// Gamma(U) = I + U + U^{(x)2} + ... truncated at the cutoff. Bose and Fermi
/// blocks are compressions of U^{(x)n} through embed_symmetric. Throws
/// kNotUnitary when U*U deviates from I by more than tol.
GradedOperator second_quantization(const Matrix& unitary, const BasisPtr& basis,
                                   double tol = kDefaultMetricTol);

/// max-entry norm of P Gamma - Gamma P. Throws kBasisMismatch unless both live
/// on the same full Fock basis.
double check_projection_commutation(const GradedOperator& gamma_eta,
                                    const GradedOperator& projection);

}  // namespace kreinfock
