#pragma once

// Structure constants n_{ij}^k of the hypergroup of origin-centred conic
// classes: the probability that a uniform step from class i followed by a
// uniform step from class j lands in class k.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conicwalk/conic_geometry.hpp"
#include "conicwalk/rational.hpp"

namespace conicwalk {

enum class TableSource {
  ClosedForm,  ///< derived formulas, agreeing with the oracle
  Oracle,      ///< exhaustive enumeration of step pairs
  AsStated,    ///< the reference case analysis taken literally (diagnostic)
};

std::string_view source_name(TableSource source) noexcept;

/// Dense |I|^3 table of exact constants over a ClassScheme.
class StructureTable {
 public:
  StructureTable(ConicParams params, ClassScheme scheme, TableSource source,
                 std::vector<std::int64_t> class_sizes, std::vector<Rational> entries);

  const ConicParams& params() const noexcept { return params_; }
  const ClassScheme& scheme() const noexcept { return scheme_; }
  TableSource source() const noexcept { return source_; }
  std::size_t size() const noexcept { return n_; }
  const std::vector<std::int64_t>& class_sizes() const noexcept { return sizes_; }

  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const {
    return entries_[(i * n_ + j) * n_ + k];
  }
  const Rational& at(const ClassIndex& i, const ClassIndex& j, const ClassIndex& k) const;
  /// n_{ij}^k for all k.
  std::span<const Rational> row(std::size_t i, std::size_t j) const {
    return {entries_.data() + (i * n_ + j) * n_, n_};
  }

 private:
  ConicParams params_;
  ClassScheme scheme_;
  TableSource source_;
  std::size_t n_;
  std::vector<std::int64_t> sizes_;
  std::vector<Rational> entries_;
};

/// Counts N_{ij}^k = #{(u, v) : u in C_i, v in C_j, u + v in C_k} over all
/// q^4 point pairs and normalizes by N_i N_j. Throws CapExceeded above cap.
StructureTable oracle_table(const ConicParams& params, NullCircle mode = NullCircle::Split,
                            std::uint32_t cap = kDefaultOracleCap);

/// Closed-form n_{ij}^k over the split index set. Throws IndexInvalid for
/// labels outside it.
Rational structure_constant(const ClassIndex& i, const ClassIndex& j, const ClassIndex& k,
                            const ConicParams& params);

/// The reference case analysis read literally: discriminant ij - (i-j-k)^2/4
/// and the isotropic-by-finite row 1/(q-1) for every k != j. Its rows need
/// not sum to one.
Rational structure_constant_as_stated(const ClassIndex& i, const ClassIndex& j,
                                      const ClassIndex& k, const ConicParams& params);

/// Materializes a full table. ClosedForm with NullCircle::Unsplit merges the
/// origin and isotropic classes of the split closed form; AsStated exists
/// only for the split index set.
StructureTable build_table(const ConicParams& params, TableSource source,
                           NullCircle mode = NullCircle::Split,
                           std::uint32_t oracle_cap = kDefaultOracleCap);

/// Collapses the origin and isotropic classes of a split table into one
/// null-cone class, recombining pair counts.
StructureTable merge_null_circle(const StructureTable& split);

struct TableMismatch {
  std::size_t i, j, k;
  Rational lhs, rhs;
};

/// Entry-wise differences; throws IndexMismatch if the index sets differ.
std::vector<TableMismatch> compare_tables(const StructureTable& lhs, const StructureTable& rhs);

struct AxiomViolation {
  std::size_t i, j;
  std::optional<std::size_t> k;  // absent for whole-row failures
};

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::vector<AxiomViolation> violations;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;

  bool all_passed() const;
  /// Throws InvalidArgument for an unknown check name.
  const AxiomCheck& check(std::string_view name) const;
};

/// Checks, in order: positivity, normalization (exact row sums of one),
/// hermitian (n_{ij}^0 > 0 iff i = j), commutativity, identity (class 0 row
/// is the Kronecker delta).
AxiomReport verify_axioms(const StructureTable& table);

/// Some k with n_{i,step}^k > 0 and n_{k,step}^j > 0 (first in canonical
/// order), or nullopt. Throws InvalidArgument if i or j is the origin.
std::optional<ClassIndex> two_step_support(const ClassIndex& i, const ClassIndex& j,
                                           const StructureTable& table,
                                           const ClassIndex& step = ClassIndex::finite_code(1));

/// One discrepancy between a reference statement and enumeration.
struct Erratum {
  std::string location;
  std::string paper_value;
  std::string oracle_value;
};

/// Compares the as-stated constants and discriminant against the oracle.
std::vector<Erratum> structure_errata(const ConicParams& params,
                                      std::uint32_t cap = kDefaultOracleCap);

}  // namespace conicwalk
