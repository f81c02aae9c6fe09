#pragma once

// Representation tables: the TSV record format, fold expansion and the
// validation report.
//
// File format (UTF-8, tab separated, one header line):
//   table  x  flags  lambda  nu  infchar  spin_lkts  fold
// Vectors are comma lists of rationals ("1,-2,7/2"), spin LKTs are
// k-fundamental and separated by ';', flags is a comma list of "star" and
// "club", and fold names the partner's x with a trailing '*' when the
// partner is starred. Empty fields are written "-".

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirac/realform.hpp"

namespace dirac {

struct RepRecord {
  std::string table;
  std::optional<long> x;
  bool star = false;  ///< Dirac index cancellation
  bool club = false;  ///< special unipotent
  QVec lambda;        ///< g-fundamental
  QVec nu;
  QVec infchar;
  std::vector<IntVec> spin_lkts;  ///< k-fundamental
  std::optional<long> fold_x;
  bool fold_star = false;
  /// Produced by fold expansion rather than read from a row.
  bool folded = false;

  /// "table/x", "table/-" without a label.
  std::string id() const;
  friend bool operator==(const RepRecord&, const RepRecord&) = default;
};

class TableParseError : public DomainError {
 public:
  TableParseError(std::size_t line, std::string column, const std::string& what);
  std::size_t line() const { return line_; }
  const std::string& column() const { return column_; }

 private:
  std::size_t line_;
  std::string column_;
};

/// Rows as written, without fold expansion. Throws TableParseError.
std::vector<RepRecord> parse_tables(std::istream& in);
/// Writes the rows that were not produced by fold expansion.
void write_tables(std::ostream& out, const std::vector<RepRecord>& records);

/// The partner of a folded row: lambda, nu and the infinitesimal character
/// permuted by the diagram automorphism, spin LKTs replaced by their
/// contragredients. Requires r.fold_x and a configured fold.
RepRecord fold_partner(const RepRecord& r, const RealFormData& rf);
/// Each row followed by its fold partner, when it has one.
std::vector<RepRecord> expand_folds(const std::vector<RepRecord>& rows, const RealFormData& rf);
/// parse_tables then expand_folds.
std::vector<RepRecord> ingest_tables(const std::string& path, const RealFormData& rf);

struct CheckResult {
  std::string record_id;  ///< "*" for checks over the whole set
  std::string check;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> results;
  std::size_t records = 0;

  bool ok() const;
  std::size_t failures() const;
  void write_json(std::ostream& out) const;
  void write_tsv(std::ostream& out) const;
};

/// There is a Weyl involution w with w nu = -nu whose (lambda + w lambda)/2
/// + nu is W-conjugate to the infinitesimal character.
bool infchar_consistent(const RepRecord& r, const RealFormData& rf);

/// Per record: spin-norm equality, K-type parity, u-smallness, the
/// candidate filter, the HP condition, the infinitesimal character and
/// fold consistency, and the Dirac index parity (cancelling exactly for
/// starred records).
/// Globally: the |nu|^2 multiset and the record count against the preset.
/// Records are checked concurrently; the report order is the input order.
ValidationReport validate(const std::vector<RepRecord>& records, const RealFormData& rf, unsigned threads = 0);

}  // namespace dirac
