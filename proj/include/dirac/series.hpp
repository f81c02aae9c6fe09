#pragma once

// Candidate infinitesimal characters for the Dirac series: the coordinate
// filter, the binary sets Omega(S), the enumeration of Phi and the string
// count.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dirac/realform.hpp"

namespace dirac {

struct InfCharCandidate {
  IntVec coords;  ///< g-fundamental, nonnegative
  /// Bit i set when simple root i (0-based) is in the declared support.
  std::uint32_t support = 0;
  bool lemma_pass = false;
  bool norm_pass = false;
  bool hp_pass = false;
};

/// The positivity constraints on pairs of coordinates configured for the
/// group (lemma_pairs, 1-based). For E6(2): a+c, b+d, c+d, d+e, e+f > 0.
bool lemma_filter(const IntVec& coords, const RealFormData& rf);

/// Binary on S, 1 off S, passing lemma_filter and hp_check; lexicographic
/// order. `support` holds 0-based indices. With `require_zero` only vectors
/// with some coordinate 0 are kept.
std::vector<InfCharCandidate> omega_set(const std::vector<int>& support, const RealFormData& rf,
                                        bool require_zero = false);

/// Involutions of W whose reduced words involve every simple reflection.
std::vector<WeylElement> full_support_involutions(const RootSystem& system);

struct PhiOptions {
  /// |2 rho|^2 when absent.
  std::optional<Rational> norm_bound;
  /// Per-coordinate caps; derived from the involutions when absent.
  std::optional<std::vector<std::int64_t>> caps;
  /// 0 means hardware concurrency.
  unsigned threads = 0;
  /// Evaluate hp_check on every member (slower).
  bool with_hp = false;
};

struct PhiResult {
  std::vector<InfCharCandidate> members;  ///< lexicographic order
  std::vector<std::int64_t> caps;
  std::uint64_t scanned = 0;
  /// Set when a member reaches a supplied cap, which may then be too small.
  std::vector<std::string> warnings;
};

/// Largest value of coordinate i alone with |Lambda - w Lambda|^2 <= bound
/// for some w in `involutions`. Throws DomainError when some coordinate is
/// unbounded (an involution fixing zeta_i).
std::vector<std::int64_t> phi_caps(const RealFormData& rf, const std::vector<WeylElement>& involutions,
                                   const Rational& bound);

/// Nonnegative integral Lambda with min coordinate 0 that pass lemma_filter
/// and satisfy |Lambda - w Lambda|^2 <= bound for at least one supplied w.
PhiResult enumerate_phi(const RealFormData& rf, const std::vector<WeylElement>& involutions,
                        const PhiOptions& options = {});

/// N(S) per support subset, 0-based indices sorted ascending. A level
/// total N_i may be given instead of its per-subset breakdown.
class CountTable {
 public:
  explicit CountTable(int rank = 6) : rank_(rank) {}

  int rank() const { return rank_; }
  /// Throws DomainError for an index outside [0, rank) or a repeated one.
  void set(std::vector<int> support, std::uint64_t count);
  const std::map<std::vector<int>, std::uint64_t>& entries() const { return entries_; }
  /// Throws DomainError when level i already has per-subset entries or
  /// i is not in [0, rank).
  void set_level(int size, std::uint64_t count);
  const std::map<int, std::uint64_t>& levels() const { return levels_; }

  /// TSV with a header line "support\tcount"; support is comma-joined,
  /// "-" for the empty set, or "#i" for a level total.
  static CountTable read_tsv(std::istream& in, int rank);
  void write_tsv(std::ostream& out) const;

 private:
  int rank_;
  std::map<std::vector<int>, std::uint64_t> entries_;
  std::map<int, std::uint64_t> levels_;
};

struct StringCount {
  std::vector<std::uint64_t> N;  ///< N_0 .. N_{rank-1}
  std::uint64_t total = 0;
};

/// N_i = sum over #S = i of N(S) (or the level total), for proper subsets
/// S; total = sum N_i.
StringCount count_strings(const CountTable& table);

std::string format_candidate_tsv(const InfCharCandidate& c);

}  // namespace dirac
