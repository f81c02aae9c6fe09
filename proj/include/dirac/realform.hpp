#pragma once

// Equal-rank real forms from a painted Dynkin diagram: compact and
// noncompact roots, the positive system of k, W^1 and the rho_n^(j), the
// K-type lattice, and the restricted root system of a diagram with complex
// pairs.
//
// k-fundamental coordinates of a weight mu are the pairings
// <mu, gamma_i^vee> with the simple roots of Delta^+(k), in the configured
// order. When k has smaller semisimple rank than g (sl(2,R), for instance)
// the list is completed by g-fundamental coordinates for the central
// directions so the coordinate change stays invertible.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirac/rootsys.hpp"

namespace dirac {

struct VoganDiagram {
  RootSystemPtr system;
  /// Per simple root, true when painted (noncompact imaginary).
  std::vector<bool> noncompact;
  /// Diagram involution on simple-root indices; empty for equal rank.
  std::vector<int> pairing;

  bool equal_rank() const;
};

/// Configuration of one supported group. Indices here are 0-based; the
/// JSON file uses 1-based simple-root labels.
struct GroupPreset {
  std::string name;
  std::string description;
  char family = 'A';
  int rank = 1;
  Realization realization = Realization::Bourbaki;
  std::vector<int> noncompact;
  /// Simple roots of Delta^+(k) in the order of the k-fundamental
  /// coordinates, as simple-root coefficient vectors. Empty: use the
  /// computed indecomposables in root order.
  std::vector<IntVec> k_simple;
  /// mu is a K-type iff sum_i parity[i] * mu_i is even (k-fundamental mu).
  IntVec ktype_parity;
  /// Highest weight of p, k-fundamental coordinates.
  IntVec pencil_beta;
  /// Pairs (i, j) with Lambda_i + Lambda_j > 0 required by the candidate
  /// filter.
  std::vector<std::pair<int, int>> lemma_pairs;
  /// Diagram automorphism used to fold table rows (permutation of
  /// g-fundamental coordinates); empty when none.
  std::vector<int> fold;
  /// Expected table statistics: number of records and the sorted |nu|^2
  /// values, when known.
  std::optional<std::size_t> scattered_count;
  std::vector<Rational> nu_norm_sq;
};

/// Presets shipped with the library (e6_2, f4_split, sl2r).
const std::map<std::string, GroupPreset>& builtin_presets();
/// Parses the preset JSON format; throws DomainError with the offending
/// key on malformed input.
std::map<std::string, GroupPreset> parse_presets(std::string_view json_text);
std::map<std::string, GroupPreset> load_presets(const std::filesystem::path& path);
/// The builtin preset file contents, as shipped in data/presets.json.
std::string_view builtin_presets_json();

class RealFormData;
using RealFormPtr = std::shared_ptr<const RealFormData>;

class RealFormData {
 public:
  /// Rejects diagrams with complex pairs.
  static RealFormPtr build(const VoganDiagram& diagram, const GroupPreset& preset = {});
  static RealFormPtr build(const GroupPreset& preset);

  const RootSystem& system() const { return *diagram_.system; }
  const RootSystemPtr& system_ptr() const { return diagram_.system; }
  const VoganDiagram& diagram() const { return diagram_; }
  const GroupPreset& preset() const { return preset_; }

  /// Indices into system().roots().
  const std::vector<int>& compact_roots() const { return compact_; }
  const std::vector<int>& noncompact_roots() const { return noncompact_; }
  bool is_compact(std::size_t root_index) const { return compact_flag_[root_index]; }
  /// Delta^+(k) = Delta(k) ∩ Delta^+(g).
  const RootSubsystem& k() const { return k_; }

  /// g-fundamental coordinates.
  QVec rho() const { return system().rho(); }
  const QVec& rho_k() const { return k_.rho(); }

  QVec to_kfund(const QVec& gfund_coords) const;
  QVec from_kfund(const QVec& kfund_coords) const;
  /// Columns are the k-fundamental weights in g-fundamental coordinates.
  const QMatrix& kfund_to_gfund() const { return from_k_; }
  const QMatrix& gfund_to_kfund() const { return to_k_; }
  /// Any basis to g-fundamental coordinates, KFund included.
  QVec to_gfund(const Weight& w) const;
  Weight convert(const Weight& w, Basis target) const;

  /// W^1 in canonical order: (length, lexicographic word).
  const std::vector<WeylElement>& w1() const { return w1_; }
  /// rho_n^(j) = w^(j) rho - rho_K, g-fundamental coordinates.
  const std::vector<QVec>& rho_n() const { return rho_n_; }
  std::optional<std::size_t> rho_n_index(const QVec& gfund_coords) const;

  /// |W(k)| = |W(g)| / #W^1.
  std::uint64_t k_weyl_order() const { return system().weyl_order() / w1_.size(); }
  /// W(k) as a group table on g-fundamental coordinates (lazy).
  const WeylGroupTable& k_weyl_table() const;

  /// Number of k-fundamental coordinates tied to k-simple roots; the rest
  /// are central.
  std::size_t k_semisimple_rank() const { return k_.rank(); }

  bool k_dominant_kfund(const QVec& kfund_coords) const;

 private:
  RealFormData() = default;

  VoganDiagram diagram_;
  GroupPreset preset_;
  std::vector<int> compact_;
  std::vector<int> noncompact_;
  std::vector<char> compact_flag_;
  RootSubsystem k_;
  QMatrix to_k_;
  QMatrix from_k_;
  std::vector<WeylElement> w1_;
  std::vector<QVec> rho_n_;

  mutable std::once_flag k_table_once_;
  mutable std::unique_ptr<WeylGroupTable> k_table_;
};

/// Compactness from the painting: a root sum c_i alpha_i is compact iff the
/// c_i over painted i add up to an even number.
bool painted_compact(const IntVec& coeffs, const std::vector<bool>& noncompact);

const std::vector<WeylElement>& coset_reps_W1(const RealFormData& rf);
/// rho_n^(j) in k-fundamental coordinates, canonical W^1 order.
std::vector<Weight> rho_n_list(const RealFormData& rf);

/// mu in k-fundamental coordinates. Throws DomainError unless mu is
/// integral; false for non-dominant mu or the wrong parity.
bool ktype_test(const Weight& mu, const RealFormData& rf);
/// Same test without the integrality precondition (false instead).
bool is_ktype(const QVec& kfund_coords, const RealFormData& rf);

/// -w_0^k mu, returned in the basis of mu.
Weight contragredient(const Weight& mu, const RealFormData& rf);

Weight basis_change(const Weight& mu, Basis target, const RealFormData& rf);

struct RestrictedRootData {
  RootSystemPtr system;
  std::vector<int> sigma;     ///< diagram involution (identity on fixed nodes)
  IntMatrix theta;            ///< theta on g-fundamental coordinates
  std::vector<QVec> restriction;  ///< alpha-bar for every root, roots() order
  std::vector<QVec> roots;        ///< distinct restricted roots
  std::vector<QVec> reduced;      ///< restricted roots whose double is not one
  /// Coroots: alpha_i^vee for fixed nodes, gamma^vee + theta(gamma^vee) for
  /// each pair; as coefficient vectors on g-fundamental coordinates.
  std::vector<IntVec> coroots;
  /// Dual list: zeta_i for fixed nodes, (zeta_j + zeta_sigma(j)) / 2 for
  /// pairs; g-fundamental coordinates.
  std::vector<QVec> fundamental;
};

/// Throws DomainError if the pairing is not an involutive diagram
/// automorphism. An empty pairing means the identity.
RestrictedRootData restricted_system(const VoganDiagram& diagram);
/// mu in g-fundamental coordinates and theta-fixed (throws otherwise).
bool restricted_integral(const Weight& mu, const RestrictedRootData& rrd);

}  // namespace dirac
