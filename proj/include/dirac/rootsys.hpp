#pragma once

// Simple root systems, their Weyl groups, dominance and the Weyl dimension
// formula.
//
// Internally every weight is stored in g-fundamental coordinates: the
// coroot pairing <lambda, alpha_i^vee> is then just lambda_i, simple
// reflections are integer matrices, and an integral weight is an integer
// vector.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dirac/linalg.hpp"
#include "dirac/weight.hpp"

namespace dirac {

enum class Realization { Bourbaki, R8E6, KnappF4 };

std::string_view name(Realization r);
/// "bourbaki", "R8-E6", "Knapp-F4" (case-insensitive).
Realization parse_realization(std::string_view text);

struct Root {
  IntVec coeffs;    ///< simple-root coordinates
  IntVec zeta;      ///< g-fundamental coordinates
  IntVec coroot;    ///< the coroot in simple-coroot coordinates
  Rational norm_sq; ///< with respect to the unscaled realization form
  int height = 0;

  bool positive() const { return height > 0; }
};

class RootSystem;

/// An element of W(g). Equality is by action, never by word.
class WeylElement {
 public:
  WeylElement() = default;

  /// Lexicographically least reduced word, 0-based generator indices,
  /// leftmost factor first: w = s_{word[0]} s_{word[1]} ...
  const std::vector<int>& word() const { return word_; }
  /// Action on g-fundamental coordinates (column vectors).
  const IntMatrix& matrix() const { return matrix_; }
  std::size_t length() const { return word_.size(); }
  bool is_identity() const { return word_.empty(); }

  QVec apply(const QVec& v) const { return matrix_ * v; }
  IntVec apply(const IntVec& v) const { return matrix_ * v; }

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.matrix_ == b.matrix_; }

 private:
  friend class RootSystem;
  std::vector<int> word_;
  IntMatrix matrix_;
};

/// "s2s4s5" with 1-based labels; "e" for the empty word.
std::string format_word(const std::vector<int>& word);
/// Inverse of format_word; also accepts "2,4,5". Labels are 1-based.
std::vector<int> parse_word(std::string_view text);

/// A positive system of a reflection subsystem of g (g itself, k, l, l∩k),
/// stored by value so it can be used without the parent system.
class RootSubsystem {
 public:
  /// `positive` are indices into parent.roots(). Simple roots are the
  /// indecomposable members; `simple_order` may fix their order (it must be
  /// a permutation of that set).
  static RootSubsystem from_positive(const RootSystem& parent, std::vector<int> positive,
                                     std::optional<std::vector<int>> simple_order = std::nullopt);

  std::size_t num_positive() const { return positive_.size(); }
  std::size_t rank() const { return simple_.size(); }
  std::span<const int> positive() const { return positive_; }
  std::span<const int> simple() const { return simple_; }
  const Root& positive_root(std::size_t i) const { return positive_roots_[i]; }
  const Root& simple_root(std::size_t i) const { return simple_roots_[i]; }
  /// Half sum of the positive roots (g-fundamental coordinates).
  const QVec& rho() const { return rho_; }

  Rational simple_pairing(const QVec& v, std::size_t i) const { return dot(v, simple_roots_[i].coroot); }
  /// <v, gamma_i^vee> for every simple gamma_i.
  QVec simple_pairings(const QVec& v) const;
  bool is_dominant(const QVec& v) const;
  bool is_regular_dominant(const QVec& v) const;
  bool is_dominant_integral(const QVec& v) const;
  bool contains(int root_index) const;

  QVec reflect(const QVec& v, std::size_t simple_index) const;
  IntMatrix simple_reflection(std::size_t i) const;

  struct Descent {
    QVec dominant;
    /// Simple-reflection indices (into simple()) in the order applied.
    std::vector<int> steps;
  };
  /// Descent walk to the dominant chamber; always reflects in the first
  /// simple root with negative pairing.
  Descent descend(const QVec& v) const;

 private:
  std::vector<int> positive_;
  std::vector<int> simple_;
  std::vector<Root> positive_roots_;
  std::vector<Root> simple_roots_;
  QVec rho_;
  std::size_t dim_ = 0;
};

/// All elements of a finite reflection group generated by a subsystem's
/// simple reflections, acting on g-fundamental coordinates. Elements are in
/// breadth-first order, so lengths (in the subsystem's generators) are
/// nondecreasing and element 0 is the identity.
class WeylGroupTable {
 public:
  static WeylGroupTable generate(const RootSubsystem& frame, std::size_t dim);

  std::size_t size() const { return lengths_.size(); }
  std::size_t dim() const { return dim_; }
  IntMatrix matrix(std::size_t e) const;
  std::uint32_t length(std::size_t e) const { return lengths_[e]; }
  /// A reduced word in the subsystem's simple reflections.
  std::vector<int> word(std::size_t e) const;
  std::optional<std::size_t> find(const IntMatrix& m) const;

  /// Images of v under every element, structure-of-arrays:
  /// out[a * size() + e] is coordinate a of element e applied to v.
  std::vector<std::int64_t> orbit_images(const IntVec& v) const;

  /// Raw SoA matrix entries, (a * dim + b) * size() + e.
  std::span<const std::int32_t> soa() const { return soa_; }

 private:
  struct KeyHash {
    std::size_t operator()(const IntVec& v) const noexcept;
  };
  std::size_t dim_ = 0;
  std::vector<std::int32_t> soa_;
  std::vector<std::uint32_t> lengths_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> generator_;
  IntVec probe_;  // regular vector used to key elements
  std::unordered_map<IntVec, std::uint32_t, KeyHash> index_;
  std::int64_t max_row_l1_ = 0;
};

class RootSystem {
 public:
  /// Throws DomainError for an invalid (family, rank) pair or a realization
  /// that does not apply to it.
  static std::shared_ptr<const RootSystem> build(char family, int rank,
                                                 Realization realization = Realization::Bourbaki,
                                                 const Rational& form_scale = 1);

  /// Same realization with the invariant form multiplied by `scale` (> 0).
  std::shared_ptr<const RootSystem> with_form_scale(const Rational& scale) const;

  char family() const { return family_; }
  int rank() const { return rank_; }
  std::string label() const;
  Realization realization() const { return realization_; }
  std::size_t ambient_dim() const { return ambient_.cols(); }
  const Rational& form_scale() const { return form_scale_; }

  const IntMatrix& cartan() const { return cartan_; }
  /// Simple roots as rows, ambient coordinates.
  const QMatrix& simple_roots_ambient() const { return ambient_; }

  /// Positive roots first (by height, then coefficients), then their
  /// negatives in the same order.
  const std::vector<Root>& roots() const { return roots_; }
  std::size_t num_positive() const { return roots_.size() / 2; }
  std::optional<std::size_t> find_root(const IntVec& coeffs) const;
  std::size_t negative_of(std::size_t root_index) const;
  const Root& highest_root() const;

  const RootSubsystem& positive_system() const { return positive_system_; }
  QVec rho() const { return QVec(static_cast<std::size_t>(rank_), Rational(1)); }

  /// <zeta_i, zeta_j> under the (scaled) invariant form.
  const QMatrix& gram() const { return gram_; }
  Rational inner(const QVec& a, const QVec& b) const;
  Rational norm_sq(const QVec& a) const { return inner(a, a); }

  /// Converts from GFund, SimpleRoot or Ambient. KFund needs a real form and
  /// is rejected here.
  QVec to_gfund(const Weight& w) const;
  Weight from_gfund(const QVec& v, Basis target) const;
  Weight convert(const Weight& w, Basis target) const { return from_gfund(to_gfund(w), target); }

  /// |W| from the closed-form order of the type.
  std::uint64_t weyl_order() const;
  /// The full group is generated and cached for rank <= 6.
  bool has_weyl_table() const { return rank_ <= 6; }
  const WeylGroupTable& weyl_table() const;

  WeylElement identity() const;
  /// Canonical element acting by m (must be a Weyl group element).
  WeylElement element(const IntMatrix& m) const;
  /// Throws DomainError for generator labels out of range (0-based).
  WeylElement element_from_word(const std::vector<int>& word) const;
  WeylElement compose(const WeylElement& a, const WeylElement& b) const;  // a * b
  WeylElement inverse(const WeylElement& a) const;
  IntMatrix simple_reflection(int i) const;
  IntMatrix reflection(std::size_t root_index) const;
  /// Number of positive roots sent to negative roots.
  std::size_t inversion_count(const IntMatrix& m) const;

 private:
  RootSystem() = default;
  void finish();

  char family_ = 'A';
  int rank_ = 0;
  Realization realization_ = Realization::Bourbaki;
  Rational form_scale_ = 1;
  QMatrix ambient_;
  IntMatrix cartan_;
  QMatrix cartan_inverse_;
  QMatrix zeta_ambient_;  // fundamental weights as rows, ambient coordinates
  std::vector<Root> roots_;
  std::unordered_map<std::string, std::size_t> root_index_;
  RootSubsystem positive_system_;
  QMatrix gram_;

  mutable std::once_flag table_once_;
  mutable std::unique_ptr<WeylGroupTable> table_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// Dominant representative of a weight together with the Weyl element
/// carrying the input to it.
struct DominantRep {
  Weight weight;  ///< g-fundamental coordinates
  WeylElement w;  ///< w * v == weight
};

RootSystemPtr build_root_system(char family, int rank, Realization realization = Realization::Bourbaki);

/// Dominant W-conjugate for the chamber of `chamber` (a subsystem of
/// `system`); the default chamber is Delta^+(g). Uses the descent walk, not
/// the cached group table.
DominantRep dominant_rep(const Weight& v, const RootSystem& system);
DominantRep dominant_rep(const Weight& v, const RootSystem& system, const RootSubsystem& chamber);

/// Weyl dimension formula for the subsystem `frame` (g itself by default).
/// Throws DomainError unless mu is dominant integral for it.
mpz_class weyl_dim(const Weight& mu, const RootSystem& system);
mpz_class weyl_dim(const Weight& mu, const RootSystem& system, const RootSubsystem& frame);

/// Every w with w^2 = e, each once, ordered by (length, word). Built from
/// products of reflections in mutually orthogonal roots.
std::vector<WeylElement> involutions(const RootSystem& system);

}  // namespace dirac
