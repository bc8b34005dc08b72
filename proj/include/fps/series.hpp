#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fps/field.hpp"
#include "fps/indices.hpp"
#include "fps/polynomial.hpp"

namespace fps {

inline constexpr std::uint64_t kNuInfinity = ~std::uint64_t{0};

// Structural lower bound on the order (least support length) of a series.
// `exact` means the bound is the order itself; lower == kNuInfinity with
// exact set marks the zero series.
struct NuHint {
  std::uint64_t lower = 0;
  bool exact = false;
};

// A coefficient oracle. Total on its index space, evaluated lazily; pure,
// so results may be memoized and shared. Subclassed by each generator and
// by the operator module.
class SeriesImpl {
 public:
  SeriesImpl(IndexSpace space, FieldKind field, NuHint hint)
      : space_(std::move(space)), field_(field), hint_(hint) {}
  virtual ~SeriesImpl() = default;

  const IndexSpace& space() const { return space_; }
  FieldKind field() const { return field_; }
  const NuHint& hint() const { return hint_; }

  FieldValue coeff(const Index& x) const;

  // Non-null exactly for polynomial embeds.
  virtual const Polynomial* as_polynomial() const { return nullptr; }

 protected:
  virtual FieldValue compute(const Index& x) const = 0;
  // Generators whose compute is a plain lookup skip the memo table.
  virtual bool use_memo() const { return true; }

 private:
  IndexSpace space_;
  FieldKind field_;
  NuHint hint_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Index, FieldValue, IndexHash> memo_;
};

// A formal series: an immutable shared handle to a coefficient oracle.
// Copies are cheap and share the memo.
class Series {
 public:
  explicit Series(std::shared_ptr<const SeriesImpl> impl) : impl_(std::move(impl)) {}

  static Series zero(IndexSpace space, FieldKind field);
  static Series embed(Polynomial p);                         // finitely supported
  static Series unit(IndexSpace space, FieldKind field);     // delta at the empty word
  static Series letter(const IndexSpace& space, std::uint32_t id, FieldKind field);
  static Series all_ones(IndexSpace space, FieldKind field); // every coefficient 1
  static Series from_oracle(IndexSpace space, FieldKind field,
                            std::function<FieldValue(const Index&)> fn,
                            NuHint hint = {});

  const IndexSpace& space() const { return impl_->space(); }
  FieldKind field() const { return impl_->field(); }
  const NuHint& hint() const { return impl_->hint(); }
  const std::shared_ptr<const SeriesImpl>& impl() const { return impl_; }

  // Coefficient at x; x must belong to the space.
  FieldValue coeff(const Index& x) const;

  // The underlying polynomial when this series is a finite embed.
  const Polynomial* as_polynomial() const { return impl_->as_polynomial(); }

 private:
  std::shared_ptr<const SeriesImpl> impl_;
};

// alpha * f + g, pointwise.
Series lin(const FieldValue& alpha, const Series& f, const Series& g);
Series scale(const FieldValue& alpha, const Series& f);
Series add(const Series& f, const Series& g);

// Cauchy product on a free monoid: (f*g)(w) = sum over splits w = uv of f(u)g(v).
Series cauchy(const Series& f, const Series& g);

// Kleene star: sum of all powers of f. Defined only when f has zero
// coefficient at the empty word; EvalError otherwise. Each coefficient is
// the finite sum of the first |w|+1 power coefficients.
Series star(const Series& f);

// Order scan: least word length <= degree_horizon carrying a nonzero
// coefficient. Free monoids only. `budget` caps the number of coefficient
// probes; hitting it leaves the question open.
struct ValuationScan {
  enum class Outcome { Found, AboveHorizon, BudgetExhausted };
  Outcome outcome = Outcome::AboveHorizon;
  std::uint64_t value = 0;    // meaningful when Found
  std::uint64_t scanned = 0;  // coefficient probes spent
};
ValuationScan valuation(const Series& f, std::uint64_t degree_horizon,
                        std::uint64_t budget = ~std::uint64_t{0});

// ----------------------------------------------------------------------
// Summability

// Topology on the series space: the product topology induced by a field
// descriptor, or the Krull (order) topology on a free monoid, which treats
// the coefficient field as discrete.
struct SeriesTopology {
  enum class Kind { Product, Krull };
  Kind kind = Kind::Product;
  FieldDescriptor descriptor;

  static SeriesTopology product(FieldDescriptor d);
  static SeriesTopology krull(FieldKind field);
};

enum class SumStatus {
  ConvergedExactly,
  ConvergedWithinTolerance,
  DivergentAtHorizon,
  Inconclusive,
};
std::string to_string(SumStatus s);

struct CoordinateReport {
  enum class State { Stabilized, Divergent, Undecided };
  Index coord;
  State state = State::Undecided;
  std::uint64_t active = 0;  // increments not near zero
};

// Per-coordinate stabilization of a finite scalar family under a descriptor.
// Increments are ranked by decreasing magnitude (equality, |.|, or p^-v);
// the family diverges at the coordinate when active increments persist into
// the final quarter of that ranking, and stabilizes when the last-quarter
// partial sums are pairwise near. The ranking, not the arrival order,
// decides, so the answer is permutation-invariant for exact descriptors.
CoordinateReport::State scalar_stabilization(const std::vector<FieldValue>& increments,
                                             const FieldDescriptor& d,
                                             std::uint64_t* active_out = nullptr);

struct SummabilityVerdict {
  SumStatus status = SumStatus::Inconclusive;
  std::uint64_t members_probed = 0;
  std::uint64_t coords_probed = 0;
  std::uint64_t stabilized = 0;
  std::vector<CoordinateReport> offenders;  // non-stabilized coordinates, capped
  // Krull witness: a late member whose order sits below the degree horizon.
  std::optional<std::uint64_t> krull_offender;
  std::optional<std::uint64_t> krull_order;
};

// An indexed family of series over one space and field; possibly unbounded.
class SeriesFamily {
 public:
  static SeriesFamily dirac_decomposition(const Series& f);
  static SeriesFamily alphabet_letters(const IndexSpace& space, std::uint64_t n,
                                       FieldKind field);
  static SeriesFamily from_members(IndexSpace space, FieldKind field,
                                   std::vector<Series> members);

  const IndexSpace& space() const { return space_; }
  FieldKind field() const { return field_; }
  std::optional<std::uint64_t> size() const { return size_; }
  Series member(std::uint64_t i) const;

 private:
  SeriesFamily(IndexSpace s, FieldKind f, std::optional<std::uint64_t> n,
               std::function<Series(std::uint64_t)> gen)
      : space_(std::move(s)), field_(f), size_(n), gen_(std::move(gen)) {}
  IndexSpace space_;
  FieldKind field_;
  std::optional<std::uint64_t> size_;
  std::function<Series(std::uint64_t)> gen_;
};

struct FamilySum {
  SummabilityVerdict verdict;
  Series sum;  // lazy sum of the probed member prefix
};

// Semidecision of summability at a finite horizon: probes the first
// member_horizon members on the first coord_horizon coordinates. The
// verdict speaks only about that window; Inconclusive is an honest answer.
FamilySum sum_family(const SeriesFamily& fam, const SeriesTopology& top,
                     std::uint64_t member_horizon, std::uint64_t coord_horizon);

}  // namespace fps
