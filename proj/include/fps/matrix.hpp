#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "fps/series.hpp"

namespace fps {

// One matrix row: the finitely many nonzero entries over source indices,
// canonically ordered.
using RowEntries = std::vector<std::pair<Index, FieldValue>>;

// Row computation shared by all matrix shapes; rows are produced lazily
// and cached. Rows must be finite whatever the generator.
class MatrixImpl {
 public:
  MatrixImpl(IndexSpace src, IndexSpace tgt, FieldKind field)
      : src_(std::move(src)), tgt_(std::move(tgt)), field_(field) {}
  virtual ~MatrixImpl() = default;

  const IndexSpace& source() const { return src_; }
  const IndexSpace& target() const { return tgt_; }
  FieldKind field() const { return field_; }

  const RowEntries& row(const Index& y) const;

 protected:
  virtual RowEntries compute_row(const Index& y) const = 0;

 private:
  IndexSpace src_, tgt_;
  FieldKind field_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Index, RowEntries, IndexHash> cache_;
};

// A row-finite matrix: for each target index y, finitely many source
// entries M(y, x). Represents a continuous linear map between series
// spaces; application and composition stay lazy.
class RowFiniteMatrix {
 public:
  explicit RowFiniteMatrix(std::shared_ptr<const MatrixImpl> impl) : impl_(std::move(impl)) {}

  static RowFiniteMatrix identity(IndexSpace space, FieldKind field);
  // M(n, n+k) = 1 on the naturals.
  static RowFiniteMatrix shift(std::uint64_t k, FieldKind field);
  // M(x, x) = g(x).
  static RowFiniteMatrix diagonal(const Series& g);
  // Band on the naturals: M(y, x) = rule(y, x) for y <= x < y+width, 0 else.
  static RowFiniteMatrix banded(std::uint64_t width, FieldKind field,
                                std::function<FieldValue(std::uint64_t, std::uint64_t)> rule);
  // Explicit finite table; rows beyond it are zero.
  static RowFiniteMatrix from_rows(IndexSpace src, IndexSpace tgt, FieldKind field,
                                   std::map<Index, RowEntries, IndexLess> rows);

  const IndexSpace& source() const { return impl_->source(); }
  const IndexSpace& target() const { return impl_->target(); }
  FieldKind field() const { return impl_->field(); }
  const RowEntries& row(const Index& y) const;

 private:
  std::shared_ptr<const MatrixImpl> impl_;
};

// The series map y onto sum of M(y, x) f(x); a finite sum per coordinate.
Series apply(const RowFiniteMatrix& m, const Series& f);

// compose(n, m) acts as: apply m, then n. Row-finiteness is preserved.
RowFiniteMatrix compose(const RowFiniteMatrix& n, const RowFiniteMatrix& m);

// Probe a series operator on deltas of the first hx source indices and
// read rows off the first hy target indices. Per-row exhaustion mirrors
// the dual probe: a silent final half of the row's probe range.
struct RowProbeReport {
  Index row;
  std::uint64_t detected = 0;
  bool exhausted = false;
};
struct MatrixProbe {
  RowFiniteMatrix matrix;
  std::vector<RowProbeReport> rows;
};
MatrixProbe extract_matrix(const std::function<Series(const Series&)>& op,
                           const IndexSpace& src, const IndexSpace& tgt, FieldKind field,
                           std::uint64_t hy, std::uint64_t hx);

}  // namespace fps
