#include "fps/matrix.hpp"

#include <algorithm>

namespace fps {

const RowEntries& MatrixImpl::row(const Index& y) const {
  {
    std::lock_guard lk(mu_);
    if (auto it = cache_.find(y); it != cache_.end()) return it->second;
  }
  RowEntries r = compute_row(y);
  std::lock_guard lk(mu_);
  return cache_.emplace(y, std::move(r)).first->second;
}

namespace {

void check_row(const IndexSpace& src, FieldKind field, const RowEntries& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!src.contains(r[i].first)) throw EvalError("row entry outside the source space");
    if (r[i].second.kind() != field) throw EvalError("row entry outside the field");
    if (r[i].second.is_zero()) throw EvalError("row entry with zero coefficient");
    if (i > 0 && !IndexLess{}(r[i - 1].first, r[i].first))
      throw EvalError("row entries out of order");
  }
}

struct IdentityImpl final : MatrixImpl {
  IdentityImpl(IndexSpace s, FieldKind f) : MatrixImpl(s, s, f) {}
  RowEntries compute_row(const Index& y) const override {
    return {{y, FieldValue::one(field())}};
  }
};

struct ShiftImpl final : MatrixImpl {
  std::uint64_t k;
  ShiftImpl(std::uint64_t k0, FieldKind f)
      : MatrixImpl(IndexSpace::naturals(), IndexSpace::naturals(), f), k(k0) {}
  RowEntries compute_row(const Index& y) const override {
    return {{Index{std::get<std::uint64_t>(y) + k}, FieldValue::one(field())}};
  }
};

struct DiagonalImpl final : MatrixImpl {
  Series g;
  explicit DiagonalImpl(Series g0) : MatrixImpl(g0.space(), g0.space(), g0.field()), g(std::move(g0)) {}
  RowEntries compute_row(const Index& y) const override {
    FieldValue c = g.coeff(y);
    if (c.is_zero()) return {};
    return {{y, std::move(c)}};
  }
};

struct BandedImpl final : MatrixImpl {
  std::uint64_t width;
  std::function<FieldValue(std::uint64_t, std::uint64_t)> rule;
  BandedImpl(std::uint64_t w, FieldKind f,
             std::function<FieldValue(std::uint64_t, std::uint64_t)> r)
      : MatrixImpl(IndexSpace::naturals(), IndexSpace::naturals(), f),
        width(w), rule(std::move(r)) {}
  RowEntries compute_row(const Index& y) const override {
    const std::uint64_t n = std::get<std::uint64_t>(y);
    RowEntries out;
    for (std::uint64_t x = n; x < n + width; ++x) {
      FieldValue c = rule(n, x);
      if (c.kind() != field()) throw EvalError("band rule left the field");
      if (!c.is_zero()) out.emplace_back(Index{x}, std::move(c));
    }
    return out;
  }
};

struct ExplicitImpl final : MatrixImpl {
  std::map<Index, RowEntries, IndexLess> rows;
  ExplicitImpl(IndexSpace s, IndexSpace t, FieldKind f,
               std::map<Index, RowEntries, IndexLess> r)
      : MatrixImpl(std::move(s), std::move(t), f), rows(std::move(r)) {}
  RowEntries compute_row(const Index& y) const override {
    auto it = rows.find(y);
    return it == rows.end() ? RowEntries{} : it->second;
  }
};

struct ComposeImpl final : MatrixImpl {
  RowFiniteMatrix outer, inner;  // acts as inner first, then outer
  ComposeImpl(RowFiniteMatrix n, RowFiniteMatrix m)
      : MatrixImpl(m.source(), n.target(), n.field()),
        outer(std::move(n)), inner(std::move(m)) {}
  RowEntries compute_row(const Index& z) const override {
    std::map<Index, FieldValue, IndexLess> acc;
    for (const auto& [y, c] : outer.row(z))
      for (const auto& [x, d] : inner.row(y)) {
        auto [it, fresh] = acc.emplace(x, c * d);
        if (!fresh) it->second = it->second + c * d;
      }
    RowEntries out;
    for (auto& [x, v] : acc)
      if (!v.is_zero()) out.emplace_back(x, std::move(v));
    return out;
  }
};

struct ApplyImpl final : SeriesImpl {
  RowFiniteMatrix m;
  Series f;
  ApplyImpl(RowFiniteMatrix m0, Series f0)
      : SeriesImpl(m0.target(), m0.field(), {0, false}), m(std::move(m0)), f(std::move(f0)) {}
  FieldValue compute(const Index& y) const override {
    FieldValue acc = FieldValue::zero(field());
    for (const auto& [x, c] : m.row(y)) acc = acc + c * f.coeff(x);
    return acc;
  }
};

}  // namespace

RowFiniteMatrix RowFiniteMatrix::identity(IndexSpace space, FieldKind field) {
  return RowFiniteMatrix(std::make_shared<IdentityImpl>(std::move(space), field));
}

RowFiniteMatrix RowFiniteMatrix::shift(std::uint64_t k, FieldKind field) {
  return RowFiniteMatrix(std::make_shared<ShiftImpl>(k, field));
}

RowFiniteMatrix RowFiniteMatrix::diagonal(const Series& g) {
  return RowFiniteMatrix(std::make_shared<DiagonalImpl>(g));
}

RowFiniteMatrix RowFiniteMatrix::banded(
    std::uint64_t width, FieldKind field,
    std::function<FieldValue(std::uint64_t, std::uint64_t)> rule) {
  if (width < 1) throw EvalError("band width must be >= 1");
  return RowFiniteMatrix(std::make_shared<BandedImpl>(width, field, std::move(rule)));
}

RowFiniteMatrix RowFiniteMatrix::from_rows(IndexSpace src, IndexSpace tgt, FieldKind field,
                                           std::map<Index, RowEntries, IndexLess> rows) {
  for (const auto& [y, r] : rows) {
    if (!tgt.contains(y)) throw EvalError("row index outside the target space");
    check_row(src, field, r);
  }
  return RowFiniteMatrix(
      std::make_shared<ExplicitImpl>(std::move(src), std::move(tgt), field, std::move(rows)));
}

const RowEntries& RowFiniteMatrix::row(const Index& y) const {
  if (!target().contains(y)) throw EvalError("row index outside the target space");
  return impl_->row(y);
}

Series apply(const RowFiniteMatrix& m, const Series& f) {
  if (f.space() != m.source()) throw EvalError("series outside the matrix source space");
  if (f.field() != m.field()) throw EvalError("series outside the matrix field");
  return Series(std::make_shared<ApplyImpl>(m, f));
}

RowFiniteMatrix compose(const RowFiniteMatrix& n, const RowFiniteMatrix& m) {
  if (m.target() != n.source()) throw EvalError("composition spaces do not meet");
  if (m.field() != n.field()) throw EvalError("composition field mismatch");
  return RowFiniteMatrix(std::make_shared<ComposeImpl>(n, m));
}

MatrixProbe extract_matrix(const std::function<Series(const Series&)>& op,
                           const IndexSpace& src, const IndexSpace& tgt, FieldKind field,
                           std::uint64_t hy, std::uint64_t hx) {
  if (hy < 1 || hx < 1) throw EvalError("probe horizons must be >= 1");
  std::vector<Index> xs, ys;
  for (std::uint64_t i = 0; i < hx; ++i) {
    if (src.is_monoid() && src.alphabet().empty() && i > 0) break;
    xs.push_back(src.at(i));
  }
  for (std::uint64_t i = 0; i < hy; ++i) {
    if (tgt.is_monoid() && tgt.alphabet().empty() && i > 0) break;
    ys.push_back(tgt.at(i));
  }

  std::vector<Series> images;
  images.reserve(xs.size());
  for (const Index& x : xs) {
    Series img = op(Series::embed(Polynomial::dirac(src, x, field)));
    if (img.space() != tgt) throw EvalError("operator image outside the target space");
    if (img.field() != field) throw EvalError("operator image outside the field");
    images.push_back(std::move(img));
  }

  std::map<Index, RowEntries, IndexLess> rows;
  std::vector<RowProbeReport> reports;
  reports.reserve(ys.size());
  for (const Index& y : ys) {
    RowEntries r;
    std::uint64_t last_hit = 0;
    for (std::size_t j = 0; j < images.size(); ++j) {
      FieldValue v = images[j].coeff(y);
      if (!v.is_zero()) {
        r.emplace_back(xs[j], std::move(v));
        last_hit = j + 1;
      }
    }
    RowProbeReport rep{y, r.size(), last_hit <= (hx + 1) / 2};
    reports.push_back(std::move(rep));
    if (!r.empty()) rows.emplace(y, std::move(r));
  }
  return {RowFiniteMatrix::from_rows(src, tgt, field, std::move(rows)), std::move(reports)};
}

}  // namespace fps
