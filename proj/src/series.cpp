#include "fps/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace fps {

FieldValue SeriesImpl::coeff(const Index& x) const {
  if (!use_memo()) return compute(x);
  {
    std::lock_guard lk(mu_);
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
  }
  FieldValue v = compute(x);  // pure, so losing a race is harmless
  std::lock_guard lk(mu_);
  return memo_.emplace(x, std::move(v)).first->second;
}

FieldValue Series::coeff(const Index& x) const {
  if (!space().contains(x)) throw EvalError("index outside the series' space");
  return impl_->coeff(x);
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  if (a == kNuInfinity || b == kNuInfinity) return kNuInfinity;
  return a + b < a ? kNuInfinity : a + b;
}

struct ZeroImpl final : SeriesImpl {
  ZeroImpl(IndexSpace s, FieldKind f) : SeriesImpl(std::move(s), f, {kNuInfinity, true}) {}
  FieldValue compute(const Index&) const override { return FieldValue::zero(field()); }
  bool use_memo() const override { return false; }
};

struct EmbedImpl final : SeriesImpl {
  Polynomial p;

  static NuHint hint_of(const Polynomial& q) {
    if (q.is_zero()) return {kNuInfinity, true};
    if (!q.space().is_monoid()) return {0, false};
    std::uint64_t best = kNuInfinity;
    for (const auto& [x, c] : q.terms())
      best = std::min<std::uint64_t>(best, length(std::get<Word>(x)));
    return {best, true};
  }

  explicit EmbedImpl(Polynomial q) : SeriesImpl(q.space(), q.field(), hint_of(q)), p(std::move(q)) {}
  FieldValue compute(const Index& x) const override { return p.coeff(x); }
  bool use_memo() const override { return false; }
  const Polynomial* as_polynomial() const override { return &p; }
};

struct OnesImpl final : SeriesImpl {
  OnesImpl(IndexSpace s, FieldKind f) : SeriesImpl(std::move(s), f, {0, true}) {}
  FieldValue compute(const Index&) const override { return FieldValue::one(field()); }
  bool use_memo() const override { return false; }
};

struct OracleImpl final : SeriesImpl {
  std::function<FieldValue(const Index&)> fn;
  OracleImpl(IndexSpace s, FieldKind f, std::function<FieldValue(const Index&)> g, NuHint h)
      : SeriesImpl(std::move(s), f, h), fn(std::move(g)) {}
  FieldValue compute(const Index& x) const override {
    FieldValue v = fn(x);
    if (v.kind() != field()) throw EvalError("oracle returned a value outside the field");
    return v;
  }
};

struct LinImpl final : SeriesImpl {
  FieldValue alpha;
  Series f, g;
  static NuHint hint_of(const Series& f, const Series& g) {
    const NuHint &a = f.hint(), &b = g.hint();
    if (a.exact && a.lower == kNuInfinity) return b;
    if (b.exact && b.lower == kNuInfinity) return {a.lower, false};
    return {std::min(a.lower, b.lower), false};
  }
  LinImpl(FieldValue al, Series f0, Series g0)
      : SeriesImpl(f0.space(), f0.field(), hint_of(f0, g0)),
        alpha(std::move(al)), f(std::move(f0)), g(std::move(g0)) {}
  FieldValue compute(const Index& x) const override {
    return alpha * f.coeff(x) + g.coeff(x);
  }
};

struct CauchyImpl final : SeriesImpl {
  Series f, g;
  static NuHint hint_of(const Series& f, const Series& g) {
    const NuHint &a = f.hint(), &b = g.hint();
    if ((a.exact && a.lower == kNuInfinity) || (b.exact && b.lower == kNuInfinity))
      return {kNuInfinity, true};
    // orders add: the shortest product word has a single split, so no cancellation
    return {sat_add(a.lower, b.lower), a.exact && b.exact};
  }
  CauchyImpl(Series f0, Series g0)
      : SeriesImpl(f0.space(), f0.field(), hint_of(f0, g0)),
        f(std::move(f0)), g(std::move(g0)) {}
  FieldValue compute(const Index& x) const override {
    const Word& w = std::get<Word>(x);
    const std::size_t n = length(w);
    FieldValue acc = FieldValue::zero(field());
    for (std::size_t cut = 0; cut <= n; ++cut) {
      if (cut < f.hint().lower || n - cut < g.hint().lower) continue;
      acc = acc + f.coeff(Index{subword(w, 0, cut)}) * g.coeff(Index{subword(w, cut, n)});
    }
    return acc;
  }
};

struct StarImpl final : SeriesImpl {
  Series f;
  mutable std::mutex pmu;
  mutable std::vector<Series> pows;  // pows[k] = f^k, grown on demand

  explicit StarImpl(Series f0) : SeriesImpl(f0.space(), f0.field(), {0, true}), f(std::move(f0)) {
    pows.push_back(Series::unit(space(), field()));
  }

  Series power(std::size_t k) const {
    std::lock_guard lk(pmu);
    while (pows.size() <= k) pows.push_back(cauchy(f, pows.back()));
    return pows[k];
  }

  // f(empty) = 0 makes this a finite sum: powers beyond |w| vanish on w.
  FieldValue compute(const Index& x) const override {
    const std::size_t n = length(std::get<Word>(x));
    FieldValue acc = FieldValue::zero(field());
    for (std::size_t k = 0; k <= n; ++k) acc = acc + power(k).coeff(x);
    return acc;
  }
};

struct FamilySumImpl final : SeriesImpl {
  std::vector<Series> members;
  static NuHint hint_of(const std::vector<Series>& ms) {
    if (ms.empty()) return {kNuInfinity, true};
    std::uint64_t lo = kNuInfinity;
    for (const Series& m : ms) lo = std::min(lo, m.hint().lower);
    return {lo, false};
  }
  FamilySumImpl(IndexSpace s, FieldKind f, std::vector<Series> ms)
      : SeriesImpl(std::move(s), f, hint_of(ms)), members(std::move(ms)) {}
  FieldValue compute(const Index& x) const override {
    FieldValue acc = FieldValue::zero(field());
    for (const Series& m : members) acc = acc + m.coeff(x);
    return acc;
  }
};

}  // namespace

Series Series::zero(IndexSpace space, FieldKind field) {
  return Series(std::make_shared<ZeroImpl>(std::move(space), field));
}

Series Series::embed(Polynomial p) {
  return Series(std::make_shared<EmbedImpl>(std::move(p)));
}

Series Series::unit(IndexSpace space, FieldKind field) {
  if (!space.is_monoid()) throw EvalError("the Cauchy unit needs a free monoid");
  return embed(Polynomial::from_terms(space, field, {{Index{Word{}}, FieldValue::one(field)}}));
}

Series Series::letter(const IndexSpace& space, std::uint32_t id, FieldKind field) {
  return embed(Polynomial::dirac(space, Index{space.letter(id)}, field));
}

Series Series::all_ones(IndexSpace space, FieldKind field) {
  return Series(std::make_shared<OnesImpl>(std::move(space), field));
}

Series Series::from_oracle(IndexSpace space, FieldKind field,
                           std::function<FieldValue(const Index&)> fn, NuHint hint) {
  return Series(std::make_shared<OracleImpl>(std::move(space), field, std::move(fn), hint));
}

Series lin(const FieldValue& alpha, const Series& f, const Series& g) {
  if (f.field() != g.field() || alpha.kind() != f.field())
    throw EvalError("field mismatch in lin");
  if (f.space() != g.space()) throw EvalError("space mismatch in lin");
  if (alpha.is_zero()) return g;
  return Series(std::make_shared<LinImpl>(alpha, f, g));
}

Series scale(const FieldValue& alpha, const Series& f) {
  return lin(alpha, f, Series::zero(f.space(), f.field()));
}

Series add(const Series& f, const Series& g) {
  return lin(FieldValue::one(f.field()), f, g);
}

Series cauchy(const Series& f, const Series& g) {
  if (!f.space().is_monoid()) throw EvalError("Cauchy product needs a free monoid");
  if (f.field() != g.field()) throw EvalError("field mismatch in cauchy");
  if (f.space() != g.space()) throw EvalError("space mismatch in cauchy");
  auto dead = [](const Series& s) { return s.hint().exact && s.hint().lower == kNuInfinity; };
  if (dead(f) || dead(g)) return Series::zero(f.space(), f.field());
  return Series(std::make_shared<CauchyImpl>(f, g));
}

Series star(const Series& f) {
  if (!f.space().is_monoid()) throw EvalError("star needs a free monoid");
  if (!f.coeff(Index{Word{}}).is_zero())
    throw EvalError("star undefined: nonzero coefficient at the empty word");
  return Series(std::make_shared<StarImpl>(f));
}

ValuationScan valuation(const Series& f, std::uint64_t degree_horizon, std::uint64_t budget) {
  if (!f.space().is_monoid()) throw EvalError("valuation needs a free monoid");
  const NuHint& h = f.hint();
  ValuationScan r;
  if (h.exact) {
    if (h.lower != kNuInfinity && h.lower <= degree_horizon) {
      r.outcome = ValuationScan::Outcome::Found;
      r.value = h.lower;
    }
    return r;
  }
  const std::uint64_t m = f.space().alphabet().size();
  for (std::uint64_t l = h.lower; l <= degree_horizon; ++l) {
    if (m == 0 && l > 0) break;
    Word w;
    w.letters.assign(l, 0);
    while (true) {
      if (r.scanned >= budget) {
        r.outcome = ValuationScan::Outcome::BudgetExhausted;
        return r;
      }
      ++r.scanned;
      if (!f.coeff(Index{w}).is_zero()) {
        r.outcome = ValuationScan::Outcome::Found;
        r.value = l;
        return r;
      }
      std::size_t i = l;
      while (i > 0) {
        if (++w.letters[i - 1] < m) break;
        w.letters[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  return r;
}

SeriesTopology SeriesTopology::product(FieldDescriptor d) {
  return {Kind::Product, std::move(d)};
}

SeriesTopology SeriesTopology::krull(FieldKind field) {
  // coefficients compared by equality, whatever the field
  FieldDescriptor d;
  d.field = field;
  d.topology = TopologyKind::Discrete;
  return {Kind::Krull, d};
}

std::string to_string(SumStatus s) {
  switch (s) {
    case SumStatus::ConvergedExactly: return "ConvergedExactly";
    case SumStatus::ConvergedWithinTolerance: return "ConvergedWithinTolerance";
    case SumStatus::DivergentAtHorizon: return "DivergentAtHorizon";
    case SumStatus::Inconclusive: return "Inconclusive";
  }
  std::abort();
}

CoordinateReport::State scalar_stabilization(const std::vector<FieldValue>& increments,
                                             const FieldDescriptor& d,
                                             std::uint64_t* active_out) {
  const std::size_t n = increments.size();
  const FieldValue z = FieldValue::zero(d.field);
  std::uint64_t active = 0;
  for (const FieldValue& v : increments)
    if (!near(v, z, d)) ++active;
  if (active_out) *active_out = active;
  if (n == 0) return CoordinateReport::State::Stabilized;

  // Rank increments by decreasing magnitude; ties keep their arrival order.
  // The net diverges at this horizon when active increments reach into the
  // final quarter of the ranking, i.e. the last W-1 ranked increments are
  // not all near zero.
  const std::size_t W = (n + 3) / 4;
  if (active + W > n + 1) return CoordinateReport::State::Divergent;
  if (d.topology != TopologyKind::Archimedean)
    return CoordinateReport::State::Stabilized;  // near-zero closed under sums here

  std::vector<std::size_t> ord(n);
  std::iota(ord.begin(), ord.end(), std::size_t{0});
  std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(increments[a].dbl()) > std::fabs(increments[b].dbl());
  });
  double s = 0, lo = 0, hi = 0;
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    s += increments[ord[i]].dbl();
    if (i + W >= n) {  // one of the last W partial sums
      lo = first ? s : std::min(lo, s);
      hi = first ? s : std::max(hi, s);
      first = false;
    }
  }
  return hi - lo < d.eps ? CoordinateReport::State::Stabilized
                         : CoordinateReport::State::Undecided;
}

SeriesFamily SeriesFamily::dirac_decomposition(const Series& f) {
  std::optional<std::uint64_t> size;
  if (f.space().is_monoid() && f.space().alphabet().empty()) size = 1;
  Series cap = f;
  return SeriesFamily(f.space(), f.field(), size, [cap](std::uint64_t i) {
    Index x = cap.space().at(i);
    FieldValue c = cap.coeff(x);
    return Series::embed(Polynomial::from_terms(cap.space(), cap.field(), {{x, c}}));
  });
}

SeriesFamily SeriesFamily::alphabet_letters(const IndexSpace& space, std::uint64_t n,
                                            FieldKind field) {
  if (!space.is_monoid()) throw EvalError("alphabet family needs a free monoid");
  if (n > space.alphabet().size())
    throw EvalError("alphabet family larger than the alphabet");
  return SeriesFamily(space, field, n, [space, field](std::uint64_t i) {
    return Series::letter(space, static_cast<std::uint32_t>(i), field);
  });
}

SeriesFamily SeriesFamily::from_members(IndexSpace space, FieldKind field,
                                        std::vector<Series> members) {
  for (const Series& m : members) {
    if (m.space() != space) throw EvalError("family member outside the space");
    if (m.field() != field) throw EvalError("family member outside the field");
  }
  auto shared = std::make_shared<std::vector<Series>>(std::move(members));
  return SeriesFamily(std::move(space), field, shared->size(),
                      [shared](std::uint64_t i) { return (*shared)[i]; });
}

Series SeriesFamily::member(std::uint64_t i) const {
  if (size_ && i >= *size_) throw EvalError("family member out of range");
  return gen_(i);
}

FamilySum sum_family(const SeriesFamily& fam, const SeriesTopology& top,
                     std::uint64_t member_horizon, std::uint64_t coord_horizon) {
  if (member_horizon < 1 || coord_horizon < 1) throw EvalError("horizons must be >= 1");
  if (top.kind == SeriesTopology::Kind::Krull && !fam.space().is_monoid())
    throw EvalError("Krull topology needs a free monoid");
  if (top.descriptor.field != fam.field())
    throw EvalError("topology field does not match the family");

  const std::uint64_t n =
      fam.size() ? std::min<std::uint64_t>(member_horizon, *fam.size()) : member_horizon;
  std::vector<Series> members;
  members.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) members.push_back(fam.member(i));

  SummabilityVerdict v;
  v.members_probed = n;
  Series sum{std::make_shared<FamilySumImpl>(fam.space(), fam.field(), members)};

  if (n == 0) {
    v.status = SumStatus::ConvergedExactly;
    return {std::move(v), std::move(sum)};
  }
  if (top.kind == SeriesTopology::Kind::Product && !top.descriptor.hausdorff()) {
    v.status = SumStatus::ConvergedExactly;  // every net converges here
    return {std::move(v), std::move(sum)};
  }

  const FieldDescriptor& d = top.descriptor;
  const auto coords = fam.space().enumerate(coord_horizon);
  v.coords_probed = coords.size();
  bool divergent = false, undecided = false;
  std::vector<FieldValue> incs;
  incs.reserve(n);
  for (const Index& x : coords) {
    incs.clear();
    for (const Series& m : members) incs.push_back(m.coeff(x));
    std::uint64_t active = 0;
    auto st = scalar_stabilization(incs, d, &active);
    if (st == CoordinateReport::State::Stabilized) {
      ++v.stabilized;
    } else {
      (st == CoordinateReport::State::Divergent ? divergent : undecided) = true;
      if (v.offenders.size() < 8) v.offenders.push_back({x, st, active});
    }
  }

  if (top.kind == SeriesTopology::Kind::Krull && !divergent) {
    // Low-order members arriving in the final quarter keep the per-degree
    // support counts moving, so the net cannot have settled.
    const std::uint64_t W = (n + 3) / 4;
    for (std::uint64_t i = n + 1 - W; i < n; ++i) {
      auto scan = valuation(members[i], coord_horizon - 1, std::uint64_t{1} << 16);
      if (scan.outcome == ValuationScan::Outcome::Found) {
        divergent = true;
        v.krull_offender = i;
        v.krull_order = scan.value;
        break;
      }
    }
  }

  v.status = divergent    ? SumStatus::DivergentAtHorizon
             : undecided  ? SumStatus::Inconclusive
             : d.topology == TopologyKind::Discrete ? SumStatus::ConvergedExactly
                                                    : SumStatus::ConvergedWithinTolerance;
  return {std::move(v), std::move(sum)};
}

}  // namespace fps
