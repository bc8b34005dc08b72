#include "fps/duality.hpp"

#include <cmath>

namespace fps {

Functional Functional::pairing(Polynomial p) {
  Functional ell(p.space(), p.field());
  ell.poly_ = std::move(p);
  return ell;
}

Functional Functional::black_box(IndexSpace space, FieldKind field,
                                 std::function<FieldValue(const Series&)> fn) {
  Functional ell(std::move(space), field);
  ell.fn_ = std::move(fn);
  return ell;
}

FieldValue Functional::operator()(const Series& f) const {
  if (f.space() != space_) throw EvalError("series outside the functional's space");
  if (f.field() != field_) throw EvalError("series outside the functional's field");
  if (poly_) return pair(*poly_, f);
  FieldValue v = fn_(f);
  if (v.kind() != field_) throw EvalError("functional returned a value outside the field");
  return v;
}

const Polynomial& Functional::poly() const {
  if (!poly_) throw EvalError("not a pairing functional");
  return *poly_;
}

Functional phi(Polynomial p) { return Functional::pairing(std::move(p)); }

DualProbe extract_poly(const Functional& ell, std::uint64_t horizon) {
  if (horizon < 1) throw EvalError("probe horizon must be >= 1");
  const IndexSpace& s = ell.space();
  std::vector<Polynomial::Term> terms;
  std::uint64_t last_hit = 0;
  std::uint64_t probed = 0;
  for (std::uint64_t i = 0; i < horizon; ++i) {
    if (s.is_monoid() && s.alphabet().empty() && i > 0) break;
    Index x = s.at(i);
    FieldValue v = ell(Series::embed(Polynomial::dirac(s, x, ell.field())));
    ++probed;
    if (!v.is_zero()) {
      terms.emplace_back(std::move(x), std::move(v));
      last_hit = i + 1;
    }
  }
  DualProbe out{Polynomial::from_terms(s, ell.field(), std::move(terms)), {}};
  out.report.probed = probed;
  // silent final half: nothing new appeared past the midpoint
  out.report.exhausted = last_hit <= (horizon + 1) / 2;
  return out;
}

ExtensionResult complete_extend(const Functional& ell, const Series& f,
                                std::uint64_t coord_horizon, const FieldDescriptor& d) {
  if (coord_horizon < 1) throw EvalError("extension horizon must be >= 1");
  if (f.space() != ell.space()) throw EvalError("series outside the functional's space");
  if (f.field() != ell.field()) throw EvalError("series outside the functional's field");
  if (d.field != ell.field()) throw EvalError("descriptor field mismatch");
  const IndexSpace& s = ell.space();

  std::vector<FieldValue> terms;
  FieldValue acc = FieldValue::zero(ell.field());
  for (std::uint64_t i = 0; i < coord_horizon; ++i) {
    if (s.is_monoid() && s.alphabet().empty() && i > 0) break;
    Index x = s.at(i);
    FieldValue t = f.coeff(x) * ell(Series::embed(Polynomial::dirac(s, x, ell.field())));
    acc = acc + t;
    terms.push_back(std::move(t));
  }

  ExtensionResult out;
  out.value = std::move(acc);
  out.terms = terms.size();
  auto st = scalar_stabilization(terms, d, &out.active);
  switch (st) {
    case CoordinateReport::State::Divergent:
      out.status = SumStatus::DivergentAtHorizon;
      break;
    case CoordinateReport::State::Undecided:
      out.status = SumStatus::Inconclusive;
      break;
    case CoordinateReport::State::Stabilized:
      out.status = d.topology == TopologyKind::Archimedean || d.topology == TopologyKind::Padic
                       ? SumStatus::ConvergedWithinTolerance
                       : SumStatus::ConvergedExactly;
      break;
  }
  return out;
}

ContinuityModulus continuity_modulus(const Polynomial& p, const FieldDescriptor& d) {
  if (p.field() != d.field) throw EvalError("descriptor field mismatch");
  if (!d.hausdorff())
    throw EvalError("no continuity witness under an indiscrete target");
  ContinuityModulus out;
  out.topology = d.topology;
  if (d.topology == TopologyKind::Archimedean) {
    double l1 = 0;
    for (const auto& [x, c] : p.terms()) l1 += std::fabs(c.dbl());
    out.lipschitz = l1;
  } else {
    out.control_support = p.support();
  }
  return out;
}

}  // namespace fps
