#include "fps/polynomial.hpp"

#include <algorithm>

#include "fps/series.hpp"

namespace fps {

Polynomial Polynomial::dirac(const IndexSpace& space, const Index& x, FieldKind field) {
  if (!space.contains(x)) throw EvalError("dirac index outside the space");
  Polynomial p(space, field);
  p.terms_.emplace_back(x, FieldValue::one(field));
  return p;
}

Polynomial Polynomial::from_terms(const IndexSpace& space, FieldKind field,
                                  std::vector<Term> terms) {
  Polynomial p(space, field);
  for (const auto& [x, c] : terms) {
    if (!space.contains(x)) throw EvalError("term index outside the space");
    if (c.kind() != field) throw EvalError("term coefficient outside the field");
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return IndexLess{}(a.first, b.first); });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first)
      p.terms_.back().second = p.terms_.back().second + t.second;
    else
      p.terms_.push_back(std::move(t));
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.second.is_zero(); });
  return p;
}

std::vector<Index> Polynomial::support() const {
  std::vector<Index> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.first);
  return out;
}

FieldValue Polynomial::coeff(const Index& x) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), x, [](const Term& t, const Index& y) {
    return IndexLess{}(t.first, y);
  });
  if (it != terms_.end() && it->first == x) return it->second;
  return FieldValue::zero(field_);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.space_ == b.space_ && a.field_ == b.field_ && a.terms_ == b.terms_;
}

Polynomial lin(const FieldValue& alpha, const Polynomial& p, const Polynomial& q) {
  if (p.field() != q.field() || alpha.kind() != p.field())
    throw EvalError("field mismatch in lin");
  if (p.space() != q.space()) throw EvalError("space mismatch in lin");
  std::vector<Polynomial::Term> terms;
  terms.reserve(p.terms().size() + q.terms().size());
  for (const auto& [x, c] : p.terms()) terms.emplace_back(x, alpha * c);
  for (const auto& t : q.terms()) terms.push_back(t);
  return Polynomial::from_terms(p.space(), p.field(), std::move(terms));
}

FieldValue pair(const Polynomial& p, const Series& f) {
  if (p.field() != f.field()) throw EvalError("field mismatch in pair");
  if (p.space() != f.space()) throw EvalError("space mismatch in pair");
  FieldValue acc = FieldValue::zero(p.field());
  for (const auto& [x, c] : p.terms()) acc = acc + c * f.coeff(x);
  return acc;
}

}  // namespace fps
