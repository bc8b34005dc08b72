#pragma once

#include <utility>
#include <vector>

#include "fps/field.hpp"
#include "fps/indices.hpp"

namespace fps {

class Series;

// A finitely supported map from an index space into a field, stored as
// canonically ordered (index, nonzero coefficient) terms. Immutable.
class Polynomial {
 public:
  using Term = std::pair<Index, FieldValue>;

  Polynomial(IndexSpace space, FieldKind field)
      : space_(std::move(space)), field_(field) {}

  // delta at x: coefficient 1 there, 0 elsewhere
  static Polynomial dirac(const IndexSpace& space, const Index& x, FieldKind field);

  // Sorts, merges duplicate indices, drops zero coefficients.
  static Polynomial from_terms(const IndexSpace& space, FieldKind field,
                               std::vector<Term> terms);

  const IndexSpace& space() const { return space_; }
  FieldKind field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::vector<Index> support() const;
  FieldValue coeff(const Index& x) const;  // zero when absent

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  IndexSpace space_;
  FieldKind field_;
  std::vector<Term> terms_;
};

// alpha * p + q
Polynomial lin(const FieldValue& alpha, const Polynomial& p, const Polynomial& q);

// The dual pairing <p, f> = sum over supp(p) of p(x) * f(x).
// Always a finite sum; exact over exact fields.
FieldValue pair(const Polynomial& p, const Series& f);

}  // namespace fps
