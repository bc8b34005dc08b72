#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fps/polynomial.hpp"
#include "fps/series.hpp"

namespace fps {

// A linear functional on the series space. Either the pairing against a
// fixed polynomial (the continuous case) or an opaque black box evaluated
// only through calls.
class Functional {
 public:
  static Functional pairing(Polynomial p);
  static Functional black_box(IndexSpace space, FieldKind field,
                              std::function<FieldValue(const Series&)> fn);

  FieldValue operator()(const Series& f) const;

  bool is_pairing() const { return poly_.has_value(); }
  const Polynomial& poly() const;
  const IndexSpace& space() const { return space_; }
  FieldKind field() const { return field_; }

 private:
  Functional(IndexSpace s, FieldKind f) : space_(std::move(s)), field_(f) {}
  IndexSpace space_;
  FieldKind field_;
  std::optional<Polynomial> poly_;
  std::function<FieldValue(const Series&)> fn_;
};

// The canonical map from polynomials into the dual: p onto <p, .>.
Functional phi(Polynomial p);

// Probe a functional on the deltas of the first `horizon` indices and
// collect the detected coefficients into a polynomial. `exhausted` reports
// whether the final half of the probe range was silent; a functional
// answering on infinitely many deltas keeps producing support forever and
// is thereby exposed as lying outside the range of phi at every horizon.
struct DualProbeReport {
  std::uint64_t probed = 0;
  bool exhausted = false;
};
struct DualProbe {
  Polynomial poly;
  DualProbeReport report;
};
DualProbe extract_poly(const Functional& ell, std::uint64_t horizon);

// Extend a functional along coordinatewise limits: evaluate the scalar
// family f(x) * ell(delta_x) over the first `coord_horizon` indices and
// report its stabilization under d. The value is the full probed sum.
struct ExtensionResult {
  FieldValue value;
  SumStatus status = SumStatus::Inconclusive;
  std::uint64_t terms = 0;
  std::uint64_t active = 0;
};
ExtensionResult complete_extend(const Functional& ell, const Series& f,
                                std::uint64_t coord_horizon, const FieldDescriptor& d);

// Continuity witness for the pairing against p, per topology:
// a finite control support for the exact topologies, a Lipschitz bound
// (the coefficient 1-norm) for the archimedean one. Indiscrete target
// topologies admit no such witness and are rejected.
struct ContinuityModulus {
  TopologyKind topology = TopologyKind::Discrete;
  std::vector<Index> control_support;
  double lipschitz = 0.0;  // archimedean only
};
ContinuityModulus continuity_modulus(const Polynomial& p, const FieldDescriptor& d);

}  // namespace fps
