#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fps/duality.hpp"
#include "oracles.hpp"

using namespace fps;

namespace {

const IndexSpace kAb = IndexSpace::free_monoid({"a", "b"});
const IndexSpace kNat = IndexSpace::naturals();
const FieldKind kQ = field_q();

FieldValue q(long num, unsigned long den = 1) { return FieldValue::rational(num, den); }

}  // namespace

TEST_CASE("phi evaluates as the pairing") {
  Polynomial p = Polynomial::from_terms(
      kAb, kQ, {{kAb.parse_index("a"), q(2)}, {kAb.parse_index("b"), q(3)}});
  Functional ell = phi(p);
  CHECK(ell.is_pairing());
  CHECK(ell.poly() == p);
  CHECK(ell(Series::all_ones(kAb, kQ)) == q(5));
  CHECK(ell(Series::zero(kAb, kQ)).is_zero());

  CHECK_THROWS_AS(ell(Series::zero(kNat, kQ)), EvalError);
  CHECK_THROWS_AS(ell(Series::zero(kAb, field_fp(7))), EvalError);
}

TEST_CASE("black boxes validate their outputs") {
  Functional ell = Functional::black_box(kAb, kQ, [](const Series& f) {
    return f.coeff(Index{Word{}});
  });
  CHECK_FALSE(ell.is_pairing());
  CHECK_THROWS_AS(ell.poly(), EvalError);
  CHECK(ell(Series::all_ones(kAb, kQ)) == q(1));

  Functional bad = Functional::black_box(kAb, kQ, [](const Series&) {
    return FieldValue::residue(1, 7);
  });
  CHECK_THROWS_AS(bad(Series::zero(kAb, kQ)), EvalError);
}

TEST_CASE("extraction recovers the pairing polynomial") {
  oracle::Rng rng(0x5eed40);
  for (FieldKind k : {kQ, field_fp(7)}) {
    for (int rep = 0; rep < 40; ++rep) {
      Polynomial p = oracle::rand_poly(rng, kAb, k, 6, 20);
      DualProbe probe = extract_poly(phi(p), 64);
      CHECK(probe.poly == p);  // supports live in the first 20 indices
      CHECK(probe.report.probed == 64);
      CHECK(probe.report.exhausted);
    }
  }
}

TEST_CASE("extraction on the naturals") {
  Polynomial p = Polynomial::from_terms(
      kNat, kQ, {{Index{std::uint64_t{0}}, q(1)}, {Index{std::uint64_t{9}}, q(-2)}});
  DualProbe probe = extract_poly(phi(p), 40);
  CHECK(probe.poly == p);
  CHECK(probe.report.exhausted);  // last hit at position 10 <= 20

  // the same poly probed to 12: the hit at 10 falls in the final half
  probe = extract_poly(phi(p), 12);
  CHECK(probe.poly == p);
  CHECK_FALSE(probe.report.exhausted);

  CHECK_THROWS_AS(extract_poly(phi(p), 0), EvalError);
}

TEST_CASE("a functional with unbounded support never exhausts") {
  // sums every coefficient it can see: answers 1 on every dirac
  Functional ell = Functional::black_box(kNat, kQ, [](const Series& f) {
    const Polynomial* p = f.as_polynomial();
    if (!p) throw EvalError("opaque argument");
    FieldValue acc = FieldValue::zero(f.field());
    for (const auto& [x, c] : p->terms()) acc = acc + c;
    return acc;
  });
  for (std::uint64_t h : {2u, 10u, 100u}) {
    DualProbe probe = extract_poly(ell, h);
    CHECK(probe.poly.terms().size() == h);
    CHECK_FALSE(probe.report.exhausted);
  }
}

TEST_CASE("trivial monoid probes stop at the unit") {
  IndexSpace triv = IndexSpace::free_monoid({});
  Polynomial p = Polynomial::from_terms(triv, kQ, {{Index{Word{}}, q(4)}});
  DualProbe probe = extract_poly(phi(p), 50);
  CHECK(probe.poly == p);
  CHECK(probe.report.probed == 1);
}

TEST_CASE("extension of a pairing stabilizes exactly") {
  Polynomial p = Polynomial::from_terms(
      kNat, kQ, {{Index{std::uint64_t{1}}, q(2)}, {Index{std::uint64_t{3}}, q(1, 2)}});
  Series f = Series::from_oracle(kNat, kQ, [](const Index& x) {
    return FieldValue::rational(static_cast<long>(std::get<std::uint64_t>(x)));
  });
  auto out = complete_extend(phi(p), f, 32, FieldDescriptor::discrete(kQ));
  CHECK(out.status == SumStatus::ConvergedExactly);
  CHECK(out.value == q(2) * q(1) + q(1, 2) * q(3));
  CHECK(out.terms == 32);
  CHECK(out.active == 2);
  CHECK(out.value == pair(p, f));  // agrees with the direct pairing

  CHECK_THROWS_AS(complete_extend(phi(p), f, 0, FieldDescriptor::discrete(kQ)), EvalError);
  CHECK_THROWS_AS(complete_extend(phi(p), Series::zero(kNat, field_fp(7)), 8,
                                  FieldDescriptor::discrete(kQ)),
                  EvalError);
}

TEST_CASE("extension under the p-adic descriptor reports tolerance") {
  Polynomial p = Polynomial::from_terms(kNat, kQ, {{Index{std::uint64_t{0}}, q(1)}});
  Series f = Series::all_ones(kNat, kQ);
  auto out = complete_extend(phi(p), f, 16, FieldDescriptor::padic(5, 2));
  CHECK(out.status == SumStatus::ConvergedWithinTolerance);
  CHECK(out.value == q(1));
}

TEST_CASE("extension against an everywhere-active black box diverges") {
  Functional ones = Functional::black_box(kNat, kQ, [](const Series& f) {
    const Polynomial* p = f.as_polynomial();
    if (!p) throw EvalError("opaque argument");
    FieldValue acc = FieldValue::zero(f.field());
    for (const auto& [x, c] : p->terms()) acc = acc + c;
    return acc;
  });
  auto out = complete_extend(ones, Series::all_ones(kNat, kQ), 16,
                             FieldDescriptor::discrete(kQ));
  CHECK(out.status == SumStatus::DivergentAtHorizon);
  CHECK(out.active == 16);
  CHECK(out.value == q(16));
}

TEST_CASE("extension value matches the pairing on random data") {
  oracle::Rng rng(0x5eed41);
  for (int rep = 0; rep < 30; ++rep) {
    Polynomial p = oracle::rand_poly(rng, kNat, kQ, 5, 20);
    Polynomial fp = oracle::rand_poly(rng, kNat, kQ, 5, 20);
    Series f = Series::embed(fp);
    auto out = complete_extend(phi(p), f, 24, FieldDescriptor::discrete(kQ));
    CHECK(out.value == pair(p, f));
    CHECK(out.status == SumStatus::ConvergedExactly);
  }
}

TEST_CASE("continuity witnesses per topology") {
  Polynomial p = Polynomial::from_terms(
      kAb, kQ, {{kAb.parse_index("a"), q(2)}, {kAb.parse_index("b"), q(3)}});
  auto disc = continuity_modulus(p, FieldDescriptor::discrete(kQ));
  CHECK(disc.topology == TopologyKind::Discrete);
  REQUIRE(disc.control_support.size() == 2);
  CHECK(kAb.index_text(disc.control_support[0]) == "a");
  CHECK(kAb.index_text(disc.control_support[1]) == "b");

  auto padic = continuity_modulus(p, FieldDescriptor::padic(5, 2));
  CHECK(padic.control_support.size() == 2);

  Polynomial pr = Polynomial::from_terms(
      kAb, field_r64(),
      {{kAb.parse_index("a"), FieldValue::real(2.0)}, {kAb.parse_index("b"), FieldValue::real(-3.0)}});
  auto arch = continuity_modulus(pr, FieldDescriptor::archimedean(1e-6));
  CHECK(arch.topology == TopologyKind::Archimedean);
  CHECK(arch.lipschitz == 5.0);
  CHECK(arch.control_support.empty());

  CHECK_THROWS_AS(continuity_modulus(p, FieldDescriptor::indiscrete(kQ)), EvalError);
  CHECK_THROWS_AS(continuity_modulus(p, FieldDescriptor::archimedean(1e-6)), EvalError);
}

TEST_CASE("the lipschitz bound controls the pairing on random data") {
  oracle::Rng rng(0x5eed42);
  FieldKind r = field_r64();
  for (int rep = 0; rep < 60; ++rep) {
    Polynomial p = oracle::rand_poly(rng, kNat, r, 6, 12);
    double l = continuity_modulus(p, FieldDescriptor::archimedean(1e-6)).lipschitz;
    Series f = Series::embed(oracle::rand_poly(rng, kNat, r, 6, 12));
    Series g = Series::embed(oracle::rand_poly(rng, kNat, r, 6, 12));
    double gap = 0;
    for (std::uint64_t i = 0; i < 12; ++i) {
      Index x{i};
      gap = std::max(gap, std::fabs(f.coeff(x).dbl() - g.coeff(x).dbl()));
    }
    double diff = std::fabs(pair(p, f).dbl() - pair(p, g).dbl());
    CHECK(diff <= l * gap + 1e-12);
  }
}
