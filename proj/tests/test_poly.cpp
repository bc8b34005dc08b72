#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fps/polynomial.hpp"
#include "fps/series.hpp"
#include "oracles.hpp"

using namespace fps;

namespace {

const IndexSpace kAb = IndexSpace::free_monoid({"a", "b"});
const FieldKind kQ = field_q();

FieldValue q(long num, unsigned long den = 1) { return FieldValue::rational(num, den); }

Polynomial poly(const IndexSpace& s, std::vector<std::pair<const char*, FieldValue>> terms) {
  std::vector<Polynomial::Term> ts;
  for (auto& [text, c] : terms) ts.emplace_back(s.parse_index(text), c);
  return Polynomial::from_terms(s, ts.empty() ? kQ : ts[0].second.kind(), std::move(ts));
}

}  // namespace

TEST_CASE("dirac") {
  Index x = kAb.parse_index("ab");
  Polynomial d = Polynomial::dirac(kAb, x, kQ);
  CHECK(d.terms().size() == 1);
  CHECK(d.coeff(x) == q(1));
  CHECK(d.coeff(kAb.parse_index("ba")).is_zero());
  CHECK_THROWS_AS(Polynomial::dirac(kAb, Index{std::uint64_t{3}}, kQ), EvalError);
  Polynomial df = Polynomial::dirac(kAb, x, field_fp(7));
  CHECK(df.coeff(x) == FieldValue::residue(1, 7));
}

TEST_CASE("from_terms sorts, merges, and prunes") {
  Polynomial p = poly(kAb, {{"ba", q(2)}, {"a", q(1)}, {"ba", q(-2)}, {"", q(5)}});
  REQUIRE(p.terms().size() == 2);
  CHECK(kAb.index_text(p.terms()[0].first) == "");
  CHECK(p.terms()[0].second == q(5));
  CHECK(kAb.index_text(p.terms()[1].first) == "a");
  CHECK(p.coeff(kAb.parse_index("ba")).is_zero());

  CHECK(poly(kAb, {}).is_zero());
  CHECK(poly(kAb, {{"a", q(0)}}).is_zero());

  CHECK_THROWS_AS(Polynomial::from_terms(kAb, kQ, {{Index{std::uint64_t{1}}, q(1)}}),
                  EvalError);
  CHECK_THROWS_AS(Polynomial::from_terms(kAb, kQ, {{kAb.parse_index("a"),
                                                    FieldValue::residue(1, 7)}}),
                  EvalError);
}

TEST_CASE("equality is structural") {
  Polynomial p = poly(kAb, {{"a", q(1)}, {"b", q(2)}});
  Polynomial r = poly(kAb, {{"b", q(2)}, {"a", q(1)}});
  CHECK(p == r);
  CHECK(p != poly(kAb, {{"a", q(1)}}));
  CHECK(p != Polynomial::from_terms(IndexSpace::free_monoid({"a", "b", "c"}), kQ,
                                    {{kAb.parse_index("a"), q(1)},
                                     {kAb.parse_index("b"), q(2)}}));
}

TEST_CASE("lin") {
  Polynomial p = poly(kAb, {{"a", q(2)}, {"b", q(3)}});
  Polynomial r = poly(kAb, {{"b", q(-6)}, {"ab", q(1)}});
  Polynomial out = lin(q(2), p, r);
  CHECK(out.coeff(kAb.parse_index("a")) == q(4));
  CHECK(out.coeff(kAb.parse_index("b")).is_zero());  // 2*3 + (-6)
  CHECK(out.coeff(kAb.parse_index("ab")) == q(1));
  CHECK(out.terms().size() == 2);

  CHECK_THROWS_AS(lin(FieldValue::residue(1, 7), p, r), EvalError);
  Polynomial other(IndexSpace::naturals(), kQ);
  CHECK_THROWS_AS(lin(q(1), p, other), EvalError);
}

TEST_CASE("lin satisfies the vector space laws on random data") {
  oracle::Rng rng(0x5eed20);
  for (int i = 0; i < 60; ++i) {
    Polynomial p = oracle::rand_poly(rng, kAb, kQ, 5, 15);
    Polynomial r = oracle::rand_poly(rng, kAb, kQ, 5, 15);
    FieldValue alpha = oracle::rand_value(rng, kQ);
    FieldValue beta = oracle::rand_value(rng, kQ);
    Polynomial zero(kAb, kQ);
    // alpha(p + r) == alpha p + alpha r, via lin composition
    Polynomial left = lin(alpha, lin(q(1), p, r), zero);
    Polynomial right = lin(alpha, p, lin(alpha, r, zero));
    CHECK(left == right);
    // (alpha beta) p == alpha (beta p)
    CHECK(lin(alpha * beta, p, zero) == lin(alpha, lin(beta, p, zero), zero));
    // coefficients act pointwise
    for (const Index& x : left.support())
      CHECK(left.coeff(x) == alpha * (p.coeff(x) + r.coeff(x)));
  }
}

TEST_CASE("pairing against a known series") {
  // f(a) = 1/2, f(b) = 1/3, elsewhere anything; <2 da + 3 db, f> = 2
  Series f = Series::from_oracle(kAb, kQ, [](const Index& x) {
    const Word& w = std::get<Word>(x);
    if (w == Word{{0}}) return FieldValue::rational(1, 2);
    if (w == Word{{1}}) return FieldValue::rational(1, 3);
    return FieldValue::rational(7);  // deliberately loud off the support
  });
  Polynomial p = poly(kAb, {{"a", q(2)}, {"b", q(3)}});
  CHECK(pair(p, f) == q(2));
  CHECK(pair(Polynomial(kAb, kQ), f).is_zero());

  Series g = Series::zero(IndexSpace::naturals(), kQ);
  CHECK_THROWS_AS(pair(p, g), EvalError);
  Series h = Series::zero(kAb, field_fp(7));
  CHECK_THROWS_AS(pair(p, h), EvalError);
}

TEST_CASE("pairing is bilinear") {
  oracle::Rng rng(0x5eed21);
  Series ones = Series::all_ones(kAb, kQ);
  for (int i = 0; i < 60; ++i) {
    Polynomial p = oracle::rand_poly(rng, kAb, kQ, 4, 15);
    Polynomial r = oracle::rand_poly(rng, kAb, kQ, 4, 15);
    FieldValue alpha = oracle::rand_value(rng, kQ);
    CHECK(pair(lin(alpha, p, r), ones) == alpha * pair(p, ones) + pair(r, ones));
  }
}

TEST_CASE("pairing against a dirac reads off the coefficient") {
  oracle::Rng rng(0x5eed22);
  for (int i = 0; i < 40; ++i) {
    Polynomial p = oracle::rand_poly(rng, kAb, kQ, 5, 15);
    Index x = kAb.at(rng.below(15));
    CHECK(pair(Polynomial::dirac(kAb, x, kQ), Series::embed(p)) == p.coeff(x));
  }
}
