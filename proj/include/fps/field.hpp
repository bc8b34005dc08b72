#pragma once

#include <cstdint>
#include <gmpxx.h>

#include <limits>
#include <string>
#include <string_view>
#include <variant>

#include "fps/errors.hpp"

namespace fps {

enum class FieldTag { Q, Fp, R64 };

// A coefficient field: the rationals, a prime field F_p, or 64-bit floats.
struct FieldKind {
  FieldTag tag = FieldTag::Q;
  std::uint64_t p = 0;  // modulus, meaningful only for Fp

  friend bool operator==(const FieldKind&, const FieldKind&) = default;
};

FieldKind field_q();
FieldKind field_fp(std::uint64_t p);  // p must be prime, 2 <= p < 2^62
FieldKind field_r64();

bool is_exact(FieldKind k);
std::string field_name(FieldKind k);              // "Q", "F7", "R64"
FieldKind parse_field_name(std::string_view s);   // accepts "R" as alias for "R64"

// One scalar. Carries its field; arithmetic across fields throws EvalError.
class FieldValue {
 public:
  FieldValue() : kind_{field_q()}, rep_{mpq_class{0}} {}

  static FieldValue rational(mpq_class q);
  static FieldValue rational(long num, unsigned long den = 1);
  static FieldValue residue(std::uint64_t v, std::uint64_t p);  // reduced mod p
  static FieldValue real(double x);
  static FieldValue zero(FieldKind k);
  static FieldValue one(FieldKind k);

  FieldKind kind() const { return kind_; }
  bool is_zero() const;

  const mpq_class& rat() const;  // Q only
  std::uint64_t res() const;     // Fp only
  double dbl() const;            // R64 only

  friend FieldValue operator+(const FieldValue& a, const FieldValue& b);
  friend FieldValue operator-(const FieldValue& a, const FieldValue& b);
  friend FieldValue operator*(const FieldValue& a, const FieldValue& b);
  FieldValue operator-() const;

  // Structural equality; exact in Q and F_p, bitwise on doubles.
  friend bool operator==(const FieldValue& a, const FieldValue& b);
  friend bool operator!=(const FieldValue& a, const FieldValue& b) { return !(a == b); }

 private:
  FieldKind kind_;
  std::variant<mpq_class, std::uint64_t, double> rep_;
};

// Multiplicative inverse; EvalError on zero.
FieldValue inv(const FieldValue& a);

enum class TopologyKind { Discrete, Archimedean, Padic, Indiscrete };

inline constexpr long kValInfinity = std::numeric_limits<long>::max();

// v_p of a rational; kValInfinity for zero. p must be prime.
long padic_valuation(const mpq_class& q, std::uint64_t p);

// A field together with one of the supported field topologies.
//
//   discrete    exact fields only, nearness is equality
//   arch:<eps>  R64 only, |a-b| < eps
//   padic:p:k   Q only, v_p(a-b) >= k
//   indiscrete  any field, everything is near everything (not Hausdorff)
struct FieldDescriptor {
  FieldKind field;
  TopologyKind topology = TopologyKind::Discrete;
  double eps = 1e-9;         // Archimedean radius
  std::uint64_t prime = 0;   // Padic prime
  long threshold = 1;        // Padic valuation threshold

  static FieldDescriptor discrete(FieldKind k);
  static FieldDescriptor archimedean(double eps = 1e-9);
  static FieldDescriptor padic(std::uint64_t p, long k);
  static FieldDescriptor indiscrete(FieldKind k);

  bool hausdorff() const { return topology != TopologyKind::Indiscrete; }

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

// Nearness of a and b under d. Both values must live in d's field.
bool near(const FieldValue& a, const FieldValue& b, const FieldDescriptor& d);
bool near_zero(const FieldValue& a, const FieldDescriptor& d);

// Scalar literals relative to an ambient field: "3/4", "-2", "0.5", "1e-9".
FieldValue parse_scalar(std::string_view text, FieldKind k);
std::string scalar_text(const FieldValue& v);  // canonical, round-trips exactly

// Tagged literals: "Q:3/4", "F7:3", "R:0.5".
FieldValue parse_value(std::string_view text);
std::string value_text(const FieldValue& v);

// Descriptor literals: "Q/discrete", "Q/padic:5:3", "R64/arch:1e-9", "F7/indiscrete".
FieldDescriptor parse_descriptor(std::string_view text);
std::string descriptor_text(const FieldDescriptor& d);

}  // namespace fps
