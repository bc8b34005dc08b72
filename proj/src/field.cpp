#include "fps/field.hpp"

#include <gmp.h>

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace fps {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

bool probably_prime(std::uint64_t p) {
  mpz_class z = mpz_class{} + static_cast<unsigned long>(p);
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  // extended Euclid; p prime and a != 0 mod p
  __int128 t = 0, nt = 1;
  __int128 r = p, nr = a;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

[[noreturn]] void mixed_fields(const char* op) {
  throw EvalError(std::string("field mismatch in ") + op);
}

std::string double_text(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw EvalError("unprintable double");
  return std::string(buf, end);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

FieldKind field_q() { return {FieldTag::Q, 0}; }

FieldKind field_fp(std::uint64_t p) {
  if (p < 2 || p >= kMaxModulus || !probably_prime(p))
    throw EvalError("modulus must be a prime in [2, 2^62): " + std::to_string(p));
  return {FieldTag::Fp, p};
}

FieldKind field_r64() { return {FieldTag::R64, 0}; }

bool is_exact(FieldKind k) { return k.tag != FieldTag::R64; }

std::string field_name(FieldKind k) {
  switch (k.tag) {
    case FieldTag::Q: return "Q";
    case FieldTag::Fp: return "F" + std::to_string(k.p);
    case FieldTag::R64: return "R64";
  }
  std::abort();
}

FieldKind parse_field_name(std::string_view s) {
  if (s == "Q") return field_q();
  if (s == "R" || s == "R64") return field_r64();
  if (s.size() >= 2 && s[0] == 'F' && all_digits(s.substr(1))) {
    std::uint64_t p = 0;
    auto digits = s.substr(1);
    auto res = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (res.ec == std::errc{} && res.ptr == digits.data() + digits.size()) {
      try {
        return field_fp(p);
      } catch (const EvalError& e) {
        throw InputError(e.what());
      }
    }
  }
  throw InputError("unknown field: " + std::string(s));
}

FieldValue FieldValue::rational(mpq_class q) {
  q.canonicalize();
  FieldValue v;
  v.kind_ = field_q();
  v.rep_ = std::move(q);
  return v;
}

FieldValue FieldValue::rational(long num, unsigned long den) {
  if (den == 0) throw EvalError("zero denominator");
  return rational(mpq_class{num, den});
}

FieldValue FieldValue::residue(std::uint64_t v, std::uint64_t p) {
  FieldKind k = field_fp(p);
  FieldValue r;
  r.kind_ = k;
  r.rep_ = v % p;
  return r;
}

FieldValue FieldValue::real(double x) {
  if (!std::isfinite(x)) throw EvalError("non-finite real");
  FieldValue r;
  r.kind_ = field_r64();
  r.rep_ = x;
  return r;
}

FieldValue FieldValue::zero(FieldKind k) {
  switch (k.tag) {
    case FieldTag::Q: return rational(mpq_class{0});
    case FieldTag::Fp: return residue(0, k.p);
    case FieldTag::R64: return real(0.0);
  }
  std::abort();
}

FieldValue FieldValue::one(FieldKind k) {
  switch (k.tag) {
    case FieldTag::Q: return rational(mpq_class{1});
    case FieldTag::Fp: return residue(1, k.p);
    case FieldTag::R64: return real(1.0);
  }
  std::abort();
}

bool FieldValue::is_zero() const {
  switch (kind_.tag) {
    case FieldTag::Q: return sgn(std::get<mpq_class>(rep_)) == 0;
    case FieldTag::Fp: return std::get<std::uint64_t>(rep_) == 0;
    case FieldTag::R64: return std::get<double>(rep_) == 0.0;
  }
  std::abort();
}

const mpq_class& FieldValue::rat() const {
  if (kind_.tag != FieldTag::Q) throw EvalError("not a rational");
  return std::get<mpq_class>(rep_);
}

std::uint64_t FieldValue::res() const {
  if (kind_.tag != FieldTag::Fp) throw EvalError("not a residue");
  return std::get<std::uint64_t>(rep_);
}

double FieldValue::dbl() const {
  if (kind_.tag != FieldTag::R64) throw EvalError("not a real");
  return std::get<double>(rep_);
}

FieldValue operator+(const FieldValue& a, const FieldValue& b) {
  if (a.kind_ != b.kind_) mixed_fields("+");
  switch (a.kind_.tag) {
    case FieldTag::Q: return FieldValue::rational(a.rat() + b.rat());
    case FieldTag::Fp: {
      std::uint64_t p = a.kind_.p;
      std::uint64_t s = a.res() + b.res();  // p < 2^62, no overflow
      return FieldValue::residue(s >= p ? s - p : s, p);
    }
    case FieldTag::R64: return FieldValue::real(a.dbl() + b.dbl());
  }
  std::abort();
}

FieldValue operator-(const FieldValue& a, const FieldValue& b) { return a + (-b); }

FieldValue operator*(const FieldValue& a, const FieldValue& b) {
  if (a.kind_ != b.kind_) mixed_fields("*");
  switch (a.kind_.tag) {
    case FieldTag::Q: return FieldValue::rational(a.rat() * b.rat());
    case FieldTag::Fp: return FieldValue::residue(mulmod(a.res(), b.res(), a.kind_.p), a.kind_.p);
    case FieldTag::R64: return FieldValue::real(a.dbl() * b.dbl());
  }
  std::abort();
}

FieldValue FieldValue::operator-() const {
  switch (kind_.tag) {
    case FieldTag::Q: return rational(-std::get<mpq_class>(rep_));
    case FieldTag::Fp: {
      std::uint64_t v = std::get<std::uint64_t>(rep_);
      return residue(v == 0 ? 0 : kind_.p - v, kind_.p);
    }
    case FieldTag::R64: return real(-std::get<double>(rep_));
  }
  std::abort();
}

bool operator==(const FieldValue& a, const FieldValue& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_.tag) {
    case FieldTag::Q: return a.rat() == b.rat();
    case FieldTag::Fp: return a.res() == b.res();
    case FieldTag::R64: return a.dbl() == b.dbl();
  }
  std::abort();
}

FieldValue inv(const FieldValue& a) {
  if (a.is_zero()) throw EvalError("division by zero");
  switch (a.kind().tag) {
    case FieldTag::Q: return FieldValue::rational(1 / a.rat());
    case FieldTag::Fp: return FieldValue::residue(invmod(a.res(), a.kind().p), a.kind().p);
    case FieldTag::R64: return FieldValue::real(1.0 / a.dbl());
  }
  std::abort();
}

long padic_valuation(const mpq_class& q, std::uint64_t p) {
  if (sgn(q) == 0) return kValInfinity;
  mpz_class pz = mpz_class{} + static_cast<unsigned long>(p);
  mpz_class tmp;
  long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_num().get_mpz_t(), pz.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), q.get_den().get_mpz_t(), pz.get_mpz_t()));
  return vn - vd;
}

FieldDescriptor FieldDescriptor::discrete(FieldKind k) {
  if (!is_exact(k)) throw EvalError("discrete topology requires an exact field");
  FieldDescriptor d;
  d.field = k;
  d.topology = TopologyKind::Discrete;
  return d;
}

FieldDescriptor FieldDescriptor::archimedean(double eps) {
  if (!(eps > 0) || !std::isfinite(eps)) throw EvalError("archimedean radius must be positive");
  FieldDescriptor d;
  d.field = field_r64();
  d.topology = TopologyKind::Archimedean;
  d.eps = eps;
  return d;
}

FieldDescriptor FieldDescriptor::padic(std::uint64_t p, long k) {
  if (k < 1) throw EvalError("p-adic threshold must be >= 1");
  FieldDescriptor d;
  d.field = field_q();
  d.topology = TopologyKind::Padic;
  d.prime = field_fp(p).p;  // reuses the primality check
  d.threshold = k;
  return d;
}

FieldDescriptor FieldDescriptor::indiscrete(FieldKind k) {
  FieldDescriptor d;
  d.field = k;
  d.topology = TopologyKind::Indiscrete;
  return d;
}

bool near(const FieldValue& a, const FieldValue& b, const FieldDescriptor& d) {
  if (a.kind() != d.field || b.kind() != d.field)
    throw EvalError("values do not live in the descriptor's field");
  switch (d.topology) {
    case TopologyKind::Indiscrete: return true;
    case TopologyKind::Discrete: return a == b;
    case TopologyKind::Archimedean: return std::fabs(a.dbl() - b.dbl()) < d.eps;
    case TopologyKind::Padic: return padic_valuation(a.rat() - b.rat(), d.prime) >= d.threshold;
  }
  std::abort();
}

bool near_zero(const FieldValue& a, const FieldDescriptor& d) {
  return near(a, FieldValue::zero(d.field), d);
}

FieldValue parse_scalar(std::string_view text, FieldKind k) {
  if (text.empty()) throw InputError("empty scalar");
  switch (k.tag) {
    case FieldTag::Q: {
      std::string_view num = text, den;
      if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (!all_digits(den)) throw InputError("malformed rational: " + std::string(text));
      }
      std::string_view mag = num;
      if (!mag.empty() && mag[0] == '-') mag.remove_prefix(1);
      if (!all_digits(mag)) throw InputError("malformed rational: " + std::string(text));
      mpq_class q;
      if (q.set_str(std::string(text), 10) != 0)
        throw InputError("malformed rational: " + std::string(text));
      if (sgn(q.get_den()) == 0) throw InputError("zero denominator: " + std::string(text));
      return FieldValue::rational(std::move(q));
    }
    case FieldTag::Fp: {
      std::string_view mag = text;
      bool neg = !mag.empty() && mag[0] == '-';
      if (neg) mag.remove_prefix(1);
      if (!all_digits(mag)) throw InputError("malformed residue: " + std::string(text));
      mpz_class z(std::string(mag), 10);
      mpz_class pz = mpz_class{} + static_cast<unsigned long>(k.p);
      z %= pz;
      if (neg && sgn(z) != 0) z = pz - z;
      return FieldValue::residue(z.get_ui(), k.p);
    }
    case FieldTag::R64: {
      double x = 0;
      auto res = std::from_chars(text.data(), text.data() + text.size(), x);
      if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(x))
        throw InputError("malformed real: " + std::string(text));
      return FieldValue::real(x);
    }
  }
  std::abort();
}

std::string scalar_text(const FieldValue& v) {
  switch (v.kind().tag) {
    case FieldTag::Q: return v.rat().get_str();
    case FieldTag::Fp: return std::to_string(v.res());
    case FieldTag::R64: return double_text(v.dbl());
  }
  std::abort();
}

FieldValue parse_value(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw InputError("expected <field>:<scalar>, got: " + std::string(text));
  FieldKind k = parse_field_name(text.substr(0, colon));
  return parse_scalar(text.substr(colon + 1), k);
}

std::string value_text(const FieldValue& v) {
  // value literals use the short "R" tag; descriptors spell out "R64"
  std::string tag = v.kind().tag == FieldTag::R64 ? "R" : field_name(v.kind());
  return tag + ":" + scalar_text(v);
}

FieldDescriptor parse_descriptor(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw InputError("expected <field>/<topology>, got: " + std::string(text));
  FieldKind k = parse_field_name(text.substr(0, slash));
  std::string_view top = text.substr(slash + 1);

  auto piece = [&top]() -> std::string_view {
    auto colon = top.find(':');
    std::string_view head = top.substr(0, colon);
    top = colon == std::string_view::npos ? std::string_view{} : top.substr(colon + 1);
    return head;
  };
  std::string_view name = piece();
  try {
    if (name == "discrete") {
      if (!top.empty()) throw InputError("discrete takes no parameters");
      return FieldDescriptor::discrete(k);
    }
    if (name == "indiscrete") {
      if (!top.empty()) throw InputError("indiscrete takes no parameters");
      return FieldDescriptor::indiscrete(k);
    }
    if (name == "arch") {
      if (k.tag != FieldTag::R64) throw InputError("arch topology requires field R64");
      if (top.empty()) return FieldDescriptor::archimedean();
      std::string_view e = piece();
      if (!top.empty()) throw InputError("arch takes at most one parameter");
      double eps = 0;
      auto res = std::from_chars(e.data(), e.data() + e.size(), eps);
      if (res.ec != std::errc{} || res.ptr != e.data() + e.size())
        throw InputError("malformed radius: " + std::string(e));
      return FieldDescriptor::archimedean(eps);
    }
    if (name == "padic") {
      if (k.tag != FieldTag::Q) throw InputError("padic topology requires field Q");
      std::string_view ps = piece();
      std::string_view ks = piece();
      if (ps.empty() || ks.empty() || !top.empty())
        throw InputError("expected padic:<p>:<k>");
      std::uint64_t p = 0;
      long kk = 0;
      auto r1 = std::from_chars(ps.data(), ps.data() + ps.size(), p);
      auto r2 = std::from_chars(ks.data(), ks.data() + ks.size(), kk);
      if (r1.ec != std::errc{} || r1.ptr != ps.data() + ps.size() ||
          r2.ec != std::errc{} || r2.ptr != ks.data() + ks.size())
        throw InputError("malformed padic parameters");
      return FieldDescriptor::padic(p, kk);
    }
  } catch (const EvalError& e) {
    throw InputError(e.what());
  }
  throw InputError("unknown topology: " + std::string(name));
}

std::string descriptor_text(const FieldDescriptor& d) {
  std::string out = field_name(d.field) + "/";
  switch (d.topology) {
    case TopologyKind::Discrete: return out + "discrete";
    case TopologyKind::Indiscrete: return out + "indiscrete";
    case TopologyKind::Archimedean: return out + "arch:" + double_text(d.eps);
    case TopologyKind::Padic:
      return out + "padic:" + std::to_string(d.prime) + ":" + std::to_string(d.threshold);
  }
  std::abort();
}

}  // namespace fps
