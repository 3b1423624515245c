#include "suzuki/field.hpp"

#include <bit>
#include <cstdio>
#include <sstream>

namespace suzuki {

namespace {

int degree_of(std::uint64_t modulus) {
  return modulus ? std::bit_width(modulus) - 1 : 0;
}

// Reduces a product of two residues (degree <= 2n-2) modulo `modulus`.
// The modulus is x^n + r(x) with sparse low part r, so folding the high
// part through r converges in a few rounds.
std::uint64_t reduce(u128 product, std::uint64_t modulus) {
  const int n = degree_of(modulus);
  const std::uint64_t low_part = modulus ^ (std::uint64_t{1} << n);
  const u128 mask = (u128{1} << n) - 1;
  while (product >> n) {
    const auto high = static_cast<std::uint64_t>(product >> n);
    product &= mask;
    for (std::uint64_t r = low_part; r; r &= r - 1) {
      product ^= u128{high} << std::countr_zero(r);
    }
  }
  return static_cast<std::uint64_t>(product);
}

}  // namespace

u128 clmul(std::uint64_t a, std::uint64_t b) {
  if (std::popcount(a) < std::popcount(b)) std::swap(a, b);
  u128 acc = 0;
  const u128 wide = a;
  for (; b; b &= b - 1) acc ^= wide << std::countr_zero(b);
  return acc;
}

int Fq::degree() const { return degree_of(modulus_); }

Fq operator*(Fq a, Fq b) {
  const std::uint64_t modulus = a.modulus_ ? a.modulus_ : b.modulus_;
  if (a.bits_ == 0 || b.bits_ == 0) return {0, modulus};
  return {reduce(clmul(a.bits_, b.bits_), modulus), modulus};
}

Fq Fq::pow(u128 e) const {
  Fq result{1, modulus_};
  Fq base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base = base.square();
  }
  return result;
}

Fq Fq::inverse() const {
  if (bits_ == 0) throw FieldError("inverse of zero");
  // x^(q-2)
  const int n = degree();
  return pow((u128{1} << n) - 2);
}

Fq Fq::pow_signed(std::int64_t e) const {
  if (e >= 0) return pow(static_cast<u128>(e));
  return inverse().pow(static_cast<u128>(-(e + 1)) + 1);
}

namespace {
Fq repeated_square(Fq x, int times) {
  for (int i = 0; i < times; ++i) x = x.square();
  return x;
}
}  // namespace

Fq Fq::twist() const { return repeated_square(*this, (degree() - 1) / 2 + 1); }
Fq Fq::half_twist() const { return repeated_square(*this, (degree() - 1) / 2); }
Fq Fq::sqrt() const { return repeated_square(*this, degree() - 1); }

bool Fq::trace() const {
  Fq acc = *this;
  Fq power = *this;
  for (int i = 1; i < degree(); ++i) {
    power = power.square();
    acc += power;
  }
  return acc.bits_ != 0;
}

std::string Fq::to_hex() const {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(bits_));
  return buf;
}

// GF(2)[x] helpers for the irreducibility test -----------------------------

namespace {

std::uint64_t gf2_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f) {
  return reduce(clmul(a, b), f);
}

std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t f) {
  const int df = degree_of(f);
  while (a && static_cast<int>(std::bit_width(a)) - 1 >= df) {
    a ^= f << (std::bit_width(a) - 1 - df);
  }
  return a;
}

std::uint64_t gf2_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = gf2_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

bool is_irreducible_gf2(std::uint64_t poly) {
  const int n = degree_of(poly);
  if (n < 1 || n > 63) return false;
  if (n == 1) return true;
  if ((poly & 1) == 0) return false;
  // Rabin: x^(2^n) = x mod f, and gcd(x^(2^(n/p)) - x, f) = 1 for p | n.
  auto frobenius = [&](int k) {
    std::uint64_t y = 2;
    for (int i = 0; i < k; ++i) y = gf2_mulmod(y, y, poly);
    return y;
  };
  if (frobenius(n) != 2) return false;
  for (std::uint64_t p : distinct_primes(static_cast<std::uint64_t>(n))) {
    if (gf2_gcd(poly, frobenius(n / static_cast<int>(p)) ^ 2) != 1) return false;
  }
  return true;
}

std::uint64_t choose_modulus(int degree) {
  if (degree < 1 || degree > 63) throw FieldError("unsupported degree");
  const std::uint64_t top = std::uint64_t{1} << degree;
  for (int k = 1; k < degree; ++k) {
    const std::uint64_t f = top | (std::uint64_t{1} << k) | 1;
    if (is_irreducible_gf2(f)) return f;
  }
  // Pentanomials x^n + x^a + x^b + x^c + 1, a > b > c >= 1, in increasing
  // encoding order: a is most significant, then b, then c.
  for (int a = 3; a < degree; ++a) {
    for (int b = 2; b < a; ++b) {
      for (int c = 1; c < b; ++c) {
        const std::uint64_t f = top | (std::uint64_t{1} << a) |
                                (std::uint64_t{1} << b) |
                                (std::uint64_t{1} << c) | 1;
        if (is_irreducible_gf2(f)) return f;
      }
    }
  }
  throw FieldError("no irreducible trinomial or pentanomial");
}

// FieldParams ---------------------------------------------------------------

FieldParams build_field(int m) {
  if (m < 1) throw FieldError("m must be at least 1 (q = 2 is excluded)");
  if (m > FieldParams::kMaxM) throw FieldError("m too large");
  FieldParams f;
  f.m_ = m;
  f.modulus_ = choose_modulus(2 * m + 1);
  f.factors_ = factor_u64(f.q() - 1);
  f.primitive_ = primitive_element(f);

  // x^(t*t) = x^2 on a deterministic sample.
  Rng rng(0x5eed0000ULL + static_cast<std::uint64_t>(m));
  for (int i = 0; i < 16; ++i) {
    const Fq x = f.random(rng);
    if (x.twist().twist() != x.square()) {
      throw FieldError("twist identity failed");
    }
  }
  return f;
}

Fq FieldParams::element(std::uint64_t bits) const {
  if (bits >> n()) throw FieldError("element out of range");
  return {bits, modulus_};
}

Fq FieldParams::random(Rng& rng) const { return {rng.below(q()), modulus_}; }

Fq FieldParams::random_nonzero(Rng& rng) const {
  return {1 + rng.below(q() - 1), modulus_};
}

Fq FieldParams::parse_hex(const std::string& text) const {
  std::size_t used = 0;
  std::uint64_t bits = 0;
  try {
    bits = std::stoull(text, &used, 16);
  } catch (const std::exception&) {
    throw FieldError("bad field element: " + text);
  }
  if (used != text.size()) throw FieldError("bad field element: " + text);
  return element(bits);
}

std::uint64_t FieldParams::order(Fq x) const {
  if (x.is_zero()) throw FieldError("order of zero");
  std::uint64_t order = q() - 1;
  for (const auto& [p, e] : factors_) {
    for (int i = 0; i < e; ++i) {
      if (x.pow(order / p).is_one()) {
        order /= p;
      } else {
        break;
      }
    }
  }
  return order;
}

std::string FieldParams::to_string() const {
  std::ostringstream os;
  os << '{' << m_ << ", " << Fq(modulus_, 0).to_hex() << '}';
  return os.str();
}

FieldParams parse_field(const std::string& text) {
  int m = 0;
  unsigned long long modulus = 0;
  if (std::sscanf(text.c_str(), " { %d , %llx }", &m, &modulus) != 2) {
    throw FieldError("bad field description: " + text);
  }
  FieldParams f = build_field(m);
  if (f.modulus() != modulus) {
    throw FieldError("modulus differs from the canonical choice");
  }
  return f;
}

std::vector<PrimePower> factor_qminus1(const FieldParams& field) {
  return field.qm1_factors();
}

Fq primitive_element(const FieldParams& field) {
  const std::uint64_t qm1 = field.q() - 1;
  for (std::uint64_t bits = 2; bits < field.q(); ++bits) {
    const Fq w = field.element(bits);
    bool generates = true;
    for (const auto& pp : field.qm1_factors()) {
      if (w.pow(qm1 / pp.prime).is_one()) {
        generates = false;
        break;
      }
    }
    if (generates) return w;
  }
  // q - 1 = 1 never happens for m >= 1; GF(q)^x is cyclic so we never get here.
  throw FieldError("no primitive element");
}

}  // namespace suzuki
