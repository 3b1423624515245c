#include <cmath>
#include <unordered_map>

#include "suzuki/field.hpp"

namespace suzuki {

namespace {

constexpr std::uint64_t kMaxBabySteps = std::uint64_t{1} << 26;

// x in [0, p) with gen^x = target, where gen has prime order p.
std::optional<std::uint64_t> baby_giant(Fq gen, Fq target, std::uint64_t p) {
  auto steps = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(p))));
  while (steps * steps < p) ++steps;
  if (steps > kMaxBabySteps) throw FieldError("discrete log table too large");

  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  baby.reserve(steps * 2);
  Fq power{1, gen.modulus()};
  for (std::uint64_t j = 0; j < steps; ++j) {
    baby.emplace(power.bits(), j);
    power *= gen;
  }
  const Fq giant = gen.pow(steps).inverse();
  Fq y = target;
  for (std::uint64_t i = 0; i <= steps; ++i) {
    if (auto it = baby.find(y.bits()); it != baby.end()) {
      return (i * steps + it->second) % p;
    }
    y *= giant;
  }
  return std::nullopt;
}

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n) {
  // Extended Euclid on signed 128-bit values.
  __int128 t = 0, new_t = 1, r = n, new_r = a % n;
  while (new_r != 0) {
    const __int128 quotient = r / new_r;
    t -= quotient * new_t;
    std::swap(t, new_t);
    r -= quotient * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += n;
  return static_cast<std::uint64_t>(t);
}

}  // namespace

std::optional<std::uint64_t> discrete_log(const FieldParams& field, Fq base,
                                          Fq target) {
  if (base.is_zero() || target.is_zero()) {
    throw FieldError("discrete log of zero");
  }
  const std::uint64_t order = field.order(base);
  if (!target.pow(order).is_one()) return std::nullopt;

  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;
  for (const auto& [p, qm1_mult] : field.qm1_factors()) {
    int e = 0;
    for (std::uint64_t rest = order; rest % p == 0; rest /= p) ++e;
    if (e == 0) continue;
    const std::uint64_t pe = ipow(p, e);
    const Fq g = base.pow(order / pe);
    const Fq h = target.pow(order / pe);
    const Fq gamma = g.pow(pe / p);  // order p

    // Digits of the exponent in base p.
    std::uint64_t x = 0;
    std::uint64_t pk = 1;
    for (int k = 0; k < e; ++k) {
      const Fq shifted = (g.pow(x).inverse() * h).pow(pe / pk / p);
      const auto digit = baby_giant(gamma, shifted, p);
      if (!digit) return std::nullopt;
      x += *digit * pk;
      pk *= p;
    }

    // Chinese remaindering with the moduli seen so far.
    const u128 combined_mod = u128{modulus} * pe;
    const std::uint64_t diff = (x + pe - residue % pe) % pe;
    const std::uint64_t step =
        static_cast<std::uint64_t>(u128{diff} * inverse_mod(modulus % pe, pe) % pe);
    residue = static_cast<std::uint64_t>((u128{residue} + u128{modulus} * step) % combined_mod);
    modulus = static_cast<std::uint64_t>(combined_mod);
  }
  if (base.pow(residue) != target) return std::nullopt;
  return residue;
}

}  // namespace suzuki
