#include <algorithm>
#include <functional>

#include "suzuki/field.hpp"

namespace suzuki {

UPoly::UPoly(std::vector<Fq> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

void UPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Fq UPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return {};
  return coeffs_[static_cast<std::size_t>(i)];
}

Fq UPoly::operator()(Fq x) const {
  Fq acc{0, x.modulus()};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  const Fq inv = leading().inverse();
  std::vector<Fq> out = coeffs_;
  for (auto& c : out) c *= inv;
  return UPoly(std::move(out));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Fq> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  }
  return UPoly(std::move(out));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Fq> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return UPoly(std::move(out));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw FieldError("polynomial division by zero");
  std::vector<Fq> rem = a.coeffs_;
  const int db = b.degree();
  if (a.degree() < db) return {UPoly{}, a};
  std::vector<Fq> quot(static_cast<std::size_t>(a.degree() - db + 1));
  const Fq lead_inv = b.leading().inverse();
  for (int i = a.degree(); i >= db; --i) {
    const Fq c = rem[static_cast<std::size_t>(i)] * lead_inv;
    quot[static_cast<std::size_t>(i - db)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(i - db + j)] += c * b.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& m) {
  return UPoly::divmod(a * b, m).second;
}

// Splits a monic squarefree product of distinct linear factors into roots.
void split_linear(const FieldParams& field, const UPoly& g, Rng& rng,
                  std::vector<Fq>& roots) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    roots.push_back(g.coeff(0));  // monic: y + c has root c in char 2
    return;
  }
  // delta runs over the basis rho * x^k: two distinct roots r, s are told
  // apart by some basis element since Tr(delta (r+s)) is a nonzero
  // functional, so n attempts always suffice.
  const int budget = 3 * field.n();
  const Fq rho = field.random_nonzero(rng);
  const Fq x = field.n() > 1 ? field.element(2) : field.one();
  Fq delta = rho;
  for (int attempt = 0; attempt < budget; ++attempt) {
    if (attempt % field.n() == 0) delta = rho;
    // Tr(delta*y) mod g: each root r contributes the GF(2)-value Tr(delta*r).
    const UPoly delta_y({field.zero(), delta});
    delta *= x;
    UPoly power = delta_y;
    UPoly trace = delta_y;
    for (int i = 1; i < field.n(); ++i) {
      power = mulmod(power, power, g);
      trace = trace + power;
    }
    const UPoly h = UPoly::gcd(g, trace);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(field, h, rng, roots);
      split_linear(field, UPoly::divmod(g, h).first.monic(), rng, roots);
      return;
    }
  }
  throw FieldError("root splitting budget exhausted");
}

}  // namespace

std::vector<Fq> roots_in_field(const FieldParams& field, const UPoly& p,
                               Rng& rng) {
  if (p.is_zero()) throw FieldError("roots of the zero polynomial");
  if (p.degree() == 0) return {};
  const UPoly f = p.monic();

  // gcd(f, y^q - y) collects the distinct roots in GF(q).
  const UPoly y({field.zero(), field.one()});
  UPoly power = UPoly::divmod(y, f).second;
  for (int i = 0; i < field.n(); ++i) power = mulmod(power, power, f);
  const UPoly g = UPoly::gcd(f, power + y);

  std::vector<Fq> roots;
  if (!g.is_zero()) split_linear(field, g, rng, roots);
  for (auto& r : roots) r = field.element(r.bits());
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace suzuki
