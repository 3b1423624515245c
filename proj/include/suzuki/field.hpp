#pragma once

// Arithmetic in GF(2^n), n = 2m+1, in a polynomial basis.
//
// An Fq is a self-contained value: it carries the reduction polynomial next
// to its coefficient mask, so field elements can be multiplied without a
// context object. A default-constructed Fq is the zero of every field.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "suzuki/rng.hpp"

namespace suzuki {

using u128 = unsigned __int128;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Carry-less product of two polynomials over GF(2) of degree < 64.
u128 clmul(std::uint64_t a, std::uint64_t b);

class Fq {
 public:
  constexpr Fq() = default;
  constexpr Fq(std::uint64_t bits, std::uint64_t modulus)
      : bits_(bits), modulus_(modulus) {}

  std::uint64_t bits() const { return bits_; }
  std::uint64_t modulus() const { return modulus_; }
  /// Extension degree n (0 for the context-free zero).
  int degree() const;

  bool is_zero() const { return bits_ == 0; }
  bool is_one() const { return bits_ == 1; }

  friend Fq operator+(Fq a, Fq b) {
    return {a.bits_ ^ b.bits_, a.modulus_ ? a.modulus_ : b.modulus_};
  }
  friend Fq operator-(Fq a, Fq b) { return a + b; }
  friend Fq operator*(Fq a, Fq b);
  friend Fq operator/(Fq a, Fq b) { return a * b.inverse(); }
  Fq& operator+=(Fq o) { return *this = *this + o; }
  Fq& operator-=(Fq o) { return *this = *this + o; }
  Fq& operator*=(Fq o) { return *this = *this * o; }
  Fq& operator/=(Fq o) { return *this = *this / o; }

  friend bool operator==(Fq a, Fq b) { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(Fq a, Fq b) {
    return a.bits_ <=> b.bits_;
  }

  Fq square() const { return *this * *this; }
  Fq inverse() const;
  Fq pow(u128 e) const;
  /// Signed exponent; negative powers go through the inverse.
  Fq pow_signed(std::int64_t e) const;

  /// x -> x^t with t = 2^(m+1): m+1 successive squarings.
  Fq twist() const;
  /// x -> x^(t/2): m successive squarings.
  Fq half_twist() const;
  /// Unique square root, x^(2^(n-1)).
  Fq sqrt() const;
  /// Absolute trace to GF(2).
  bool trace() const;

  /// Lowercase hex of the coefficient mask (bit i is the x^i coefficient).
  std::string to_hex() const;

 private:
  std::uint64_t bits_ = 0;
  std::uint64_t modulus_ = 0;
};

struct PrimePower {
  std::uint64_t prime;
  int multiplicity;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// GF(q), q = 2^(2m+1), together with the Suzuki twist t = 2^(m+1).
class FieldParams {
 public:
  static constexpr int kMaxM = 20;

  int m() const { return m_; }
  int n() const { return 2 * m_ + 1; }
  std::uint64_t q() const { return std::uint64_t{1} << n(); }
  std::uint64_t t() const { return std::uint64_t{1} << (m_ + 1); }
  std::uint64_t modulus() const { return modulus_; }

  Fq zero() const { return {0, modulus_}; }
  Fq one() const { return {1, modulus_}; }
  Fq element(std::uint64_t bits) const;
  Fq random(Rng& rng) const;
  Fq random_nonzero(Rng& rng) const;
  Fq parse_hex(const std::string& text) const;

  /// Prime factorisation of q-1, ascending.
  const std::vector<PrimePower>& qm1_factors() const { return factors_; }
  /// Smallest (by integer encoding) generator of GF(q)^x.
  Fq primitive() const { return primitive_; }

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(Fq x) const;

  /// `{m, modulus-hex}`.
  std::string to_string() const;

  friend bool operator==(const FieldParams& a, const FieldParams& b) {
    return a.m_ == b.m_ && a.modulus_ == b.modulus_;
  }

 private:
  friend FieldParams build_field(int m);
  int m_ = 0;
  std::uint64_t modulus_ = 0;
  std::vector<PrimePower> factors_;
  Fq primitive_;
};

/// Builds GF(2^(2m+1)) using the lowest-weight irreducible modulus (trinomial
/// if one exists, else pentanomial), ties broken by smallest encoding.
FieldParams build_field(int m);

/// Parses `{m, modulus-hex}` and rebuilds the field; the modulus must match
/// the deterministic choice of build_field.
FieldParams parse_field(const std::string& text);

/// True when `poly` (bit i = coefficient of x^i) is irreducible over GF(2).
bool is_irreducible_gf2(std::uint64_t poly);

/// Lowest-weight irreducible polynomial of the given degree (1 <= degree <= 63).
std::uint64_t choose_modulus(int degree);

// Integer helpers -----------------------------------------------------------

bool is_prime_u64(std::uint64_t n);
/// Full factorisation (trial division + Pollard rho), ascending primes.
std::vector<PrimePower> factor_u64(std::uint64_t n);
std::vector<PrimePower> factor_qminus1(const FieldParams& field);
std::vector<std::uint64_t> distinct_primes(std::uint64_t n);

Fq primitive_element(const FieldParams& field);

// Discrete logarithm --------------------------------------------------------

/// Returned when the target is not a power of the base.
struct NotInSubgroup {};

/// Smallest k >= 0 with base^k = target, or NotInSubgroup. Pohlig-Hellman
/// over the factorisation of q-1 with baby-step/giant-step per prime.
std::optional<std::uint64_t> discrete_log(const FieldParams& field, Fq base,
                                          Fq target);

// Univariate polynomials of small degree -------------------------------------

/// Dense polynomial over Fq, coefficients lowest degree first. Trailing zero
/// coefficients are stripped, so the zero polynomial has no coefficients.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Fq> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Fq>& coeffs() const { return coeffs_; }
  Fq coeff(int i) const;
  Fq leading() const { return coeffs_.back(); }
  Fq operator()(Fq x) const;

  UPoly monic() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  /// Quotient and remainder.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  static UPoly gcd(UPoly a, UPoly b);
  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  void normalize();
  std::vector<Fq> coeffs_;
};

/// All roots in GF(q) of a nonzero polynomial, sorted by integer encoding.
/// Uses trace-map equal-degree splitting with a budget of 3*log2(q) random
/// attempts per split; throws FieldError if the budget is exhausted.
std::vector<Fq> roots_in_field(const FieldParams& field, const UPoly& p,
                               Rng& rng);

// Dense binary matrices -------------------------------------------------------

/// Binary matrix with at most 64 columns; row i is a bit mask (bit j = column j).
class BinMat {
 public:
  BinMat() = default;
  BinMat(int rows, int cols);
  static BinMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const { return (rows_bits_[r] >> c) & 1U; }
  void set(int r, int c, bool v);
  std::uint64_t row(int r) const { return rows_bits_[r]; }
  void set_row(int r, std::uint64_t bits);

  friend BinMat operator*(const BinMat& a, const BinMat& b);
  /// Row vector times matrix: XOR of the rows selected by `v`.
  std::uint64_t left_apply(std::uint64_t v) const;
  /// Matrix times column vector.
  std::uint64_t right_apply(std::uint64_t v) const;
  friend bool operator==(const BinMat&, const BinMat&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint64_t> rows_bits_;
};

/// Inverse over GF(2); throws FieldError if singular.
BinMat bin_invert(const BinMat& m);
/// Solves M x = v over GF(2) for square invertible M; throws if singular.
std::uint64_t bin_solve(const BinMat& m, std::uint64_t v);

}  // namespace suzuki
