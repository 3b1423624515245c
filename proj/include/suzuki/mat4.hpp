#pragma once

// 4x4 matrices over GF(q). The group acts on row vectors: v -> v * M.

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "suzuki/field.hpp"

namespace suzuki {

class MatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vec4 = std::array<Fq, 4>;

Vec4 operator*(const Vec4& v, Fq s);
Vec4 operator+(const Vec4& a, const Vec4& b);
bool is_zero(const Vec4& v);

class Mat4 {
 public:
  Mat4() = default;
  explicit Mat4(const std::array<Fq, 16>& entries) : e_(entries) {}

  static Mat4 identity(const FieldParams& field);
  static Mat4 diagonal(Fq a, Fq b, Fq c, Fq d);
  static Mat4 from_rows(const Vec4& r0, const Vec4& r1, const Vec4& r2,
                        const Vec4& r3);

  /// Zero-based (row, column).
  Fq& operator()(int r, int c) { return e_[static_cast<std::size_t>(4 * r + c)]; }
  Fq operator()(int r, int c) const { return e_[static_cast<std::size_t>(4 * r + c)]; }
  Vec4 row(int r) const;
  const std::array<Fq, 16>& entries() const { return e_; }

  friend Mat4 operator*(const Mat4& a, const Mat4& b);
  friend Mat4 operator+(const Mat4& a, const Mat4& b);
  friend Vec4 operator*(const Vec4& v, const Mat4& m);
  Mat4& operator*=(const Mat4& o) { return *this = *this * o; }
  friend bool operator==(const Mat4& a, const Mat4& b) { return a.e_ == b.e_; }

  Mat4 transpose() const;
  Fq trace() const;
  Fq det() const;
  bool is_identity() const;
  bool is_diagonal() const;
  /// Throws MatrixError if singular.
  Mat4 inverse() const;
  /// Characteristic polynomial, monic of degree 4 (signs vanish in char 2).
  UPoly charpoly() const;

  /// Conjugate x^y = y^-1 x y.
  Mat4 conj(const Mat4& y) const { return y.inverse() * *this * y; }

  std::size_t hash() const;
  /// 16 hex entries, row-major, space separated.
  std::string to_hex() const;

 private:
  std::array<Fq, 16> e_{};
};

Mat4 parse_mat4(const FieldParams& field, const std::string& text);

struct Mat4Hash {
  std::size_t operator()(const Mat4& m) const { return m.hash(); }
};

/// [a, b] = a^-1 b^-1 a b.
Mat4 commutator(const Mat4& a, const Mat4& b);

Mat4 mat_pow(const Mat4& a, u128 n);

enum class OrderClass { Identity, Order2, Order4, DividesQm1, Other };
const char* to_string(OrderClass c);

OrderClass order_class(const Mat4& a, const FieldParams& field);

/// Odd-order test valid inside Sz(q): A = I or A^4 != I.
bool has_odd_order(const Mat4& a);

/// (q^2+1)(q-1): a multiple of every odd element order in Sz(q).
u128 odd_order_multiple(const FieldParams& field);
/// A^((N-1)/2) with N = (q^2+1)(q-1). For A of odd order 2k+1 this is A^k,
/// so half_power(A)^2 * A = I.
Mat4 half_power(const Mat4& a, const FieldParams& field);
u128 half_power_exponent(const FieldParams& field);

/// Order of a matrix by brute force (test oracle; bounded by `limit`).
std::uint64_t brute_force_order(const Mat4& a, std::uint64_t limit);

Mat4 random_invertible(const FieldParams& field, Rng& rng);

// Subspaces of GF(q)^4 --------------------------------------------------------

/// Basis in reduced row echelon form; the empty basis is the zero subspace.
class Subspace {
 public:
  Subspace() = default;
  /// Row-reduces the spanning set.
  explicit Subspace(std::vector<Vec4> spanning);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vec4>& basis() const { return basis_; }
  bool contains(const Vec4& v) const;
  friend bool operator==(const Subspace&, const Subspace&) = default;

  /// {x : s . x = 0 for all s in this}, w.r.t. the standard dot product.
  Subspace perp(const FieldParams& field) const;
  Subspace image(const Mat4& m) const;
  Subspace intersect(const Subspace& other, const FieldParams& field) const;
  bool is_subspace_of(const Subspace& other) const;

 private:
  std::vector<Vec4> basis_;
};

/// {v : v * M = 0}.
Subspace left_nullspace(const Mat4& m, const FieldParams& field);

struct NullspaceChain {
  Subspace v1, v2, v3;
};

/// V_i = left nullspace of (alpha - I)^i. Throws MatrixError unless the
/// dimensions are exactly (1, 2, 3).
NullspaceChain nullspace_chain(const Mat4& alpha, const FieldParams& field);

struct TorusDiagonalisation {
  Mat4 u;  // diag(l^(t+1), l, l^-1, l^(-t-1))
  Mat4 c;  // u = c^-1 g c
  Fq lambda;
};

/// Diagonalises g != I with g^(q-1) = I into the torus pattern. Of the two
/// admissible values lambda, lambda^-1 the one with smaller encoding is used.
/// Throws MatrixError if g does not have that eigenvalue pattern.
TorusDiagonalisation diagonalise_torus(const Mat4& g, const FieldParams& field);

/// diag(l^(t+1), l, l^-1, l^(-t-1)).
Mat4 torus_matrix(Fq lambda);

}  // namespace suzuki
