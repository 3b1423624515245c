#include "suzuki/mat4.hpp"

#include <algorithm>
#include <sstream>

namespace suzuki {

namespace {

std::uint64_t modulus_of(const std::array<Fq, 16>& e) {
  for (const Fq& x : e) {
    if (x.modulus()) return x.modulus();
  }
  return 0;
}

std::vector<Vec4> rref(std::vector<Vec4> rows) {
  std::size_t rank = 0;
  for (int col = 0; col < 4 && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    rows[rank] = rows[rank] * rows[rank][col].inverse();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && !rows[r][col].is_zero()) {
        rows[r] = rows[r] + rows[rank] * rows[r][col];
      }
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

Fq det3(const Mat4& m, int a, int b, int c) {
  auto x = [&](int r, int s) { return m(r, s); };
  return x(a, a) * (x(b, b) * x(c, c) + x(b, c) * x(c, b)) +
         x(a, b) * (x(b, a) * x(c, c) + x(b, c) * x(c, a)) +
         x(a, c) * (x(b, a) * x(c, b) + x(b, b) * x(c, a));
}

}  // namespace

Vec4 operator*(const Vec4& v, Fq s) {
  return {v[0] * s, v[1] * s, v[2] * s, v[3] * s};
}

Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

bool is_zero(const Vec4& v) {
  return std::all_of(v.begin(), v.end(), [](Fq x) { return x.is_zero(); });
}

Mat4 Mat4::identity(const FieldParams& field) {
  const Fq one = field.one();
  return diagonal(one, one, one, one);
}

Mat4 Mat4::diagonal(Fq a, Fq b, Fq c, Fq d) {
  Mat4 m;
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

Mat4 Mat4::from_rows(const Vec4& r0, const Vec4& r1, const Vec4& r2,
                     const Vec4& r3) {
  Mat4 m;
  const std::array<const Vec4*, 4> rows{&r0, &r1, &r2, &r3};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) m(r, c) = (*rows[static_cast<std::size_t>(r)])[static_cast<std::size_t>(c)];
  }
  return m;
}

Vec4 Mat4::row(int r) const { return {(*this)(r, 0), (*this)(r, 1), (*this)(r, 2), (*this)(r, 3)}; }

Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      out(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j) +
                  a(i, 3) * b(3, j);
    }
  }
  return out;
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
  Mat4 out;
  for (std::size_t i = 0; i < 16; ++i) out.e_[i] = a.e_[i] + b.e_[i];
  return out;
}

Vec4 operator*(const Vec4& v, const Mat4& m) {
  Vec4 out;
  for (int j = 0; j < 4; ++j) {
    out[static_cast<std::size_t>(j)] = v[0] * m(0, j) + v[1] * m(1, j) + v[2] * m(2, j) + v[3] * m(3, j);
  }
  return out;
}

Mat4 Mat4::transpose() const {
  Mat4 out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

Fq Mat4::trace() const {
  return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2) + (*this)(3, 3);
}

Fq Mat4::det() const {
  std::array<Fq, 16> a = e_;
  const std::uint64_t modulus = modulus_of(a);
  Fq det{1, modulus};
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    while (pivot < 4 && a[static_cast<std::size_t>(4 * pivot + col)].is_zero()) ++pivot;
    if (pivot == 4) return {0, modulus};
    if (pivot != col) {
      for (int c = 0; c < 4; ++c) std::swap(a[static_cast<std::size_t>(4 * pivot + c)], a[static_cast<std::size_t>(4 * col + c)]);
    }
    const Fq p = a[static_cast<std::size_t>(4 * col + col)];
    det *= p;
    const Fq inv = p.inverse();
    for (int r = col + 1; r < 4; ++r) {
      const Fq factor = a[static_cast<std::size_t>(4 * r + col)] * inv;
      if (factor.is_zero()) continue;
      for (int c = col; c < 4; ++c) a[static_cast<std::size_t>(4 * r + c)] += factor * a[static_cast<std::size_t>(4 * col + c)];
    }
  }
  return det;
}

bool Mat4::is_identity() const {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if ((*this)(i, j).bits() != (i == j ? 1U : 0U)) return false;
    }
  }
  return true;
}

bool Mat4::is_diagonal() const {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j && !(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

Mat4 Mat4::inverse() const {
  const std::uint64_t modulus = modulus_of(e_);
  Mat4 a = *this;
  Mat4 inv = diagonal(Fq{1, modulus}, Fq{1, modulus}, Fq{1, modulus}, Fq{1, modulus});
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    while (pivot < 4 && a(pivot, col).is_zero()) ++pivot;
    if (pivot == 4) throw MatrixError("singular matrix");
    if (pivot != col) {
      for (int c = 0; c < 4; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const Fq p = a(col, col).inverse();
    for (int c = 0; c < 4; ++c) {
      a(col, c) *= p;
      inv(col, c) *= p;
    }
    for (int r = 0; r < 4; ++r) {
      const Fq factor = a(r, col);
      if (r == col || factor.is_zero()) continue;
      for (int c = 0; c < 4; ++c) {
        a(r, c) += factor * a(col, c);
        inv(r, c) += factor * inv(col, c);
      }
    }
  }
  return inv;
}

UPoly Mat4::charpoly() const {
  const std::uint64_t modulus = modulus_of(e_);
  const auto& m = *this;
  Fq e2{0, modulus};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) e2 += m(i, i) * m(j, j) + m(i, j) * m(j, i);
  }
  const Fq e3 = det3(m, 0, 1, 2) + det3(m, 0, 1, 3) + det3(m, 0, 2, 3) + det3(m, 1, 2, 3);
  return UPoly({det(), e3, e2, trace(), Fq{1, modulus}});
}

std::size_t Mat4::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const Fq& x : e_) {
    h ^= x.bits();
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string Mat4::to_hex() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < 16; ++i) {
    if (i) os << ' ';
    os << e_[i].to_hex();
  }
  return os.str();
}

Mat4 parse_mat4(const FieldParams& field, const std::string& text) {
  std::istringstream is(text);
  Mat4 m;
  for (int i = 0; i < 16; ++i) {
    std::string word;
    if (!(is >> word)) throw MatrixError("expected 16 matrix entries");
    m(i / 4, i % 4) = field.parse_hex(word);
  }
  std::string extra;
  if (is >> extra) throw MatrixError("trailing data after matrix");
  return m;
}

Mat4 commutator(const Mat4& a, const Mat4& b) {
  return a.inverse() * b.inverse() * a * b;
}

Mat4 mat_pow(const Mat4& a, u128 n) {
  const std::uint64_t modulus = modulus_of(a.entries());
  const Fq one{1, modulus};
  Mat4 result = Mat4::diagonal(one, one, one, one);
  Mat4 base = a;
  while (n) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

const char* to_string(OrderClass c) {
  switch (c) {
    case OrderClass::Identity: return "Identity";
    case OrderClass::Order2: return "Order2";
    case OrderClass::Order4: return "Order4";
    case OrderClass::DividesQm1: return "DividesQm1";
    case OrderClass::Other: return "Other";
  }
  return "?";
}

OrderClass order_class(const Mat4& a, const FieldParams& field) {
  if (a.is_identity()) return OrderClass::Identity;
  const Mat4 a2 = a * a;
  if (a2.is_identity()) return OrderClass::Order2;
  if ((a2 * a2).is_identity()) return OrderClass::Order4;
  if (mat_pow(a, field.q() - 1).is_identity()) return OrderClass::DividesQm1;
  return OrderClass::Other;
}

bool has_odd_order(const Mat4& a) {
  if (a.is_identity()) return true;
  const Mat4 a2 = a * a;
  return !(a2 * a2).is_identity();
}

u128 odd_order_multiple(const FieldParams& field) {
  const u128 q = field.q();
  return (q * q + 1) * (q - 1);
}

u128 half_power_exponent(const FieldParams& field) {
  return (odd_order_multiple(field) - 1) / 2;
}

Mat4 half_power(const Mat4& a, const FieldParams& field) {
  return mat_pow(a, half_power_exponent(field));
}

std::uint64_t brute_force_order(const Mat4& a, std::uint64_t limit) {
  Mat4 power = a;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (power.is_identity()) return k;
    power *= a;
  }
  throw MatrixError("order exceeds limit");
}

Mat4 random_invertible(const FieldParams& field, Rng& rng) {
  for (;;) {
    Mat4 m;
    for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = field.random(rng);
    if (!m.det().is_zero()) return m;
  }
}

// Subspaces -------------------------------------------------------------------

Subspace::Subspace(std::vector<Vec4> spanning) : basis_(rref(std::move(spanning))) {}

bool Subspace::contains(const Vec4& v) const {
  std::vector<Vec4> rows = basis_;
  rows.push_back(v);
  return static_cast<int>(rref(std::move(rows)).size()) == dim();
}

bool Subspace::is_subspace_of(const Subspace& other) const {
  return std::all_of(basis_.begin(), basis_.end(),
                     [&](const Vec4& v) { return other.contains(v); });
}

Subspace Subspace::perp(const FieldParams& field) const {
  std::array<int, 4> pivot_row{-1, -1, -1, -1};
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    for (int c = 0; c < 4; ++c) {
      if (!basis_[r][static_cast<std::size_t>(c)].is_zero()) {
        pivot_row[static_cast<std::size_t>(c)] = static_cast<int>(r);
        break;
      }
    }
  }
  std::vector<Vec4> kernel;
  for (int free = 0; free < 4; ++free) {
    if (pivot_row[static_cast<std::size_t>(free)] >= 0) continue;
    Vec4 x{field.zero(), field.zero(), field.zero(), field.zero()};
    x[static_cast<std::size_t>(free)] = field.one();
    for (int c = 0; c < 4; ++c) {
      const int r = pivot_row[static_cast<std::size_t>(c)];
      if (r >= 0) x[static_cast<std::size_t>(c)] = basis_[static_cast<std::size_t>(r)][static_cast<std::size_t>(free)];
    }
    kernel.push_back(x);
  }
  return Subspace(std::move(kernel));
}

Subspace Subspace::image(const Mat4& m) const {
  std::vector<Vec4> rows;
  for (const Vec4& v : basis_) rows.push_back(v * m);
  return Subspace(std::move(rows));
}

Subspace Subspace::intersect(const Subspace& other, const FieldParams& field) const {
  std::vector<Vec4> rows = perp(field).basis();
  const Subspace more = other.perp(field);
  rows.insert(rows.end(), more.basis().begin(), more.basis().end());
  return Subspace(std::move(rows)).perp(field);
}

Subspace left_nullspace(const Mat4& m, const FieldParams& field) {
  const Mat4 t = m.transpose();
  return Subspace({t.row(0), t.row(1), t.row(2), t.row(3)}).perp(field);
}

NullspaceChain nullspace_chain(const Mat4& alpha, const FieldParams& field) {
  const Mat4 n1 = alpha + Mat4::identity(field);
  const Mat4 n2 = n1 * n1;
  const Mat4 n3 = n2 * n1;
  NullspaceChain chain{left_nullspace(n1, field), left_nullspace(n2, field),
                       left_nullspace(n3, field)};
  if (chain.v1.dim() != 1 || chain.v2.dim() != 2 || chain.v3.dim() != 3) {
    throw MatrixError("nullspace chain does not have dimensions (1, 2, 3)");
  }
  return chain;
}

// Torus -------------------------------------------------------------------------

Mat4 torus_matrix(Fq lambda) {
  const Fq top = lambda.twist() * lambda;
  return Mat4::diagonal(top, lambda, lambda.inverse(), top.inverse());
}

TorusDiagonalisation diagonalise_torus(const Mat4& g, const FieldParams& field) {
  if (g.is_identity()) throw MatrixError("cannot diagonalise the identity");
  if (!mat_pow(g, field.q() - 1).is_identity()) {
    throw MatrixError("order does not divide q-1");
  }
  // The root set does not depend on the splitting randomness.
  Rng rng(0xd1a9ULL);
  const std::vector<Fq> roots = roots_in_field(field, g.charpoly(), rng);
  if (roots.size() != 4) throw MatrixError("eigenvalues are not 4 distinct field elements");

  std::optional<Fq> lambda;
  for (const Fq r : roots) {
    const Mat4 pattern = torus_matrix(r);
    std::vector<Fq> expected{pattern(0, 0), pattern(1, 1), pattern(2, 2), pattern(3, 3)};
    std::sort(expected.begin(), expected.end());
    if (expected == roots && (!lambda || r < *lambda)) lambda = r;
  }
  if (!lambda) throw MatrixError("eigenvalues do not form a torus pattern");

  const Mat4 u = torus_matrix(*lambda);
  std::array<Vec4, 4> eigen;
  for (int i = 0; i < 4; ++i) {
    const Fq mu = u(i, i);
    const Subspace space = left_nullspace(g + Mat4::diagonal(mu, mu, mu, mu), field);
    if (space.dim() != 1) throw MatrixError("eigenspace is not one-dimensional");
    eigen[static_cast<std::size_t>(i)] = space.basis()[0];
  }
  const Mat4 rows = Mat4::from_rows(eigen[0], eigen[1], eigen[2], eigen[3]);
  const Mat4 c = rows.inverse();
  if (rows * g * c != u) throw MatrixError("diagonalisation check failed");
  return {u, c, *lambda};
}

}  // namespace suzuki
