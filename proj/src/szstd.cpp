#include "suzuki/szstd.hpp"

#include <sstream>

namespace suzuki {

namespace {

std::uint64_t common_modulus(Fq a, Fq b) {
  const std::uint64_t modulus = a.modulus() ? a.modulus() : b.modulus();
  if (!modulus) throw FieldError("field elements carry no modulus");
  return modulus;
}

Fq ovoid_first(Fq a, Fq b) {
  const Fq at = a.twist();
  return at * a * a + a * b + b.twist();
}

}  // namespace

Mat4 gen_U(Fq a, Fq b) {
  const std::uint64_t modulus = common_modulus(a, b);
  const Fq one{1, modulus};
  const Fq zero{0, modulus};
  const Fq at = a.twist();
  return Mat4({one, zero, zero, zero,
               a, one, zero, zero,
               at * a + b, at, one, zero,
               ovoid_first(a, b), b, a, one});
}

Mat4 gen_U_inverse(Fq a, Fq b) { return gen_U(a, b + a.twist() * a); }

Mat4 gen_M(Fq lambda) {
  if (lambda.is_zero()) throw FieldError("M'(0) is undefined");
  return torus_matrix(lambda);
}

Mat4 gen_T(const FieldParams& field) {
  const Fq one = field.one();
  const Fq zero = field.zero();
  return Mat4({zero, zero, zero, one,
               zero, zero, one, zero,
               zero, one, zero, zero,
               one, zero, zero, zero});
}

std::array<Mat4, 3> standard_generators(const FieldParams& field) {
  return {gen_U(field.one(), field.zero()), gen_M(field.primitive()), gen_T(field)};
}

OvoidPoint ovoid_point(Fq a, Fq b) {
  const Fq one{1, common_modulus(a, b)};
  return {{ovoid_first(a, b), b, a, one}};
}

OvoidPoint ovoid_infinity(const FieldParams& field) {
  return {{field.one(), field.zero(), field.zero(), field.zero()}};
}

Vec4 normalize_projective(const Vec4& v) {
  for (int i = 3; i >= 0; --i) {
    if (!v[static_cast<std::size_t>(i)].is_zero()) return v * v[static_cast<std::size_t>(i)].inverse();
  }
  throw FieldError("zero vector is not a projective point");
}

bool is_on_ovoid(const Vec4& v) {
  const Vec4 p = normalize_projective(v);
  if (p[3].is_zero()) {
    return p[1].is_zero() && p[2].is_zero();  // p[0] = 1 after scaling
  }
  return p[0] == ovoid_first(p[2], p[1]);
}

Mat4 evaluate(const BruhatForm& form, const FieldParams& field) {
  return std::visit(
      [&](const auto& f) -> Mat4 {
        using T = std::decay_t<decltype(f)>;
        const Mat4 fh = gen_M(f.lambda) * gen_U(f.c, f.d);
        if constexpr (std::is_same_v<T, InFH>) {
          return fh;
        } else {
          return fh * gen_T(field) * gen_U(f.a, f.b);
        }
      },
      form);
}

std::optional<BruhatForm> sigma_decompose(const Mat4& h, const FieldParams& field) {
  const Vec4 first = h.row(0);
  Mat4 k0 = h;
  std::optional<std::pair<Fq, Fq>> tail;  // (a, b) of the T U(a,b) factor
  if (first[1].is_zero() && first[2].is_zero() && first[3].is_zero()) {
    if (first[0].is_zero()) return std::nullopt;
  } else if (!first[3].is_zero()) {
    const Fq s = first[3].inverse();
    const Fq a = first[2] * s;
    const Fq b = first[1] * s;
    if (first[0] * s != ovoid_first(a, b)) return std::nullopt;
    // k0 = h (T U(a,b))^-1 = h U(a,b)^-1 T
    k0 = h * gen_U_inverse(a, b) * gen_T(field);
    tail = {a, b};
  } else {
    return std::nullopt;
  }

  const Fq lambda = k0(1, 1);
  if (lambda.is_zero()) return std::nullopt;
  const Mat4 k3_inv = gen_M(lambda.inverse());
  const Mat4 k2 = k3_inv * k0;
  const Fq c = k2(1, 0);
  const Fq d = k2(3, 1);
  if (k2 != gen_U(c, d)) return std::nullopt;

  if (tail) return BruhatForm{InFHTF{lambda, c, d, tail->first, tail->second}};
  return BruhatForm{InFH{lambda, c, d}};
}

bool sigma_membership(const Mat4& h, const FieldParams& field) {
  return sigma_decompose(h, field).has_value();
}

BruhatForm random_bruhat_form(const FieldParams& field, Rng& rng) {
  const std::uint64_t q = field.q();
  // |FH| / |G| = 1 / (q^2 + 1)
  const bool in_fh = rng.below(q * q + 1) == 0;
  const Fq lambda = field.random_nonzero(rng);
  const Fq c = field.random(rng);
  const Fq d = field.random(rng);
  if (in_fh) return InFH{lambda, c, d};
  const Fq a = field.random(rng);
  const Fq b = field.random(rng);
  return InFHTF{lambda, c, d, a, b};
}

Mat4 random_sigma_element(const FieldParams& field, Rng& rng) {
  return evaluate(random_bruhat_form(field, rng), field);
}

u128 sz_order(const FieldParams& field) {
  const u128 q = field.q();
  return q * q * (q * q + 1) * (q - 1);
}

std::string to_string(const BruhatForm& form) {
  std::ostringstream os;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, InFH>) {
          os << "FH " << f.lambda.to_hex() << ' ' << f.c.to_hex() << ' ' << f.d.to_hex();
        } else {
          os << "FHTF " << f.lambda.to_hex() << ' ' << f.c.to_hex() << ' ' << f.d.to_hex()
             << ' ' << f.a.to_hex() << ' ' << f.b.to_hex();
        }
      },
      form);
  return os.str();
}

BruhatForm parse_bruhat_form(const FieldParams& field, const std::string& text) {
  std::istringstream is(text);
  std::string tag;
  is >> tag;
  const int count = tag == "FH" ? 3 : tag == "FHTF" ? 5 : 0;
  if (count == 0) throw FieldError("unknown decomposition tag: " + tag);
  std::array<Fq, 5> v{};
  for (int i = 0; i < count; ++i) {
    std::string word;
    if (!(is >> word)) throw FieldError("truncated decomposition: " + text);
    v[static_cast<std::size_t>(i)] = field.parse_hex(word);
  }
  if (v[0].is_zero()) throw FieldError("decomposition with lambda = 0");
  if (count == 3) return InFH{v[0], v[1], v[2]};
  return InFHTF{v[0], v[1], v[2], v[3], v[4]};
}

}  // namespace suzuki
