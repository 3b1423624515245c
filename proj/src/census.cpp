#include "suzuki/census.hpp"

#include <omp.h>

#include <bit>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace suzuki {

namespace {

// Diagonals of M'(w^i), i = 0..q-2.
std::vector<std::array<Fq, 4>> torus_diagonals(const FieldParams& field) {
  std::vector<std::array<Fq, 4>> out;
  Fq lambda = field.one();
  for (std::uint64_t i = 0; i + 1 < field.q(); ++i) {
    const Mat4 d = gen_M(lambda);
    out.push_back({d(0, 0), d(1, 1), d(2, 2), d(3, 3)});
    lambda *= field.primitive();
  }
  return out;
}

Mat4 scale_rows(const std::array<Fq, 4>& diag, const Mat4& rep) {
  Mat4 x = rep;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) x(r, c) *= diag[static_cast<std::size_t>(r)];
  }
  return x;
}

void classify(const Mat4& x, CosetVector& v) {
  if (x.is_identity()) {
    ++v.v1;
    return;
  }
  const Mat4 x2 = x * x;
  if (x2.is_identity()) {
    ++v.v2;
  } else if ((x2 * x2).is_identity()) {
    ++v.v4;
  }
}

// Calls visit(rep) for U(c,d) and U(c,d) T U(a,b), with (c,d) fixed by
// `outer` in [0, q^2).
template <class Visit>
void for_each_rep(const FieldParams& field, std::uint64_t outer, const std::vector<Mat4>& tu,
                  Visit&& visit) {
  const std::uint64_t q = field.q();
  const Mat4 u = gen_U(field.element(outer / q), field.element(outer % q));
  visit(u);
  for (const Mat4& right : tu) visit(u * right);
}

std::vector<Mat4> t_times_unipotents(const FieldParams& field) {
  const std::uint64_t q = field.q();
  const Mat4 t = gen_T(field);
  std::vector<Mat4> out;
  out.reserve(q * q);
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) out.push_back(t * gen_U(field.element(a), field.element(b)));
  }
  return out;
}

void require_supported(const FieldParams& field) {
  if (field.m() > 3) throw std::invalid_argument("census supports q = 8, 32 and 128 only");
}

}  // namespace

CosetVector coset_vector_reference(const Mat4& rep, const FieldParams& field) {
  CosetVector v;
  for (const auto& diag : torus_diagonals(field)) classify(scale_rows(diag, rep), v);
  return v;
}

CensusTable coset_census_serial(const FieldParams& field) {
  require_supported(field);
  const auto diags = torus_diagonals(field);
  const auto tu = t_times_unipotents(field);
  CensusTable table;
  const std::uint64_t q = field.q();
  for (std::uint64_t outer = 0; outer < q * q; ++outer) {
    for_each_rep(field, outer, tu, [&](const Mat4& rep) {
      CosetVector v;
      for (const auto& diag : diags) classify(scale_rows(diag, rep), v);
      ++table[v];
    });
  }
  return table;
}

CensusTable coset_census(const FieldParams& field, int threads) {
  require_supported(field);
  const auto diags = torus_diagonals(field);
  const auto tu = t_times_unipotents(field);
  const std::int64_t outer_count = static_cast<std::int64_t>(field.q() * field.q());
  if (threads <= 0) threads = omp_get_max_threads();
  std::vector<CensusTable> partial(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads)
  {
    CensusTable& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t outer = 0; outer < outer_count; ++outer) {
      for_each_rep(field, static_cast<std::uint64_t>(outer), tu, [&](const Mat4& rep) {
        CosetVector v;
        for (const auto& diag : diags) {
          Fq trace = diag[0] * rep(0, 0);
          for (std::size_t i = 1; i < 4; ++i) trace += diag[i] * rep(static_cast<int>(i), static_cast<int>(i));
          if (trace.is_zero()) classify(scale_rows(diag, rep), v);
        }
        ++local[v];
      });
    }
  }

  CensusTable table;
  for (const CensusTable& local : partial) {
    for (const auto& [v, count] : local) table[v] += count;
  }
  return table;
}

CensusTable conjectured_counts(std::uint64_t q) {
  const bool odd_power = q >= 8 && q <= (1U << 13) && std::has_single_bit(q) &&
                         std::countr_zero(q) % 2 == 1;
  if (!odd_power) throw std::invalid_argument("q must be 2^(2m+1) with 8 <= q <= 2^13");
  const auto Q = static_cast<std::int64_t>(q);
  return {
      {{0, 0, 0}, static_cast<std::uint64_t>((Q - 1) * (3 * Q * Q * Q + 2 * Q * Q - 8 * Q + 16) / 8)},
      {{0, 1, 0}, static_cast<std::uint64_t>((Q - 1) * Q * (Q + 2) / 2)},
      {{0, 0, 1}, static_cast<std::uint64_t>((Q - 1) * Q * (2 * Q * Q + Q + 20) / 6)},
      {{0, 1, 2}, static_cast<std::uint64_t>((Q - 1) * Q * (Q - 2) / 2)},
      {{0, 0, 2}, static_cast<std::uint64_t>((Q - 1) * Q * Q * (Q - 2) / 4)},
      {{0, q - 1, 0}, 1},
      {{0, 0, 3}, static_cast<std::uint64_t>((Q - 1) * Q * (Q - 2) / 2)},
      {{1, 0, 0}, 1},
      {{0, 0, 4}, static_cast<std::uint64_t>((Q - 1) * Q * (Q - 2) * (Q - 8) / 24)},
  };
}

std::pair<std::uint64_t, std::uint64_t> conjectured_proportion(std::uint64_t q) {
  return {5 * q * q * q - 3 * q * q + 14 * q - 16, 8 * q * (q * q + 1)};
}

std::uint64_t cosets_with_order4(const CensusTable& table) {
  std::uint64_t total = 0;
  for (const auto& [v, count] : table) {
    if (v.v4 >= 1) total += count;
  }
  return total;
}

std::string census_csv(const CensusTable& observed, const CensusTable& conjectured) {
  CensusTable keys = observed;
  for (const auto& [v, count] : conjectured) keys.emplace(v, 0);
  std::ostringstream os;
  os << "v1,v2,v4,observed,conjectured,match\n";
  for (const auto& entry : keys) {
    const CosetVector& v = entry.first;
    const auto o = observed.find(v);
    const auto c = conjectured.find(v);
    const std::uint64_t obs = o == observed.end() ? 0 : o->second;
    const std::uint64_t conj = c == conjectured.end() ? 0 : c->second;
    os << v.v1 << ',' << v.v2 << ',' << v.v4 << ',' << obs << ',' << conj << ','
       << (obs == conj ? "yes" : "no") << '\n';
  }
  return os.str();
}

}  // namespace suzuki
