#include "suzuki/recog.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace suzuki {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t modulus_of(std::initializer_list<const Mat4*> mats) {
  for (const Mat4* m : mats) {
    for (const Fq& x : m->entries()) {
      if (x.modulus()) return x.modulus();
    }
  }
  throw MatrixError("matrices carry no field");
}

bool has_order_qm1(const Mat4& g, const FieldParams& field) {
  const std::uint64_t qm1 = field.q() - 1;
  if (!mat_pow(g, qm1).is_identity()) return false;
  return std::none_of(field.qm1_factors().begin(), field.qm1_factors().end(),
                      [&](const PrimePower& pp) { return mat_pow(g, qm1 / pp.prime).is_identity(); });
}

}  // namespace

const char* to_string(Strategy s) {
  return s == Strategy::Default ? "default" : "factored";
}

Strategy parse_strategy(const std::string& text) {
  if (text == "default") return Strategy::Default;
  if (text == "factored") return Strategy::Factored;
  throw std::invalid_argument("unknown strategy: " + text);
}

std::uint64_t default_order4_cap(const FieldParams& field) {
  // ceil(log2 log2 q) = ceil(log2 n)
  const auto n = static_cast<std::uint64_t>(field.n());
  return 64 * static_cast<std::uint64_t>(std::bit_width(n - 1));
}

// GroupHandle -------------------------------------------------------------------

namespace {
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  Rng mix(seed ^ salt);
  return mix();
}
}  // namespace

GroupHandle::GroupHandle(const FieldParams& field, std::vector<Mat4> gens, std::uint64_t seed,
                         PrOptions pr)
    : field_(field),
      oracle_(std::move(gens), derive_seed(seed, 0x70726f64), pr),
      rng_(derive_seed(seed, 0x63686f6f)) {}

Tracked GroupHandle::gen(std::size_t i) const {
  return {gens().at(i), Slp::generator(i)};
}

Tracked GroupHandle::random() {
  ++stats_.random_draws;
  return oracle_.next();
}

std::optional<std::uint64_t> GroupHandle::dlog(Fq base, Fq target) {
  const auto start = Clock::now();
  ++stats_.dlog_calls;
  auto result = discrete_log(field_, base, target);
  stats_.dlog_seconds += seconds_since(start);
  return result;
}

// Trace equations ---------------------------------------------------------------

UPoly trace_quartic(const std::array<Fq, 4>& diag) {
  const auto [a, b, c, d] = diag;
  const Fq at = a.twist(), bt = b.twist(), ct = c.twist(), dt = d.twist();
  return UPoly({b * ct * d,
                a * ct * d + at * d * d + b * b * dt + b * c * ct,
                a * c * ct + b * bt * d,
                a * a * dt + a * bt * d + at * c * c + b * bt * c,
                a * bt * c});
}

TraceSolutions solve_trace_system(const std::array<Fq, 4>& diag, const FieldParams& field,
                                  Rng& rng) {
  const auto [a, b, c, d] = diag;
  const int zeros = static_cast<int>(std::count_if(diag.begin(), diag.end(),
                                                   [](Fq x) { return x.is_zero(); }));
  if (zeros == 4) return {true, {}};
  if (zeros == 3) return {};

  std::vector<Fq> candidates;
  if (a.is_zero() && b.is_zero()) {
    candidates.push_back(d / c);
  } else if (c.is_zero() && d.is_zero()) {
    candidates.push_back(b / a);
  } else {
    const UPoly quartic = trace_quartic(diag);
    if (quartic.is_zero()) throw std::logic_error("trace quartic vanished outside the special cases");
    candidates = roots_in_field(field, quartic, rng);
  }

  TraceSolutions out;
  for (const Fq y : candidates) {
    if (y.is_zero()) continue;
    const Fq x = y.half_twist();
    const Fq x2 = x.square();
    if ((a * x2 * y * y + b * x2 * y + c * y + d).is_zero()) out.roots.push_back(x);
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  return out;
}

bool check_inverts(const Mat4& u, const Mat4& b) {
  return u.conj(b) == u.inverse();
}

// Order-4 search ----------------------------------------------------------------

std::variant<Tracked, Order4Failure> order4_attempt(GroupHandle& group, Strategy strategy,
                                                     std::optional<TorusState>& state) {
  const FieldParams& field = group.field();
  RecogStats& stats = group.stats();
  ++stats.order4_iterations;
  auto retry_g = [&]() {
    state.reset();
    ++stats.order4_retry_g;
    return Order4Failure::RetryG;
  };
  auto retry_h = [&]() {
    ++stats.order4_retry_h;
    return Order4Failure::RetryH;
  };

  if (!state) {
    Tracked g = group.random();
    const bool ok = strategy == Strategy::Default
                        ? !g.mat.is_identity() && mat_pow(g.mat, field.q() - 1).is_identity()
                        : has_order_qm1(g.mat, field);
    if (!ok) return retry_g();
    try {
      TorusDiagonalisation diag = diagonalise_torus(g.mat, field);
      state = TorusState{std::move(g), std::move(diag)};
    } catch (const MatrixError&) {
      return retry_g();
    }
  }

  const Tracked h = group.random();
  const Mat4 b = h.mat.conj(state->diag.c);
  if (check_inverts(state->diag.u, b)) return retry_h();

  const TraceSolutions sol =
      solve_trace_system({b(0, 0), b(1, 1), b(2, 2), b(3, 3)}, field, group.rng());
  if (sol.degenerate || sol.roots.empty()) return retry_h();
  const Fq r = sol.roots[group.rng().below(sol.roots.size())];

  const Mat4 fhat = torus_matrix(r) * b;
  if (order_class(fhat, field) != OrderClass::Order4) return retry_h();

  const auto i = group.dlog(state->diag.lambda, r);
  if (!i) return retry_g();

  Tracked f = pow(state->g, *i) * h;
  if (order_class(f.mat, field) != OrderClass::Order4) return retry_h();
  return f;
}

Tracked order4_element(GroupHandle& group, Strategy strategy, std::uint64_t cap) {
  if (cap == 0) cap = default_order4_cap(group.field());
  std::optional<TorusState> state;
  for (std::uint64_t it = 0; it < cap; ++it) {
    auto result = order4_attempt(group, strategy, state);
    if (auto* f = std::get_if<Tracked>(&result)) return std::move(*f);
  }
  throw RecognitionFailure("order-4 element not found within the iteration cap", group.stats());
}

// Stabiliser pair ---------------------------------------------------------------

Tracked bray_centraliser_involution(GroupHandle& group, const Tracked& f2, std::uint64_t cap) {
  const FieldParams& field = group.field();
  const u128 half = half_power_exponent(field);
  for (std::uint64_t it = 0; it < cap; ++it) {
    ++group.stats().bray_iterations;
    const Tracked c = group.random();
    const Tracked w = commutator(f2, c);
    Tracked j;
    if (!has_odd_order(w.mat)) {
      j = w;
    } else {
      const Tracked g = c * pow(w, half);
      j = order_class(g.mat, field) == OrderClass::Order4 ? g * g : g;
    }
    if (j.mat.is_identity() || j.mat == f2.mat) continue;
    if (!(j.mat * j.mat).is_identity() || j.mat * f2.mat != f2.mat * j.mat) continue;
    return j;
  }
  throw RecognitionFailure("no centralising involution within the cap", group.stats());
}

std::vector<u128> subfield_exponents(const FieldParams& field) {
  std::vector<u128> out;
  const auto n = static_cast<std::uint64_t>(field.n());
  for (const std::uint64_t p : distinct_primes(n)) out.push_back((u128{1} << (n / p)) - 1);
  return out;
}

StabilizerPair stabilizer_pair(GroupHandle& group, const Tracked& f, std::uint64_t cap) {
  const FieldParams& field = group.field();
  const Tracked f2 = f * f;
  const u128 half = half_power_exponent(field);
  const std::vector<u128> exponents = subfield_exponents(field);

  auto moves_j = [&](const Tracked& c, const Tracked& j) {
    return !commutator(f2.mat, j.mat.conj(c.mat)).is_identity();
  };

  for (std::uint64_t it = 0; it < cap; ++it) {
    if (it > 0) ++group.stats().stabilizer_restarts;
    const Tracked j = bray_centraliser_involution(group, f2, cap);

    std::optional<Tracked> c;
    for (std::size_t i = 0; i < group.gens().size() && !c; ++i) {
      if (moves_j(group.gen(i), j)) c = group.gen(i);
    }
    for (std::uint64_t tries = 0; tries < cap && !c; ++tries) {
      Tracked r = group.random();
      if (moves_j(r, j)) c = std::move(r);
    }
    if (!c) continue;

    const Tracked x = f2 * conjugate(j, *c);
    if (!has_odd_order(x.mat)) continue;
    const Tracked h = *c * pow(x, half);
    if (j.mat.conj(h.mat) != f2.mat) continue;
    if (h.mat.is_identity() || !has_odd_order(h.mat)) continue;
    const bool proper_subfield = std::any_of(exponents.begin(), exponents.end(), [&](u128 e) {
      return mat_pow(h.mat, e).is_identity();
    });
    if (proper_subfield) continue;
    return {h, j};
  }
  throw RecognitionFailure("stabiliser pair not found within the cap", group.stats());
}

// Conjugator --------------------------------------------------------------------

Fq solve_form_scalar(const Mat4& k, const Mat4& w1, const Mat4& w2) {
  const std::uint64_t modulus = modulus_of({&k, &w1, &w2});
  const Fq one{1, modulus}, zero{0, modulus};
  const Mat4 k0({zero, zero, zero, one, zero, zero, zero, zero,
                 zero, zero, zero, zero, one, zero, zero, zero});
  const Mat4 k1({zero, zero, zero, zero, zero, zero, one, zero,
                 zero, one, zero, zero, zero, zero, zero, zero});

  // Entry (r, c) of w K(s) w^T - K(s) is alpha + beta s.
  std::vector<std::pair<Fq, Fq>> equations;
  for (const Mat4* w : {&w1, &w2}) {
    const Mat4 wk = w->conj(k);
    const Mat4 alpha = wk * k0 * wk.transpose() + k0;
    const Mat4 beta = wk * k1 * wk.transpose() + k1;
    for (int i = 0; i < 16; ++i) {
      equations.emplace_back(alpha.entries()[static_cast<std::size_t>(i)],
                             beta.entries()[static_cast<std::size_t>(i)]);
    }
  }
  const auto first = std::find_if(equations.begin(), equations.end(),
                                  [](const auto& e) { return !e.second.is_zero(); });
  if (first == equations.end()) {
    const bool contradictory = std::any_of(equations.begin(), equations.end(),
                                           [](const auto& e) { return !e.first.is_zero(); });
    throw MatrixError(contradictory ? "form equations are inconsistent"
                                    : "no nontrivial form equation");
  }
  const Fq s = first->first / first->second;
  for (const auto& [alpha, beta] : equations) {
    if (!(alpha + beta * s).is_zero()) throw MatrixError("form equations are inconsistent");
  }
  if (s.is_zero()) throw MatrixError("degenerate form scalar");
  return s;
}

namespace {

std::optional<Tracked> pick_beta(GroupHandle& group, const Subspace& v1, std::uint64_t cap) {
  for (std::size_t i = 0; i < group.gens().size(); ++i) {
    if (v1.image(group.gens()[i]) != v1) return group.gen(i);
  }
  for (std::uint64_t tries = 0; tries < cap; ++tries) {
    Tracked r = group.random();
    if (v1.image(r.mat) != v1) return r;
  }
  return std::nullopt;
}

std::optional<RecognitionOutput> conjugator_once(GroupHandle& group, const RecogOptions& options) {
  const FieldParams& field = group.field();
  const Tracked alpha = order4_element(group, options.strategy, options.order4_cap);
  const Tracked h1 = stabilizer_pair(group, alpha, options.stage_cap).h;
  const NullspaceChain p = nullspace_chain(alpha.mat, field);

  const auto beta = pick_beta(group, p.v1, options.stage_cap);
  if (!beta) return std::nullopt;
  const Tracked gamma = conjugate(alpha * alpha, *beta);
  const NullspaceChain q = nullspace_chain(alpha.mat.conj(gamma.mat), field);

  const Subspace u2 = p.v2.intersect(q.v3, field);
  const Subspace u3 = p.v3.intersect(q.v2, field);
  if (u2.dim() != 1 || u3.dim() != 1) return std::nullopt;
  const Vec4 r1 = p.v1.basis()[0];
  const Vec4 r2 = u2.basis()[0];
  const Mat4 rows = Mat4::from_rows(r1, r2, r2 * gamma.mat, r1 * gamma.mat);
  if (rows.det().is_zero()) return std::nullopt;
  const Mat4 k = rows.inverse();
  if (gamma.mat.conj(k) != gen_T(field)) return std::nullopt;

  const Fq s = solve_form_scalar(k, alpha.mat, h1.mat);
  const Fq root = s.sqrt();
  const Mat4 g = k * Mat4::diagonal(field.one(), root, root, field.one());

  RecognitionOutput out{field, group.gens(), g, {alpha, h1, gamma}, group.stats()};
  if (!verify_recognition(out)) return std::nullopt;
  return out;
}

}  // namespace

RecognitionOutput conjugator(GroupHandle& group, const RecogOptions& options) {
  const auto start = Clock::now();
  for (std::uint64_t attempt = 0; attempt <= options.restart_cap; ++attempt) {
    if (attempt > 0) ++group.stats().conjugator_restarts;
    std::optional<RecognitionOutput> out;
    try {
      out = conjugator_once(group, options);
    } catch (const RecognitionFailure&) {
    } catch (const MatrixError&) {
    }
    if (out) {
      group.stats().total_seconds += seconds_since(start);
      out->stats = group.stats();
      return std::move(*out);
    }
  }
  group.stats().total_seconds += seconds_since(start);
  throw RecognitionFailure("recognition failed after all restarts", group.stats());
}

bool verify_recognition(const RecognitionOutput& out) {
  const FieldParams& field = out.field;
  const Mat4 g_inv = out.g.inverse();
  auto pull = [&](const Mat4& x) { return g_inv * x * out.g; };
  for (const Mat4& x : out.gens) {
    if (!sigma_membership(pull(x), field)) return false;
  }
  if (pull(out.rw.gamma.mat) != gen_T(field)) return false;
  const Mat4 a = pull(out.rw.alpha.mat);
  if (a(1, 0).is_zero() || a != gen_U(a(1, 0), a(3, 1))) return false;
  const auto e = sigma_decompose(pull(out.rw.h.mat), field);
  if (!e || !std::holds_alternative<InFH>(*e)) return false;
  for (const Tracked* t : {&out.rw.alpha, &out.rw.h, &out.rw.gamma}) {
    if (eval(t->slp, out.gens) != t->mat) return false;
  }
  return true;
}

// Text form -----------------------------------------------------------------------

std::string serialize(const RecognitionOutput& out) {
  std::ostringstream os;
  os << "field " << out.field.to_string() << '\n';
  os << "gens " << out.gens.size() << '\n';
  for (const Mat4& x : out.gens) os << x.to_hex() << '\n';
  os << "conjugator " << out.g.to_hex() << '\n';
  const std::pair<const char*, const Tracked*> named[] = {
      {"alpha", &out.rw.alpha}, {"h", &out.rw.h}, {"gamma", &out.rw.gamma}};
  for (const auto& [name, t] : named) os << "slp " << name << '\n' << t->slp.to_text();
  const RecogStats& s = out.stats;
  os << "stats draws=" << s.random_draws << " dlog_calls=" << s.dlog_calls
     << " dlog_ms=" << s.dlog_seconds * 1e3 << " total_ms=" << s.total_seconds * 1e3
     << " order4_iterations=" << s.order4_iterations << '\n';
  return os.str();
}

RecognitionOutput parse_recognition(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto expect = [&](const std::string& prefix) {
    if (!std::getline(is, line) || line.rfind(prefix, 0) != 0) {
      throw std::runtime_error("expected '" + prefix + "' line");
    }
    return line.substr(prefix.size());
  };
  const FieldParams field = parse_field(expect("field "));
  const std::size_t count = std::stoul(expect("gens "));
  std::vector<Mat4> gens;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("truncated generator list");
    gens.push_back(parse_mat4(field, line));
  }
  const Mat4 g = parse_mat4(field, expect("conjugator "));
  std::array<Tracked, 3> rw;
  for (Tracked& t : rw) {
    expect("slp ");
    std::string body;
    while (std::getline(is, line)) {
      body += line + '\n';
      if (line.rfind("R ", 0) == 0) break;
    }
    t.slp = Slp::parse(body);
    t.mat = eval(t.slp, gens);
  }
  RecognitionOutput out{field, std::move(gens), g, {rw[0], rw[1], rw[2]}, {}};
  if (std::getline(is, line) && line.rfind("stats ", 0) == 0) {
    std::istringstream ss(line.substr(6));
    std::string item;
    while (ss >> item) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = item.substr(0, eq);
      const double value = std::stod(item.substr(eq + 1));
      if (key == "draws") out.stats.random_draws = static_cast<std::uint64_t>(value);
      if (key == "dlog_calls") out.stats.dlog_calls = static_cast<std::uint64_t>(value);
      if (key == "dlog_ms") out.stats.dlog_seconds = value / 1e3;
      if (key == "total_ms") out.stats.total_seconds = value / 1e3;
      if (key == "order4_iterations") out.stats.order4_iterations = static_cast<std::uint64_t>(value);
    }
  }
  return out;
}

std::pair<std::vector<Mat4>, Mat4> random_conjugate(const FieldParams& field, Rng& rng) {
  const Mat4 c = random_invertible(field, rng);
  std::vector<Mat4> gens;
  for (const Mat4& x : standard_generators(field)) gens.push_back(x.conj(c));
  return {std::move(gens), c};
}

}  // namespace suzuki
