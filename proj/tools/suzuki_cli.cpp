// Command-line front end: recognition trials, membership round trips,
// the coset census, benchmarks, and one-off rewriting of a matrix.

#include <omp.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "suzuki/census.hpp"
#include "suzuki/member.hpp"
#include "suzuki/recog.hpp"

#ifndef SUZUKI_VERSION
#define SUZUKI_VERSION "0.0.0"
#endif

using namespace suzuki;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Config {
  std::vector<int> ms{1};
  std::string m_range;
  int trials = 10;
  std::uint64_t seed = 1;
  std::string strategy = "default";
  std::string out;
  bool two_gens = false;
  bool long_run = false;
  int threads = 1;
  std::size_t pr_slots = 0;
  int pr_burn_in = 100;

  std::vector<int> m_list() const {
    if (m_range.empty()) return ms;
    const auto colon = m_range.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--m-range", "expected lo:hi");
    const int lo = std::stoi(m_range.substr(0, colon));
    const int hi = std::stoi(m_range.substr(colon + 1));
    if (lo < 1 || hi < lo) throw CLI::ValidationError("--m-range", "expected 1 <= lo <= hi");
    std::vector<int> out;
    for (int m = lo; m <= hi; ++m) out.push_back(m);
    return out;
  }

  RecogOptions recog_options() const {
    RecogOptions o;
    o.strategy = parse_strategy(strategy);
    o.pr.slots = pr_slots;
    o.pr.burn_in = pr_burn_in;
    return o;
  }
};

std::uint64_t trial_seed(std::uint64_t seed, int m, int trial) {
  std::uint64_t s = Rng(seed ^ static_cast<std::uint64_t>(m))();
  return Rng(s ^ static_cast<std::uint64_t>(trial))();
}

std::string metadata(const Config& cfg, const std::vector<int>& ms) {
  std::ostringstream os;
  os << "# suzuki " << SUZUKI_VERSION << "; moduli";
  for (int m : ms) os << " m" << m << "=0x" << std::hex << build_field(m).modulus() << std::dec;
  os << "; rng=" << Rng::kName << "; seed=" << cfg.seed << "; strategy=" << cfg.strategy
     << "; generators=" << (cfg.two_gens ? "two" : "standard") << '\n';
  return os.str();
}

// Writes to --out when given, else stdout.
void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw std::runtime_error("cannot write " + cfg.out);
  file << text;
}

struct RecognitionTrial {
  bool ok = false;
  double total_ms = 0;
  double dlog_ms = 0;
  std::uint64_t draws = 0;
  std::uint64_t dlog_calls = 0;
  std::optional<RecognitionOutput> out;
};

RecognitionTrial recognition_trial(const FieldParams& field, std::uint64_t seed,
                                   const Config& cfg) {
  Rng rng(seed);
  auto [gens, c] = random_conjugate(field, rng);
  if (cfg.two_gens) {
    PrOracle pr(gens, rng(), {.track_slps = false});
    gens = {pr.next().mat, pr.next().mat};
  }
  RecognitionTrial t;
  const auto start = Clock::now();
  GroupHandle group(field, std::move(gens), rng(), cfg.recog_options().pr);
  try {
    t.out = conjugator(group, cfg.recog_options());
    t.ok = verify_recognition(*t.out);
  } catch (const RecognitionFailure&) {
    t.ok = false;
  }
  t.total_ms = ms_since(start);
  t.dlog_ms = group.stats().dlog_seconds * 1e3;
  t.draws = group.stats().random_draws;
  t.dlog_calls = group.stats().dlog_calls;
  return t;
}

std::vector<RecognitionTrial> recognition_trials(const FieldParams& field, const Config& cfg) {
  std::vector<RecognitionTrial> out(static_cast<std::size_t>(cfg.trials));
#pragma omp parallel for schedule(dynamic) num_threads(cfg.threads)
  for (int i = 0; i < cfg.trials; ++i) {
    out[static_cast<std::size_t>(i)] = recognition_trial(field, trial_seed(cfg.seed, field.m(), i), cfg);
  }
  return out;
}

struct MembershipTrial {
  bool ok = false;
  double express_us = 0;
  std::size_t slp_len = 0;
};

// Trial 0 rewrites the identity; the rest rewrite uniform members.
std::vector<MembershipTrial> membership_trials(const RecognitionOutput& rec, int trials,
                                               std::uint64_t seed) {
  const RewriteTables tables = precompute_tables(rec);
  const std::size_t bound = rewriting_length_bound(rec.field);
  Rng rng(seed);
  std::vector<MembershipTrial> out;
  for (int i = 0; i < trials; ++i) {
    const Mat4 h = i == 0 ? Mat4::identity(rec.field)
                          : random_sigma_element(rec.field, rng).conj(tables.g_inv);
    const auto start = Clock::now();
    const auto ex = express(h, tables);
    MembershipTrial t;
    t.express_us = ms_since(start) * 1e3;
    if (ex) {
      t.slp_len = ex->rewriting.length();
      t.ok = eval(ex->in_x, rec.gens) == h && t.slp_len <= bound;
    }
    out.push_back(t);
  }
  return out;
}

int cmd_recognize(const Config& cfg, const std::string& dump) {
  const auto ms = cfg.m_list();
  std::ostringstream csv;
  csv << metadata(cfg, ms) << "m,q,trial,ok,total_ms,dlog_ms,draws\n";
  bool all_ok = true;
  for (int m : ms) {
    const FieldParams field = build_field(m);
    const auto trials = recognition_trials(field, cfg);
    for (std::size_t i = 0; i < trials.size(); ++i) {
      const auto& t = trials[i];
      all_ok = all_ok && t.ok;
      csv << m << ',' << field.q() << ',' << i << ',' << t.ok << ',' << t.total_ms << ','
          << t.dlog_ms << ',' << t.draws << '\n';
    }
    if (!dump.empty() && m == ms.front() && trials.front().out) {
      std::ofstream(dump) << serialize(*trials.front().out);
    }
  }
  emit(cfg, csv.str());
  return all_ok ? 0 : 1;
}

int cmd_membership(const Config& cfg) {
  const auto ms = cfg.m_list();
  std::ostringstream csv;
  csv << metadata(cfg, ms) << "m,q,trial,ok,express_us,slp_len\n";
  bool all_ok = true;
  for (int m : ms) {
    const FieldParams field = build_field(m);
    const RecognitionTrial rec = recognition_trial(field, trial_seed(cfg.seed, m, -1), cfg);
    if (!rec.ok) {
      std::cerr << "recognition failed at m = " << m << '\n';
      return 1;
    }
    const auto trials = membership_trials(*rec.out, cfg.trials, trial_seed(cfg.seed, m, -2));
    for (std::size_t i = 0; i < trials.size(); ++i) {
      const auto& t = trials[i];
      all_ok = all_ok && t.ok;
      csv << m << ',' << field.q() << ',' << i << ',' << t.ok << ',' << t.express_us << ','
          << t.slp_len << '\n';
    }
  }
  emit(cfg, csv.str());
  return all_ok ? 0 : 1;
}

int cmd_census(const Config& cfg, bool serial) {
  const auto ms = cfg.m_list();
  std::ostringstream csv;
  csv << metadata(cfg, ms);
  bool all_match = true;
  for (int m : ms) {
    if (m > 2 && !cfg.long_run) {
      std::cerr << "census beyond q = 32 needs --long\n";
      return 2;
    }
    const FieldParams field = build_field(m);
    const CensusTable observed = serial ? coset_census_serial(field) : coset_census(field, cfg.threads);
    const CensusTable conjectured = conjectured_counts(field.q());
    const std::string rows = census_csv(observed, conjectured);
    all_match = all_match && rows.find(",no\n") == std::string::npos;
    if (ms.size() > 1) csv << "# q=" << field.q() << '\n';
    csv << rows;
  }
  emit(cfg, csv.str());
  return all_match ? 0 : 1;
}

std::string gnuplot_script(const std::string& csv_path) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set terminal pngcairo size 1200,450\n"
     << "set output '" << csv_path << ".png'\n"
     << "set multiplot layout 1,2\n"
     << "set xlabel 'm (q = 2^(2m+1))'\n"
     << "set ylabel 'ms'\n"
     << "set title 'recognition'\n"
     << "plot '" << csv_path << "' using 1:5 skip 2 with linespoints title 'total', \\\n"
     << "     '' using 1:6 skip 2 with linespoints title 'discrete log'\n"
     << "set ylabel 'us'\n"
     << "set title 'rewriting'\n"
     << "plot '" << csv_path << "' using 1:8 skip 2 with linespoints title 'express'\n"
     << "unset multiplot\n";
  return os.str();
}

int cmd_bench(Config cfg) {
  const auto ms = cfg.m_list();
  if (cfg.out.empty()) cfg.out = "bench.csv";
  std::ostringstream csv;
  csv << metadata(cfg, ms)
      << "m,q,trials,recog_ok,recog_mean_ms,dlog_mean_ms,dlog_share,express_mean_us,slp_len_mean\n";
  for (int m : ms) {
    const FieldParams field = build_field(m);
    const auto recs = recognition_trials(field, cfg);
    double total = 0, dlog = 0;
    int ok = 0;
    for (const auto& t : recs) {
      total += t.total_ms;
      dlog += t.dlog_ms;
      ok += t.ok;
    }
    double express_us = 0, slp_len = 0;
    const auto first_ok = std::find_if(recs.begin(), recs.end(), [](const auto& t) { return t.ok; });
    if (first_ok != recs.end()) {
      const auto mem = membership_trials(*first_ok->out, cfg.trials, trial_seed(cfg.seed, m, -2));
      for (const auto& t : mem) {
        express_us += t.express_us;
        slp_len += static_cast<double>(t.slp_len);
      }
      express_us /= static_cast<double>(mem.size());
      slp_len /= static_cast<double>(mem.size());
    }
    const double n = static_cast<double>(recs.size());
    csv << m << ',' << field.q() << ',' << recs.size() << ',' << ok << ',' << total / n << ','
        << dlog / n << ',' << (total > 0 ? dlog / total : 0) << ',' << express_us << ','
        << slp_len << '\n';
    std::cerr << "m = " << m << " done\n";
  }
  emit(cfg, csv.str());
  std::ofstream(cfg.out + ".gp") << gnuplot_script(cfg.out);
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << file.rdbuf();
  return os.str();
}

int cmd_express(const std::string& recognition_path, const std::string& matrix_hex) {
  const RecognitionOutput rec = parse_recognition(read_file(recognition_path));
  if (!verify_recognition(rec)) {
    std::cerr << "recognition file does not verify\n";
    return 1;
  }
  const Mat4 h = parse_mat4(rec.field, matrix_hex);
  const auto ex = express(h, precompute_tables(rec));
  if (!ex) {
    std::cout << "NotMember\n";
    return 3;
  }
  std::cout << ex->in_x.to_text();
  const bool ok = eval(ex->in_x, rec.gens) == h;
  std::cout << (ok ? "OK" : "MISMATCH") << '\n';
  return ok ? 0 : 1;
}

void add_common(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--m", cfg.ms, "Values of m, q = 2^(2m+1)")
      ->delimiter(',')
      ->check(CLI::Range(1, FieldParams::kMaxM));
  cmd->add_option("--m-range", cfg.m_range, "Inclusive range lo:hi of m");
  cmd->add_option("--trials", cfg.trials, "Trials per m")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "Base seed");
  cmd->add_option("--strategy", cfg.strategy, "Order-4 search strategy")
      ->check(CLI::IsMember({"default", "factored"}));
  cmd->add_option("--out", cfg.out, "Output CSV path (stdout if omitted)");
  cmd->add_flag("--two-gens", cfg.two_gens, "Replace the generators by two random elements");
  cmd->add_flag("--long", cfg.long_run, "Allow long-running census sizes");
  cmd->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--pr-slots", cfg.pr_slots, "Product replacement slots (0 = automatic)");
  cmd->add_option("--pr-burn-in", cfg.pr_burn_in, "Product replacement burn-in steps")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructive recognition of Suzuki groups Sz(q) in GL(4, q)"};
  app.set_version_flag("--version", SUZUKI_VERSION);
  app.require_subcommand(1);
  Config cfg;

  auto* recognize = app.add_subcommand("recognize", "Recognise random conjugates of Sz(q)");
  add_common(recognize, cfg);
  std::string dump;
  recognize->add_option("--dump", dump, "Write the first recognition to this file");

  auto* membership = app.add_subcommand("membership", "Rewrite random members as programs");
  add_common(membership, cfg);

  auto* census = app.add_subcommand("census", "Classify torus cosets by element orders");
  add_common(census, cfg);
  bool serial = false;
  census->add_flag("--serial", serial, "Use the single-threaded reference");

  auto* bench = app.add_subcommand("bench", "Mean recognition and rewriting cost per m");
  add_common(bench, cfg);

  auto* express_cmd = app.add_subcommand("express", "Rewrite one matrix after recognition");
  std::string recognition_path, matrix_hex;
  express_cmd->add_option("--recognition", recognition_path, "File written by recognize --dump")
      ->required();
  express_cmd->add_option("--matrix", matrix_hex, "16 hex entries, row-major")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*recognize) return cmd_recognize(cfg, dump);
    if (*membership) return cmd_membership(cfg);
    if (*census) return cmd_census(cfg, serial);
    if (*bench) return cmd_bench(cfg);
    if (*express_cmd) return cmd_express(recognition_path, matrix_hex);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
