// heckelab: batch experiments over Hecke-eigenvalue correlation sums.
// Subcommands emit deterministic CSV/JSON payloads; run metadata
// (timestamps, config echo) goes to a side file so payloads stay
// byte-identical across reruns.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <hecke/acceptance.hpp>
#include <hecke/analysis.hpp>
#include <hecke/arith.hpp>
#include <hecke/eigen.hpp>
#include <hecke/eigen_cache.hpp>
#include <hecke/factor_sieve.hpp>
#include <hecke/galois.hpp>
#include <hecke/parallel.hpp>
#include <hecke/poly.hpp>
#include <hecke/series.hpp>
#include <hecke/sieve_bounds.hpp>

using nlohmann::json;
using namespace hecke;

namespace {

constexpr const char* kSpecVersion = "1";

struct GlobalOpts {
  unsigned threads = 0;
  uint64_t seed = 20240601;
  std::string cache_dir;
  std::string output;  // empty = stdout
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// payload goes to --output (or stdout); volatile metadata to <output>.meta.json
void emit(const GlobalOpts& g, const std::string& payload, const json& meta) {
  if (g.output.empty()) {
    std::fputs(payload.c_str(), stdout);
    return;
  }
  {
    std::ofstream out(g.output, std::ios::trunc);
    if (!out) throw Error(errc::io_error, "cannot write " + g.output);
    out << payload;
  }
  json m = meta;
  m["timestamp_unix"] = static_cast<int64_t>(std::time(nullptr));
  std::ofstream mo(g.output + ".meta.json", std::ios::trunc);
  mo << m.dump(2) << "\n";
}

json base_meta(const GlobalOpts& g, const std::string& subcommand) {
  json m;
  m["spec_version"] = kSpecVersion;
  m["subcommand"] = subcommand;
  m["workers"] = worker_count();
  m["seed"] = g.seed;
  return m;
}

std::string series_csv(const SumSeries& s, bool with_ratio) {
  std::string out = with_ratio ? "x,sum,sum_over_x\n" : "x,value\n";
  for (const auto& [x, v] : s.checkpoints) {
    out += std::to_string(x);
    out += ',';
    out += fmt_double(v);
    if (with_ratio) {
      out += ',';
      out += fmt_double(v / static_cast<double>(x));
    }
    out += '\n';
  }
  return out;
}

std::string resolve_cache_dir(const GlobalOpts& g) {
  if (!g.cache_dir.empty()) return g.cache_dir;
  if (const char* env = std::getenv("HECKELAB_CACHE_DIR")) return env;
  return "";
}

// Cached or freshly built table covering n_max.
std::shared_ptr<const EigenTable> obtain_table(const GlobalOpts& g, const FormSpec& spec,
                                               uint64_t n_max) {
  std::string dir = resolve_cache_dir(g);
  if (!dir.empty()) {
    std::string path = dir + "/" + cache_file_name(spec, n_max);
    std::ifstream probe(path);
    if (probe.good()) {
      probe.close();
      EigenTable t = load_table(path);
      if (t.n_max >= n_max && form_token(t.spec) == form_token(spec))
        return std::make_shared<EigenTable>(std::move(t));
    }
  }
  return std::make_shared<EigenTable>(build_table(spec, n_max));
}

EigenSource make_source(const GlobalOpts& g, const FormSpec& spec, uint64_t prime_need) {
  if (closed_form_at_primes(spec)) return EigenSource(spec);
  return EigenSource(spec, obtain_table(g, spec, prime_need));
}

// weight vocabulary for sieve bounds: const:<v> or mod:<m>,<r>[,<v>]
PrimeWeight parse_weight(const std::string& text) {
  if (text.rfind("const:", 0) == 0) {
    double v = std::stod(text.substr(6));
    return [v](uint64_t) { return v; };
  }
  if (text.rfind("mod:", 0) == 0) {
    std::string rest = text.substr(4);
    uint64_t m = 0, r = 0;
    double v = 1.0;
    char extra = 0;
    int matched = std::sscanf(rest.c_str(), "%" SCNu64 ",%" SCNu64 ",%lf%c", &m, &r, &v, &extra);
    if (matched < 2) matched = std::sscanf(rest.c_str(), "%" SCNu64 ",%" SCNu64 "%c", &m, &r, &extra);
    if (m == 0) throw Error(errc::parse_error, "bad weight spec '" + text + "'");
    return [m, r, v](uint64_t p) { return p % m == r % m ? v : 0.0; };
  }
  throw Error(errc::parse_error,
              "weight must be const:<v> or mod:<m>,<r>[,<v>]; got '" + text + "'");
}

int map_exit_code(const Error& e) {
  return e.code() == errc::capacity_exceeded ? 2 : 1;
}

void print_error_json(const Error& e) {
  json j;
  j["error"]["kind"] = errc_name(e.code());
  j["error"]["message"] = e.what();
  if (const auto* cap = dynamic_cast<const CapacityError*>(&e))
    j["error"]["feasible"] = cap->feasible();
  if (const auto* up = dynamic_cast<const UnsupportedPrimeError*>(&e)) {
    j["error"]["n"] = up->at_n();
    j["error"]["prime"] = up->prime();
  }
  std::cerr << j.dump() << "\n";
}

void warn_if_reducible(const Poly& P) {
  ReducibilityReport rep = reducibility_scan(P);
  if (rep.rational_root_found) {
    std::cerr << "warning: " << P.to_string() << " has rational root " << rep.root_num;
    if (rep.root_den != 1) std::cerr << "/" << rep.root_den;
    std::cerr << " (reducible; sums remain well-defined)\n";
  } else if (rep.pattern_split_found) {
    std::cerr << "warning: could not certify irreducibility of " << P.to_string()
              << "; factorization patterns are consistent with a " << rep.split_lo << "+"
              << rep.split_hi << " split\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlation sums of Hecke eigenvalues along polynomial values"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--threads", g.threads, "worker pool size (0 = hardware)");
  app.add_option("--seed", g.seed, "seed echoed into run metadata");
  app.add_option("--cache-dir", g.cache_dir,
                 "eigenvalue cache directory (or HECKELAB_CACHE_DIR)");
  app.add_option("-o,--output", g.output, "payload file (metadata goes to <file>.meta.json)");

  // --- eigen-gen ---
  std::string eg_form = "level1:12";
  uint64_t eg_nmax = 100000;
  auto* eigen_gen = app.add_subcommand("eigen-gen", "build an eigenvalue table cache file")->fallthrough();
  eigen_gen->add_option("--form", eg_form, "form spec")->required();
  eigen_gen->add_option("--nmax", eg_nmax, "table length")->required();

  // --- rho ---
  std::string rho_poly;
  uint64_t rho_pmax = 1000;
  auto* rho_cmd = app.add_subcommand("rho", "local root counts rho(p) as CSV")->fallthrough();
  rho_cmd->add_option("--poly", rho_poly)->required();
  rho_cmd->add_option("--pmax", rho_pmax)->required();

  // --- corr-sum ---
  std::string cs_form, cs_poly;
  uint64_t cs_xmax = 100000;
  double cs_ratio = 2.0;
  auto* corr = app.add_subcommand("corr-sum", "sum of |lambda(|P(n)|)| with checkpoints")->fallthrough();
  corr->add_option("--form", cs_form)->required();
  corr->add_option("--poly", cs_poly)->required();
  corr->add_option("--xmax", cs_xmax)->required();
  corr->add_option("--ratio", cs_ratio, "checkpoint ratio (> 1)");

  // --- prime-sum ---
  std::string ps_form, ps_kind = "S";
  uint64_t ps_xmax = 1000000;
  double ps_ratio = 2.0;
  auto* psum = app.add_subcommand("prime-sum", "S / T2 / T4 prime sums")->fallthrough();
  psum->add_option("--form", ps_form)->required();
  psum->add_option("--kind", ps_kind, "S, T2 or T4");
  psum->add_option("--xmax", ps_xmax)->required();
  psum->add_option("--ratio", ps_ratio);

  // --- weighted-sum ---
  std::string ws_form, ws_poly;
  uint64_t ws_xmax = 1000000;
  double ws_ratio = 2.0;
  auto* wsum = app.add_subcommand("weighted-sum", "rho-weighted prime sum")->fallthrough();
  wsum->add_option("--form", ws_form)->required();
  wsum->add_option("--poly", ws_poly)->required();
  wsum->add_option("--xmax", ws_xmax)->required();
  wsum->add_option("--ratio", ws_ratio);

  // --- sieve-bound ---
  std::string sb_poly, sb_weight = "const:1", sb_kind = "nair";
  uint64_t sb_xmax = 100000;
  double sb_floor = 0.1;
  auto* sbound = app.add_subcommand("sieve-bound", "sieve bound formulas / lower-bound condition")->fallthrough();
  sbound->add_option("--poly", sb_poly, "needed for the nair kind");
  sbound->add_option("--f", sb_weight, "weight: const:<v> or mod:<m>,<r>[,<v>]");
  sbound->add_option("--kind", sb_kind, "nair, classical-upper, classical-lower or condition");
  sbound->add_option("--xmax", sb_xmax)->required();
  sbound->add_option("--floor", sb_floor, "condition floor");

  // --- fit ---
  std::string fit_input, fit_mode = "value";
  uint64_t fit_lo = 1000, fit_hi = 10000000;
  auto* fit_cmd = app.add_subcommand("fit", "log log X least squares over a series CSV")->fallthrough();
  fit_cmd->add_option("--input", fit_input, "CSV with x,value (or x,sum) columns")->required();
  fit_cmd->add_option("--window", [&fit_lo, &fit_hi](const std::vector<std::string>& vals) {
    return std::sscanf(vals[0].c_str(), "%" SCNu64 ",%" SCNu64, &fit_lo, &fit_hi) == 2;
  }, "window lo,hi");
  fit_cmd->add_option("--mode", fit_mode, "value (prime sums) or log-ratio (full sums)");

  // --- delta ---
  auto* delta_cmd = app.add_subcommand("delta", "the moment-inequality constant on both ranges")->fallthrough();

  // --- dihedral ---
  uint64_t dh_n = 0, dh_upto = 0;
  int64_t dh_a = -1;
  auto* dih = app.add_subcommand("dihedral", "dihedral |character| averages")->fallthrough();
  dih->add_option("--n", dh_n, "single group D_{2n}");
  dih->add_option("--a", dh_a, "irrep index (default: all valid)");
  dih->add_option("--upto", dh_upto, "table for all 3 <= n <= upto");

  // --- chebotarev ---
  std::string cb_poly, cb_expected;
  uint64_t cb_xmax = 1000000;
  auto* cheb = app.add_subcommand("chebotarev", "factorization-pattern frequencies")->fallthrough();
  cheb->add_option("--poly", cb_poly)->required();
  cheb->add_option("--xmax", cb_xmax)->required();
  cheb->add_option("--expected", cb_expected, "JSON {pattern: density} to compare against");

  // --- noncuspidal-lb ---
  std::string nl_poly;
  int64_t nl_disc = -4;
  uint64_t nl_xmax = 1000, nl_bound = 10000;
  auto* nlb = app.add_subcommand("noncuspidal-lb", "screened ideal-count lower bound")->fallthrough();
  nlb->add_option("--poly", nl_poly)->required();
  nlb->add_option("--disc", nl_disc)->required();
  nlb->add_option("--xmax", nl_xmax)->required();
  nlb->add_option("--bound", nl_bound, "squarefree screen bound B");

  // --- counterexample ---
  uint64_t ce_xmax = 10000;
  auto* ce = app.add_subcommand("counterexample", "the no-lower-bound-sieve demonstration")->fallthrough();
  ce->add_option("--xmax", ce_xmax)->required();

  // --- repro ---
  bool repro_quick = false;
  auto* repro = app.add_subcommand("repro", "run the full acceptance suite")->fallthrough();
  repro->add_flag("--quick", repro_quick, "scaled-down smoke run (never an official pass)");

  CLI11_PARSE(app, argc, argv);
  set_worker_count(g.threads);

  try {
    if (eigen_gen->parsed()) {
      FormSpec spec = parse_form(eg_form);
      EigenTable t = build_table(spec, eg_nmax);
      std::string dir = resolve_cache_dir(g);
      std::string path = !g.output.empty()
                             ? g.output
                             : (dir.empty() ? "." : dir) + "/" + cache_file_name(spec, eg_nmax);
      save_table(t, path);
      json j;
      j["spec_version"] = kSpecVersion;
      j["form"] = form_token(spec);
      j["n_max"] = t.n_max;
      j["raw_len"] = t.raw_len;
      j["file"] = path;
      std::cout << j.dump(2) << "\n";
    } else if (rho_cmd->parsed()) {
      Poly P = parse_poly(rho_poly);
      warn_if_reducible(P);
      RhoTable t = rho_table(P, rho_pmax);
      std::string payload = "p,rho\n";
      for (auto [p, r] : t.entries)
        payload += std::to_string(p) + "," + std::to_string(r) + "\n";
      json meta = base_meta(g, "rho");
      meta["degenerate_primes"] = t.degenerate;
      meta["mean_rho"] = t.mean();
      emit(g, payload, meta);
    } else if (corr->parsed()) {
      Poly P = parse_poly(cs_poly);
      warn_if_reducible(P);
      FormSpec spec = parse_form(cs_form);
      uint64_t need = 0;
      if (!closed_form_at_primes(spec)) {
        BigInt b = P.bound_abs(cs_xmax);
        if (b > BigInt(std::numeric_limits<int64_t>::max()))
          throw CapacityError("table-backed forms cannot reach the value bound " + b.str(), 0);
        need = b.convert_to<uint64_t>();
      }
      EigenSource src = make_source(g, spec, need);
      EvalResult res = eval_multiplicative(P, cs_xmax, src, cs_ratio);
      json meta = base_meta(g, "corr-sum");
      meta["zero_skipped"] = res.zero_skipped;
      meta["unit_terms"] = res.unit_terms;
      meta["label"] = res.series.label;
      emit(g, series_csv(res.series, true), meta);
    } else if (psum->parsed()) {
      FormSpec spec = parse_form(ps_form);
      PrimeSumKind kind = ps_kind == "S"    ? PrimeSumKind::S
                          : ps_kind == "T2" ? PrimeSumKind::T2
                          : ps_kind == "T4"
                              ? PrimeSumKind::T4
                              : throw Error(errc::parse_error, "kind must be S, T2 or T4");
      EigenSource src = make_source(g, spec, ps_xmax);
      SumSeries s = prime_sum(src, kind, ps_xmax, ps_ratio);
      emit(g, series_csv(s, false), base_meta(g, "prime-sum"));
    } else if (wsum->parsed()) {
      Poly P = parse_poly(ws_poly);
      warn_if_reducible(P);
      FormSpec spec = parse_form(ws_form);
      RhoTable rt = rho_table(P, ws_xmax);
      EigenSource src = make_source(g, spec, ws_xmax);
      SumSeries s = weighted_prime_sum(src, rt, ws_xmax, ws_ratio);
      emit(g, series_csv(s, false), base_meta(g, "weighted-sum"));
    } else if (sbound->parsed()) {
      PrimeWeight f = parse_weight(sb_weight);
      if (sb_kind == "condition") {
        LowerBoundCondition c = lower_bound_condition(f, sb_xmax, sb_floor);
        json j;
        j["spec_version"] = kSpecVersion;
        j["y"] = sb_xmax;
        j["ratio"] = c.ratio;
        j["satisfied"] = c.satisfied;
        j["floor"] = c.floor;
        emit(g, j.dump(2) + "\n", base_meta(g, "sieve-bound"));
      } else {
        std::string payload = "x,kind,exponent_sum,bound\n";
        auto add_row = [&](const BoundReport& r) {
          payload += std::to_string(r.x);
          payload += ",";
          payload += bound_kind_name(r.kind);
          payload += ",";
          payload += fmt_double(r.exponent_sum);
          payload += ",";
          payload += fmt_double(r.bound_value);
          payload += "\n";
        };
        auto grid = checkpoint_grid(sb_xmax);
        if (sb_kind == "nair") {
          if (sb_poly.empty())
            throw Error(errc::domain_error, "nair bound needs --poly");
          Poly P = parse_poly(sb_poly);
          warn_if_reducible(P);
          RhoTable rt = rho_table(P, sb_xmax);
          for (uint64_t x : grid) add_row(nair_bound(f, rt, x));
        } else if (sb_kind == "classical-upper" || sb_kind == "classical-lower") {
          BoundKind k = sb_kind == "classical-upper" ? BoundKind::classical_upper
                                                     : BoundKind::classical_lower;
          for (uint64_t x : grid) add_row(classical_product_bound(f, x, k));
        } else {
          throw Error(errc::parse_error, "unknown bound kind '" + sb_kind + "'");
        }
        emit(g, payload, base_meta(g, "sieve-bound"));
      }
    } else if (fit_cmd->parsed()) {
      std::ifstream in(fit_input);
      if (!in) throw Error(errc::io_error, "cannot open " + fit_input);
      SumSeries s;
      s.label = fit_input;
      std::string line;
      bool header = true;
      while (std::getline(in, line)) {
        if (header) {
          header = false;
          continue;
        }
        uint64_t x;
        double v;
        if (std::sscanf(line.c_str(), "%" SCNu64 ",%lf", &x, &v) == 2)
          s.checkpoints.emplace_back(x, v);
      }
      FitResult f = fit_mode == "log-ratio" ? fit_loglog_of_ratio(s, fit_lo, fit_hi)
                                            : fit_loglog(s, fit_lo, fit_hi);
      json j;
      j["spec_version"] = kSpecVersion;
      j["label"] = f.label;
      j["slope"] = f.slope;
      j["intercept"] = f.intercept;
      j["r2"] = f.r_squared;
      j["window"] = {f.window_lo, f.window_hi};
      emit(g, j.dump(2) + "\n", base_meta(g, "fit"));
    } else if (delta_cmd->parsed()) {
      json arr = json::array();
      for (double hi : {2.0, 3.0}) {
        DeltaResult d = delta_constant(-1.0, hi);
        json j;
        j["range"] = {d.lo, d.hi};
        j["value"] = d.value;
        j["argmin"] = d.argmin;
        j["pointwise_worst_violation"] = pointwise_inequality_check(d.value);
        arr.push_back(j);
      }
      json out;
      out["spec_version"] = kSpecVersion;
      out["delta"] = arr;
      emit(g, out.dump(2) + "\n", base_meta(g, "delta"));
    } else if (dih->parsed()) {
      std::string payload = "n,a,power1_avg,power2_avg\n";
      auto add = [&](uint64_t n, uint64_t a) {
        DihedralSpec spec{n, a};
        payload += std::to_string(n) + "," + std::to_string(a) + "," +
                   fmt_double(dihedral_char_average(spec, 1)) + "," +
                   fmt_double(dihedral_char_average(spec, 2)) + "\n";
      };
      if (dh_upto >= 3) {
        for (uint64_t n = 3; n <= dh_upto; ++n)
          for (uint64_t a = 1; 2 * a < n; ++a) add(n, a);
      } else if (dh_n >= 3) {
        if (dh_a >= 1)
          add(dh_n, static_cast<uint64_t>(dh_a));
        else
          for (uint64_t a = 1; 2 * a < dh_n; ++a) add(dh_n, a);
      } else {
        throw Error(errc::domain_error, "need --n or --upto (>= 3)");
      }
      emit(g, payload, base_meta(g, "dihedral"));
    } else if (cheb->parsed()) {
      Poly P = parse_poly(cb_poly);
      warn_if_reducible(P);
      ClassFrequencies cf = chebotarev_stats(P, cb_xmax);
      std::string payload = "pattern,frequency,count\n";
      for (const auto& [k, c] : cf.counts)
        payload += k + "," + fmt_double(static_cast<double>(c) / cf.sample_size) + "," +
                   std::to_string(c) + "\n";
      json meta = base_meta(g, "chebotarev");
      meta["sample_size"] = cf.sample_size;
      meta["ramified_skipped"] = cf.ramified_skipped;
      meta["degenerate_skipped"] = cf.degenerate_skipped;
      if (!cb_expected.empty()) {
        std::ifstream in(cb_expected);
        if (!in) throw Error(errc::io_error, "cannot open " + cb_expected);
        json exp = json::parse(in);
        double worst = 0.0;
        for (auto it = exp.begin(); it != exp.end(); ++it)
          worst = std::max(worst, std::fabs(cf.freq(it.key()) - it.value().get<double>()));
        meta["expected_file"] = cb_expected;
        meta["max_abs_deviation"] = worst;
        std::cerr << "max |observed - expected| = " << worst << "\n";
      }
      emit(g, payload, meta);
    } else if (nlb->parsed()) {
      Poly P = parse_poly(nl_poly);
      warn_if_reducible(P);
      NoncuspidalLowerBound r = noncuspidal_lower_bound(P, nl_disc, nl_xmax, nl_bound);
      json meta = base_meta(g, "noncuspidal-lb");
      meta["total"] = r.total;
      meta["terms"] = r.terms;
      meta["screened_out"] = r.screened_out;
      meta["zero_values"] = r.zero_values;
      emit(g, series_csv(r.series, false), meta);
    } else if (ce->parsed()) {
      CounterexampleResult r = counterexample_demo(ce_xmax);
      json j;
      j["spec_version"] = kSpecVersion;
      j["x"] = r.x;
      j["sum"] = r.sum;
      j["pseudo_lower_bound"] = r.pseudo_lower_bound;
      emit(g, j.dump(2) + "\n", base_meta(g, "counterexample"));
    } else if (repro->parsed()) {
      accept::Options opt;
      opt.quick = repro_quick;
      opt.workers = g.threads;
      auto results = accept::run_all(std::cout, opt);
      if (!accept::all_passed(results)) return 3;
    }
  } catch (const Error& e) {
    print_error_json(e);
    return map_exit_code(e);
  } catch (const std::exception& e) {
    json j;
    j["error"]["kind"] = "Internal";
    j["error"]["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return 1;
  }
  return 0;
}
