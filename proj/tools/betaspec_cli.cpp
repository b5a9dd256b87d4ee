#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "betaspec/continuity.hpp"
#include "betaspec/errors.hpp"
#include "betaspec/functional.hpp"
#include "betaspec/parallel.hpp"
#include "betaspec/quartic.hpp"
#include "betaspec/report.hpp"
#include "betaspec/spectra.hpp"
#include "betaspec/transfer.hpp"

using namespace betaspec;
using report::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string precision = "double-double";
  int horizon = BetaSpec::kDefaultHorizon;
  double tol = 0.0;
  std::string output;
  std::string format;
  int threads = 1;

  SpectrumOptions spectrum() const {
    SpectrumOptions o;
    o.tol = tol;
    o.polish_dd = precision == "double-double";
    return o;
  }
  bool csv(const char* fallback = "json") const { return (format.empty() ? std::string(fallback) : format) == "csv"; }
};

BetaSpec parse_beta(const std::string& text, int horizon) {
  try {
    return BetaSpec::parse(text, horizon);
  } catch (const Error& e) {
    throw UsageError("bad beta spec '" + text + "': " + e.what());
  }
}

Rational parse_real(const std::string& text, const char* what) {
  try {
    return parse_decimal(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad ") + what + " '" + text + "'");
  }
}

cplx parse_lambda(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    if (comma == std::string::npos) {
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string tail = text.substr(comma + 1);
    const double im = std::stod(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::logic_error&) {
    throw UsageError("bad lambda '" + text + "', expected re,im");
  }
}

// Largest non-leading eigenvalue when no lambda is given.
cplx default_lambda(const BetaSpec& beta, const RunConfig& cfg) {
  const SpectrumReport r = locate_eigenvalues(beta, cfg.spectrum());
  for (const Eigenvalue& e : r.eigenvalues)
    if (e.kind == EigenKind::NonLeading) return e.lambda;
  fail(ErrorKind::Precondition, "no non-leading eigenvalue at " + beta.definition() + "; pass --lambda");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty() || cfg.output == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) fail(ErrorKind::Precondition, "cannot open " + cfg.output);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of beta-transformation transfer operators"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  auto* precision = app.add_option("--precision", cfg.precision, "double or double-double (env BETASPEC_PRECISION)")
                        ->check(CLI::IsMember({"double", "double-double"}));
  app.add_option("--horizon", cfg.horizon, "digit horizon")->check(CLI::Range(8, 1 << 16));
  app.add_option("--tol", cfg.tol, "tolerance (0: automatic)")->check(CLI::Range(0.0, 1.0));
  app.add_option("--output,-o", cfg.output, "output path (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* threads = app.add_option("--threads", cfg.threads, "worker threads (env BETASPEC_THREADS)")->check(CLI::Range(1, 256));

  std::string beta_text, x_text = "1", lambda_text;
  int count = 24;
  double ceiling = 0.95;

  auto* digits = app.add_subcommand("digits", "greedy and quasi-greedy digits of x");
  digits->add_option("--beta", beta_text)->required();
  digits->add_option("--x", x_text, "point in [0,1]");
  digits->add_option("--n", count, "number of digits")->check(CLI::Range(1, 1 << 16));

  auto* spectrum = app.add_subcommand("spectrum", "isolated eigenvalues");
  spectrum->add_option("--beta", beta_text)->required();
  spectrum->add_option("--ceiling", ceiling, "outer radius as a fraction of beta")->check(CLI::Range(0.5, 0.97));

  std::string lo_text, hi_text;
  int grid = 64;
  auto* scan = app.add_subcommand("scan", "spectra over a grid of bases");
  scan->add_option("--lo", lo_text)->required();
  scan->add_option("--hi", hi_text)->required();
  scan->add_option("--grid", grid)->check(CLI::Range(2, 1 << 20));
  scan->add_option("--ceiling", ceiling)->check(CLI::Range(0.5, 0.97));

  double window = 0.01;
  int steps = 21;
  auto* track_cmd = app.add_subcommand("track", "continue an eigenvalue in beta");
  track_cmd->add_option("--beta0", beta_text)->required();
  track_cmd->add_option("--lambda", lambda_text, "re,im (default: largest non-leading)");
  track_cmd->add_option("--window", window)->check(CLI::Range(1e-12, 1.0));
  track_cmd->add_option("--steps", steps)->check(CLI::Range(2, 100000));

  int probes = 6;
  auto* holder = app.add_subcommand("holder", "Hoelder constants and difference quotients");
  holder->add_option("--beta0", beta_text)->required();
  holder->add_option("--lambda", lambda_text);
  holder->add_option("--probes", probes)->check(CLI::Range(1, 64));

  int samples = 101;
  auto* functional = app.add_subcommand("functional", "F_lambda on a grid of x");
  functional->add_option("--beta", beta_text)->required();
  functional->add_option("--lambda", lambda_text);
  functional->add_option("--samples", samples)->check(CLI::Range(2, 1 << 20));

  bool construct = false;
  int nmax = 40, nlo = -1;
  auto* decay = app.add_subcommand("decay", "BV-norm decay of L^n f");
  decay->add_option("--beta", beta_text)->required();
  decay->add_flag("--construct", construct, "use the good-decay observable");
  decay->add_option("--nmax", nmax)->check(CLI::Range(10, 10000));
  decay->add_option("--nlo", nlo, "start of the fit window (default nmax/2)");

  std::string family_text;
  int n_only = 0;
  auto* verify = app.add_subcommand("verify-appendix", "check the quartic families");
  verify->add_option("--family", family_text)->check(CLI::IsMember({"P", "Q", "R"}));
  verify->add_option("--n", n_only)->check(CLI::Range(3, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (const char* env = std::getenv("BETASPEC_PRECISION"); env && precision->count() == 0) cfg.precision = env;
    if (cfg.precision != "double" && cfg.precision != "double-double")
      throw UsageError("precision must be double or double-double, got '" + cfg.precision + "'");
    if (const char* env = std::getenv("BETASPEC_THREADS"); env && threads->count() == 0) {
      char* end = nullptr;
      const long t = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || t < 1 || t > 256) throw UsageError(std::string("bad BETASPEC_THREADS '") + env + "'");
      cfg.threads = static_cast<int>(t);
    }
    if (*digits) {
      const BetaSpec beta = parse_beta(beta_text, cfg.horizon);
      const Rational x = parse_real(x_text, "x");
      if (x < 0 || x > 1) throw UsageError("x must lie in [0,1]");
      const DigitSequence d = greedy_digits(beta, x, count);
      if (cfg.csv()) return emit(cfg, report::digits_csv(d)), 0;
      json j = report::document("digits");
      j["beta"] = beta.definition();
      j["beta_value"] = beta.value();
      j.update(report::to_json(d));
      emit(cfg, report::dump(j));
    } else if (*spectrum) {
      const BetaSpec beta = parse_beta(beta_text, cfg.horizon);
      SpectrumOptions o = cfg.spectrum();
      o.ceiling = ceiling;
      json j = report::document("spectrum");
      j.update(report::to_json(locate_eigenvalues(beta, o)));
      emit(cfg, report::dump(j));
    } else if (*scan) {
      const Rational lo = parse_real(lo_text, "lo"), hi = parse_real(hi_text, "hi");
      if (!(lo > 1) || !(hi > lo)) throw UsageError("need 1 < lo < hi");
      SpectrumOptions o = cfg.spectrum();
      o.ceiling = ceiling;
      const ScanResult r = scan_beta_range(lo, hi, grid, cfg.threads, o, cfg.horizon);
      if (cfg.csv()) return emit(cfg, report::scan_csv(r)), 0;
      json j = report::document("scan");
      j["lo"] = lo_text;
      j["hi"] = hi_text;
      j["grid"] = grid;
      j.update(report::to_json(r));
      emit(cfg, report::dump(j));
    } else if (*track_cmd) {
      const BetaSpec beta = parse_beta(beta_text, cfg.horizon);
      const cplx lambda = lambda_text.empty() ? default_lambda(beta, cfg) : parse_lambda(lambda_text);
      TrackOptions o;
      if (cfg.tol > 0) o.tol = cfg.tol;
      o.horizon = cfg.horizon;
      const EigenCurve c = track(beta, lambda, beta.value() - window, beta.value() + window, steps, o);
      if (cfg.csv("csv")) return emit(cfg, report::curve_csv(c)), 0;
      json j = report::document("track");
      j.update(report::to_json(c));
      emit(cfg, report::dump(j));
    } else if (*holder) {
      const BetaSpec beta = parse_beta(beta_text, cfg.horizon);
      const cplx lambda = lambda_text.empty() ? default_lambda(beta, cfg) : parse_lambda(lambda_text);
      HoelderEstimate h = holder_constants(beta, lambda);
      std::vector<ProbePoint> table;
      json probe_error = nullptr;
      try {
        ProbeOptions po;
        if (cfg.tol > 0) po.tol = cfg.tol;
        table = nondiff_probe(beta, lambda, probes, po);
        if (const auto fit = fit_exponent(table, std::min<int>(5, static_cast<int>(table.size())), po.tol))
          h.fitted_left = *fit;
      } catch (const Error& e) {
        probe_error = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
      }
      if (cfg.csv()) return emit(cfg, report::probe_csv(table)), 0;
      json j = report::document("holder");
      j["beta"] = beta.definition();
      j["lambda"] = report::complex(lambda);
      j["estimate"] = report::to_json(h);
      json rows = json::array();
      for (const auto& p : table) rows.push_back(report::to_json(p));
      j["probes"] = rows;
      j["probe_error"] = probe_error;
      emit(cfg, report::dump(j));
    } else if (*functional) {
      const BetaSpec beta = parse_beta(beta_text, cfg.horizon);
      const cplx lambda = lambda_text.empty() ? default_lambda(beta, cfg) : parse_lambda(lambda_text);
      const double tol = cfg.tol > 0 ? cfg.tol : 1e-12;
      std::vector<FunctionalEval> out(static_cast<std::size_t>(samples));
      parallel_for(samples, cfg.threads, [&](int i) {
        const Rational x = Rational(i) / Rational(samples - 1);
        out[static_cast<std::size_t>(i)] = eval_F(beta, lambda, beta.point(x), tol);
      });
      if (cfg.csv("csv")) return emit(cfg, report::functional_csv(out)), 0;
      json j = report::document("functional");
      j["beta"] = beta.definition();
      j["lambda"] = report::complex(lambda);
      j["continuity_residual"] = continuity_residual(beta, lambda, tol);
      json rows = json::array();
      for (const auto& f : out) rows.push_back({f.x, f.value.real(), f.value.imag(), f.tail_bound});
      j["samples"] = rows;
      emit(cfg, report::dump(j));
    } else if (*decay) {
      const BetaSpec beta = parse_beta(beta_text, cfg.horizon);
      StepFunction f;
      std::string observable = "centered 1_[0,0.37]";
      if (construct) {
        const auto sub = subleading(beta, cfg.spectrum());
        const std::vector<Eigenvalue> ev = sub ? sub->eigenvalues : std::vector<Eigenvalue>{};
        f = good_decay_construct(beta, ev, 1, cfg.tol > 0 ? cfg.tol : 1e-10);
        observable = "good-decay construction";
      } else {
        f = combine(beta, 1.0, indicator(beta, beta.point(Rational(37, 100))), -0.37, constant(beta));
      }
      const DecayFit d = decay_fit(beta, f, nmax, nlo);
      if (cfg.csv()) return emit(cfg, report::decay_csv(d)), 0;
      json j = report::document("decay");
      j["beta"] = beta.definition();
      j["observable"] = observable;
      j["function"] = report::to_json(f);
      j["fit"] = report::to_json(d);
      emit(cfg, report::dump(j));
    } else if (*verify) {
      std::vector<QuarticFamily> cases;
      std::vector<Family> fams;
      if (family_text.empty()) fams = {Family::P, Family::Q, Family::R};
      else fams = {parse_family(family_text)};
      for (Family f : fams) {
        const int first = f == Family::P ? 3 : 4;
        if (n_only > 0) {
          if (n_only < first) throw UsageError("n below the family range");
          cases.emplace_back(f, n_only);
        } else {
          for (int n = first; n <= 8; ++n) cases.emplace_back(f, n);
        }
      }
      const double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
      std::vector<VerificationReport> reps(cases.size());
      parallel_for(static_cast<int>(cases.size()), cfg.threads, [&](int i) {
        reps[static_cast<std::size_t>(i)] = verify_example(cases[static_cast<std::size_t>(i)], tol);
      });
      json j = report::document("verify-appendix");
      json all = json::array();
      bool ok = true;
      for (const auto& r : reps) {
        all.push_back(report::to_json(r));
        ok = ok && r.passed();
      }
      j["passed"] = ok;
      j["reports"] = all;
      emit(cfg, report::dump(j));
      for (const auto& r : reps) require_verified(r);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fputs(report::dump(report::error(e.kind(), e.what())).c_str(), stderr);
    return 1;
  } catch (const std::exception& e) {
    std::fputs(report::dump(report::error(ErrorKind::Precondition, e.what())).c_str(), stderr);
    return 1;
  }
  return 0;
}
