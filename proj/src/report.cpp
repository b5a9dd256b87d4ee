#include "betaspec/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace betaspec::report {

namespace {

const char* kind_name(EigenKind k) { return k == EigenKind::Leading ? "leading" : "nonleading"; }

template <class T>
json optional_value(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json complex(cplx z) { return json::array({z.real(), z.imag()}); }

json document(const char* kind) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j;
}

json to_json(const Eigenvalue& e) {
  return {{"lambda", complex(e.lambda)},
          {"modulus", std::abs(e.lambda)},
          {"z", complex(e.z)},
          {"multiplicity", e.multiplicity},
          {"residual", e.residual},
          {"kind", kind_name(e.kind)}};
}

json to_json(const SpectrumReport& r) {
  json ev = json::array();
  for (const auto& e : r.eigenvalues) ev.push_back(to_json(e));
  return {{"beta", r.beta},
          {"beta_value", r.beta_value},
          {"exact", r.exact},
          {"tol", r.tol},
          {"r_inner", r.r_inner},
          {"r_outer", r.r_outer},
          {"contour_winding_total", r.contour_winding_total},
          {"nonleading_count", r.nonleading_count()},
          {"subleading_modulus", optional_value(r.subleading_modulus)},
          {"eigenvalues", ev}};
}

json to_json(const ScanPoint& p) {
  json j{{"beta", p.beta}, {"beta_value", p.beta_value}};
  if (p.report) {
    j["report"] = to_json(*p.report);
  } else {
    j["error"] = {{"kind", p.error_kind}, {"message", p.message}};
  }
  return j;
}

json to_json(const ScanResult& r) {
  json pts = json::array();
  int failed = 0, with = 0;
  for (const auto& p : r.points) {
    pts.push_back(to_json(p));
    if (!p.report) ++failed;
    else if (p.report->nonleading_count() > 0) ++with;
  }
  return {{"points", pts},
          {"summary",
           {{"count", r.points.size()},
            {"failed", failed},
            {"with_nonleading", with},
            {"nonleading_fraction", r.nonleading_fraction}}}};
}

json to_json(const DigitSequence& d) {
  return {{"x", d.point},
          {"horizon", d.horizon},
          {"trust_horizon", d.trust_horizon},
          {"greedy", d.greedy},
          {"quasi_greedy", d.quasi_greedy},
          {"simple_index", optional_value(d.simple_index)}};
}

json to_json(const EigenCurve& c) {
  json pts = json::array();
  for (std::size_t i = 0; i < c.betas.size(); ++i)
    pts.push_back({{"beta", c.betas[i]}, {"lambda", complex(c.lambdas[i])}, {"residual", c.residuals[i]}});
  return {{"beta0", c.beta0},
          {"lambda0", complex(c.lambda0)},
          {"multiplicity", c.multiplicity},
          {"truncated_left", c.truncated_left},
          {"truncated_right", c.truncated_right},
          {"non_canonical", c.non_canonical},
          {"points", pts}};
}

json to_json(const HoelderEstimate& h) {
  return {{"gamma1", h.gamma1},
          {"gamma2", h.gamma2},
          {"alpha0", h.alpha0},
          {"alpha1", optional_value(h.alpha1)},
          {"alpha2", optional_value(h.alpha2)},
          {"fitted_left", optional_value(h.fitted_left)},
          {"fitted_right", optional_value(h.fitted_right)},
          {"horizon", h.horizon},
          {"multiplicity", h.multiplicity},
          {"parry", h.parry},
          {"notes", h.notes}};
}

json to_json(const ProbePoint& p) {
  return {{"depth", p.depth},
          {"beta", p.beta_definition},
          {"beta_value", p.beta},
          {"gap", p.gap},
          {"lambda", complex(p.lambda)},
          {"lambda_shift", p.lambda_shift},
          {"quotient", p.quotient},
          {"residual", p.residual}};
}

json to_json(const StepFunction& f) {
  json t = json::array();
  for (const auto& s : f.terms) t.push_back({{"x", s.x.value.to_double()}, {"c", complex(s.c)}});
  return {{"terms", t}, {"bv_norm", bv_norm(f)}, {"integral", complex(integral_lebesgue(f))}};
}

json to_json(const DecayFit& d) {
  json rates = json::array();
  for (const auto& [n, v] : d.rates) rates.push_back({n, v});
  return {{"fitted_alpha", d.fitted_alpha},
          {"fit_window", {d.fit_window.first, d.fit_window.second}},
          {"r_squared", d.r_squared},
          {"slope_stderr", d.slope_stderr},
          {"underflow", d.underflow},
          {"rates", rates}};
}

json to_json(const QuarticRoots& r) {
  json pairs = json::array();
  for (const auto& z : r.complex_pairs) pairs.push_back(complex(z));
  return {{"beta", r.beta}, {"real_roots", r.real_roots}, {"complex_pairs", pairs}, {"vieta_error", r.vieta_error}};
}

json to_json(const VerificationReport& r) {
  json clauses = json::array();
  for (const auto& c : r.clauses) clauses.push_back({{"clause", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json expected = json::array();
  for (const auto& l : r.expected.lambdas) expected.push_back(complex(l));
  return {{"family", to_string(r.family)},
          {"n", r.n},
          {"beta", r.beta_definition},
          {"beta_value", r.beta},
          {"tol", r.tol},
          {"passed", r.passed()},
          {"clauses", clauses},
          {"roots", to_json(r.roots)},
          {"expected_nonleading", expected},
          {"spectrum", to_json(r.spectrum)},
          {"seconds", r.seconds}};
}

json error(ErrorKind kind, const std::string& message) {
  json j = document("error");
  j["error"] = {{"kind", std::string(to_string(kind))}, {"message", message}};
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string scan_csv(const ScanResult& r) {
  std::ostringstream s;
  s << "beta,beta_value,lambda_re,lambda_im,modulus,multiplicity,kind,residual,error\n";
  for (const auto& p : r.points) {
    const std::string head = "\"" + p.beta + "\"," + csv_number(p.beta_value) + ",";
    if (!p.report) {
      s << head << ",,,,,," << p.error_kind << "\n";
      continue;
    }
    for (const auto& e : p.report->eigenvalues)
      s << head << csv_number(e.lambda.real()) << "," << csv_number(e.lambda.imag()) << ","
        << csv_number(std::abs(e.lambda)) << "," << e.multiplicity << "," << kind_name(e.kind) << ","
        << csv_number(e.residual) << ",\n";
  }
  return s.str();
}

std::string curve_csv(const EigenCurve& c) {
  std::ostringstream s;
  s << "beta,lambda_re,lambda_im,residual\n";
  for (std::size_t i = 0; i < c.betas.size(); ++i)
    s << csv_number(c.betas[i]) << "," << csv_number(c.lambdas[i].real()) << "," << csv_number(c.lambdas[i].imag())
      << "," << csv_number(c.residuals[i]) << "\n";
  return s.str();
}

std::string digits_csv(const DigitSequence& d) {
  std::ostringstream s;
  s << "n,greedy,quasi_greedy\n";
  const std::size_t m = std::max(d.greedy.size(), d.quasi_greedy.size());
  for (std::size_t k = 0; k < m; ++k) {
    s << k + 1 << ",";
    if (k < d.greedy.size()) s << d.greedy[k];
    s << ",";
    if (k < d.quasi_greedy.size()) s << d.quasi_greedy[k];
    s << "\n";
  }
  return s.str();
}

std::string functional_csv(std::span<const FunctionalEval> samples) {
  std::ostringstream s;
  s << "x,F_re,F_im,tail_bound\n";
  for (const auto& f : samples)
    s << csv_number(f.x) << "," << csv_number(f.value.real()) << "," << csv_number(f.value.imag()) << ","
      << csv_number(f.tail_bound) << "\n";
  return s.str();
}

std::string probe_csv(std::span<const ProbePoint> probes) {
  std::ostringstream s;
  s << "depth,beta_value,gap,lambda_re,lambda_im,lambda_shift,quotient\n";
  for (const auto& p : probes)
    s << p.depth << "," << csv_number(p.beta) << "," << csv_number(p.gap) << "," << csv_number(p.lambda.real()) << ","
      << csv_number(p.lambda.imag()) << "," << csv_number(p.lambda_shift) << "," << csv_number(p.quotient) << "\n";
  return s.str();
}

std::string decay_csv(const DecayFit& d) {
  std::ostringstream s;
  s << "n,bv_norm\n";
  for (const auto& [n, v] : d.rates) s << n << "," << csv_number(v) << "\n";
  return s.str();
}

}  // namespace betaspec::report
