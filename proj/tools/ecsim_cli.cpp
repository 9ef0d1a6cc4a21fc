// Copyright 2026 The ecsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Talks to the library only through ecsim.h.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ecsim/ecsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

// Library failure carrying the status for the exit message.
class ApiError : public std::runtime_error {
 public:
  explicit ApiError(ecsim_status status)
      : std::runtime_error(std::string(ecsim_status_name(status)) + ": " +
                           ecsim_last_error()) {}
};

void check(ecsim_status status) {
  if (status != ECSIM_OK) throw ApiError(status);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

struct Grid {
  std::vector<double> spec;  // {min, max, steps}

  std::vector<double> points(const char* name) const {
    const double lo = spec.at(0);
    const double hi = spec.at(1);
    const double steps = spec.at(2);
    if (steps < 2 || steps != std::floor(steps)) {
      throw CLI::ValidationError(name, "steps must be an integer >= 2");
    }
    if (!(hi >= lo)) throw CLI::ValidationError(name, "range must satisfy min <= max");
    const int n = static_cast<int>(steps);
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = lo + (hi - lo) * k / (n - 1);
    return out;
  }
};

struct Common {
  int m = 3;
  double alpha = 1.0;
  std::string sign = "minus";
  double k1_re = M_SQRT1_2;
  double k1_im = 0.0;
  double k2_re = M_SQRT1_2;
  double k2_im = 0.0;
  std::string engine;
  std::string out;

  ecsim_sign c_sign() const { return sign == "plus" ? ECSIM_SIGN_PLUS : ECSIM_SIGN_MINUS; }
  ecsim_complex c_alpha() const { return {alpha, 0.0}; }
  ecsim_teleport_setup setup() const {
    return {m, c_alpha(), c_sign(), {k1_re, k1_im}, {k2_re, k2_im}};
  }
};

// Writes to --out when given, otherwise to standard output.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw CLI::ValidationError("--out", "cannot open " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct ReportDeleter {
  void operator()(ecsim_report* r) const { ecsim_report_destroy(r); }
};
using ReportPtr = std::unique_ptr<ecsim_report, ReportDeleter>;

struct StateDeleter {
  void operator()(ecsim_state* s) const { ecsim_state_destroy(s); }
};
using StatePtr = std::unique_ptr<ecsim_state, StateDeleter>;

std::vector<ecsim_outcome> outcomes_of(const ecsim_report* r) {
  size_t count = 0;
  check(ecsim_report_outcome_count(r, &count));
  std::vector<ecsim_outcome> out(count);
  for (size_t k = 0; k < count; ++k) check(ecsim_report_outcome(r, k, &out[k]));
  return out;
}

// ---------------------------------------------------------------------------

int cmd_channel_info(const Common& c, std::ostream& os) {
  const ecsim_sign sign = c.c_sign();
  StatePtr channel;
  {
    ecsim_state* raw = nullptr;
    check(ecsim_channel_create(c.m, c.c_alpha(), sign, &raw));
    channel.reset(raw);
  }
  std::vector<double> pattern(static_cast<size_t>(c.m) + 1);
  check(ecsim_channel_pattern(c.m, pattern.data(), pattern.size()));
  double norm = 0.0;
  check(ecsim_channel_normalization(c.m, c.c_alpha(), sign, &norm));

  os << "channel m=" << c.m << " sign=" << c.sign << " alpha=" << num(c.alpha) << '\n';
  os << "modes " << pattern.size() << '\n';
  os << "normalization prefactor " << num(norm) << '\n';
  os << "amplitudes";
  for (double p : pattern) os << ' ' << num(p * c.alpha);
  os << '\n';

  const bool want_oracle = c.engine != "closed_form";
  for (size_t mode = 0; mode < pattern.size(); ++mode) {
    double closed = 0.0;
    const ecsim_status st = ecsim_concurrence_closed_form(c.m, c.c_alpha(), sign, mode, &closed);
    if (st == ECSIM_ERR_DOMAIN && mode > 0) continue;
    check(st);
    char line[160];
    std::snprintf(line, sizeof line, "concurrence mode %zu|rest closed_form %.6f", mode, closed);
    os << line;
    if (want_oracle) {
      double oracle = 0.0;
      const ecsim_status os_status =
          ecsim_concurrence_oracle(c.m, c.c_alpha(), sign, mode, &oracle);
      if (os_status == ECSIM_OK) {
        std::snprintf(line, sizeof line, " oracle %.6f", oracle);
        os << line;
      } else if (os_status == ECSIM_ERR_RESOURCE) {
        os << " oracle n/a";
      } else {
        check(os_status);
      }
    }
    os << '\n';
  }
  ecsim_complex x[4];
  const size_t side[] = {0};
  check(ecsim_schmidt_coefficients(channel.get(), side, 1, x));
  os << "schmidt mode 0|rest";
  for (const auto& z : x) os << ' ' << num(z.re) << (z.im < 0 ? "" : "+") << num(z.im) << 'i';
  const double det_re = x[0].re * x[3].re - x[0].im * x[3].im - (x[1].re * x[2].re - x[1].im * x[2].im);
  const double det_im = x[0].re * x[3].im + x[0].im * x[3].re - (x[1].re * x[2].im + x[1].im * x[2].re);
  char line[96];
  std::snprintf(line, sizeof line, " concurrence %.6f\n", 2.0 * std::hypot(det_re, det_im));
  os << line;
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_teleport(const Common& c, double eta, const std::string& loss_on, std::ostream& os) {
  const ecsim_teleport_setup setup = c.setup();
  const ecsim_loss_placement placement =
      loss_on == "receiver" ? ECSIM_LOSS_RECEIVER_MODES : ECSIM_LOSS_ALL_CHANNEL_MODES;
  const bool noisy = eta < 1.0;
  if (c.engine == "closed_form" && noisy) {
    throw CLI::ValidationError("--engine", "closed_form rows are only defined for --eta 1");
  }
  if (c.engine == "oracle" && noisy) {
    throw CLI::ValidationError("--engine", "the oracle engine is noiseless");
  }

  auto run = [&](ecsim_engine engine) {
    ecsim_report* raw = nullptr;
    if (noisy) {
      check(ecsim_teleport_run_lossy(&setup, eta, placement, &raw));
    } else {
      check(ecsim_teleport_run(&setup, engine, &raw));
    }
    return ReportPtr(raw);
  };

  // Closed-form probability of a row, when one exists.
  auto closed_probability = [&](const ecsim_outcome& o, double* out) {
    const int count = o.l == 0 ? o.n : o.l;
    if ((o.l == 0) == (o.n == 0)) return false;
    return ecsim_outcome_probability(c.m, c.c_alpha(), c.c_sign(), count, out) == ECSIM_OK;
  };

  const bool closed_only = c.engine == "closed_form";
  const bool both = c.engine == "all";
  ReportPtr primary =
      closed_only ? nullptr : run(c.engine == "oracle" ? ECSIM_ENGINE_ORACLE : ECSIM_ENGINE_COHERENT);
  ReportPtr secondary = both && !noisy ? run(ECSIM_ENGINE_ORACLE) : nullptr;
  if (closed_only) primary = run(ECSIM_ENGINE_COHERENT);  // row structure only

  const auto rows = outcomes_of(primary.get());
  std::vector<ecsim_outcome> other;
  if (secondary) other = outcomes_of(secondary.get());

  os << "l,n,probability,correction,heralded,fidelity,reference_fidelity,closed_form_probability";
  if (both) os << ",engine_disagreement";
  os << '\n';
  double closed_success = 0.0;
  for (size_t k = 0; k < rows.size(); ++k) {
    const ecsim_outcome& o = rows[k];
    double cf = 0.0;
    const bool has_cf = closed_probability(o, &cf);
    if (closed_only && !has_cf) continue;
    const double p = closed_only ? cf : o.probability;
    const double fid = closed_only ? 1.0 : o.fidelity;
    const double ref = closed_only ? 1.0 : o.reference_fidelity;
    os << o.l << ',' << o.n << ',' << num(p) << ',' << ecsim_correction_name(o.correction) << ','
       << o.heralded << ',' << num(fid) << ',' << num(ref) << ',' << (has_cf ? num(cf) : "");
    if (has_cf) closed_success += cf;
    if (both) {
      double d = 0.0;
      if (!other.empty()) {
        d = std::max(std::fabs(o.probability - other[k].probability),
                     std::fabs(o.fidelity - other[k].fidelity));
      }
      if (has_cf) d = std::max(d, std::fabs(o.probability - cf));
      os << ',' << num(d);
    }
    os << '\n';
  }

  ecsim_report_summary s{};
  check(ecsim_report_summary_get(primary.get(), &s));
  double aggregate = 0.0;
  check(ecsim_success_probability(c.m, c.c_alpha(), c.c_sign(), &aggregate));
  os << "# success_probability," << num(closed_only ? closed_success : s.success_probability) << '\n';
  os << "# closed_form_success_probability," << num(aggregate) << '\n';
  if (c.c_sign() == ECSIM_SIGN_PLUS) {
    double unsquared = 0.0;
    check(ecsim_unsquared_success_probability(c.m, c.c_alpha(), &unsquared));
    os << "# unsquared_success_probability," << num(unsquared) << '\n';
  }
  if (!closed_only) {
    os << "# mean_fidelity," << num(s.mean_fidelity) << '\n';
    os << "# mean_reference_fidelity," << num(s.mean_reference_fidelity) << '\n';
    os << "# both_nonzero_probability," << num(s.both_nonzero_probability) << '\n';
    os << "# total_probability," << num(s.total_probability) << '\n';
    os << "# truncation_bound," << num(s.truncation_bound) << '\n';
  }
  if (noisy) {
    for (ecsim_fidelity_variant v :
         {ECSIM_VARIANT_PRINTED, ECSIM_VARIANT_MISSING_ALPHA, ECSIM_VARIANT_LINEAR_LOSS}) {
      double f = 0.0;
      check(ecsim_teleported_fidelity_closed_form(c.m, c.c_alpha(), eta, v, &f));
      os << "# closed_form_fidelity_" << ecsim_fidelity_variant_name(v) << ',' << num(f) << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_figures(const std::string& which, const Common& c, const std::vector<double>& alphas,
                const std::vector<double>& etas, const std::string& variant_name,
                std::ostream& os) {
  const bool channel_figure = which == "fig1";
  ecsim_fidelity_variant variant = ECSIM_VARIANT_LINEAR_LOSS;
  if (variant_name == "printed") variant = ECSIM_VARIANT_PRINTED;
  if (variant_name == "missing_alpha") variant = ECSIM_VARIANT_MISSING_ALPHA;

  const std::string engine = c.engine.empty() ? "closed_form" : c.engine;
  if (engine == "oracle") {
    throw CLI::ValidationError("--engine", "figures support closed_form, coherent or all");
  }
  const bool want_closed = engine != "coherent";
  const bool want_engine = engine != "closed_form";

  os << "alpha,eta,value";
  if (engine == "all") os << ",coherent,difference";
  os << '\n';
  for (double a : alphas) {
    for (double eta : etas) {
      const ecsim_complex alpha{a, 0.0};
      double closed = 0.0;
      double computed = 0.0;
      if (want_closed) {
        check(channel_figure
                  ? ecsim_channel_fidelity_closed_form(c.m, alpha, eta, &closed)
                  : ecsim_teleported_fidelity_closed_form(c.m, alpha, eta, variant, &closed));
      }
      if (want_engine) {
        check(channel_figure ? ecsim_channel_fidelity(c.m, alpha, eta, &computed)
                             : ecsim_teleported_fidelity(c.m, alpha, eta,
                                                         ECSIM_LOSS_RECEIVER_MODES, &computed));
      }
      os << num(a) << ',' << num(eta) << ',' << num(want_closed ? closed : computed);
      if (engine == "all") os << ',' << num(computed) << ',' << num(std::fabs(closed - computed));
      os << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifySink {
  std::ostream* os;
  int failures = 0;
};

int cmd_verify(std::uint64_t seed, int trials, std::ostream& os) {
  VerifySink sink{&os};
  auto on_check = [](const char* suite, const char* name, int passed, double observed,
                     double tolerance, void* user) {
    auto* s = static_cast<VerifySink*>(user);
    if (!passed) ++s->failures;
    *s->os << (passed ? "PASS " : "FAIL ") << suite << ": " << name << " (observed "
           << num(observed) << ", tolerance " << num(tolerance) << ")\n";
  };
  auto on_verdict = [](const char* text, void* user) {
    *static_cast<VerifySink*>(user)->os << "VERDICT " << text << '\n';
  };
  int passed = 0;
  char first[512];
  check(ecsim_verify(seed, trials, on_check, on_verdict, &sink, &passed, first, sizeof first));
  if (!passed) {
    os << "FAILED " << sink.failures << " check(s); smallest reproducer: " << first << '\n';
    std::cerr << "verify failed: " << first << '\n';
    return kExitVerifyFailed;
  }
  os << "ALL PASSED\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation of entangled coherent states: protocol engine and sweeps"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool with_engine) {
    sub->add_option("--m", common.m, "Number of teleported modes (channel has m+1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--alpha", common.alpha, "Coherent amplitude (real)");
    sub->add_option("--sign", common.sign, "Channel branch sign")
        ->check(CLI::IsMember({"plus", "minus"}));
    sub->add_option("--out", common.out, "Output path (default: standard output)");
    if (with_engine) {
      sub->add_option("--engine", common.engine, "Computation engine")
          ->check(CLI::IsMember({"closed_form", "coherent", "oracle", "all"}));
    }
  };
  auto add_kappa = [&](CLI::App* sub) {
    sub->add_option("--kappa1-re", common.k1_re, "Weight of the input's plus branch (real)");
    sub->add_option("--kappa1-im", common.k1_im, "Weight of the input's plus branch (imag)");
    sub->add_option("--kappa2-re", common.k2_re, "Weight of the input's minus branch (real)");
    sub->add_option("--kappa2-im", common.k2_im, "Weight of the input's minus branch (imag)");
  };

  CLI::App* info = app.add_subcommand("channel-info", "Normalization, amplitudes, concurrences");
  add_common(info, true);

  CLI::App* tele = app.add_subcommand("teleport", "Outcome table of one protocol run (CSV)");
  add_common(tele, true);
  add_kappa(tele);
  double eta = 1.0;
  std::string loss_on = "all";
  tele->add_option("--eta", eta, "Channel transmissivity")->check(CLI::Range(0.0, 1.0));
  tele->add_option("--loss-on", loss_on, "Lossy channel modes")
      ->check(CLI::IsMember({"all", "receiver"}));

  CLI::App* figs = app.add_subcommand("figures", "Fidelity grids over (alpha, eta) (CSV)");
  std::string which;
  figs->add_option("which", which, "fig1 | fig2 | fig3 | fig4")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
  add_common(figs, true);
  Grid alpha_grid;
  Grid eta_grid;
  std::string variant = "linear_loss";
  auto* alpha_opt = figs->add_option("--alpha-range", alpha_grid.spec, "MIN MAX STEPS")
                        ->expected(3);
  auto* eta_opt = figs->add_option("--eta-range", eta_grid.spec, "MIN MAX STEPS")->expected(3);
  auto* m_opt = figs->get_option("--m");
  figs->add_option("--variant", variant, "Closed form for fig2-fig4")
      ->check(CLI::IsMember({"printed", "missing_alpha", "linear_loss"}));

  CLI::App* ver = app.add_subcommand("verify", "Run the self-check suite");
  std::uint64_t seed = 1;
  int trials = 20;
  ver->add_option("--seed", seed, "Random seed");
  ver->add_option("--trials", trials, "Random scenarios per suite")->check(CLI::PositiveNumber);
  ver->add_option("--out", common.out, "Output path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Output out(common.out);
    std::ostream& os = out.stream();
    if (info->parsed()) return cmd_channel_info(common, os);
    if (tele->parsed()) {
      if (common.engine.empty()) common.engine = "coherent";
      return cmd_teleport(common, eta, loss_on, os);
    }
    if (figs->parsed()) {
      if (m_opt->count() == 0) common.m = which == "fig3" ? 4 : 3;
      if (alpha_opt->count() == 0) {
        alpha_grid.spec = which == "fig4" ? std::vector<double>{1.0, 3.0, 50}
                                          : std::vector<double>{0.02, 1.0, 50};
      }
      if (eta_opt->count() == 0) eta_grid.spec = {0.0, 1.0, 50};
      return cmd_figures(which, common, alpha_grid.points("--alpha-range"),
                         eta_grid.points("--eta-range"), variant, os);
    }
    if (ver->parsed()) return cmd_verify(seed, trials, os);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
