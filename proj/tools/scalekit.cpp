// SPDX-License-Identifier: MIT
//
// scalekit command-line front end.
//
//   scalekit analyze <frame-file> [--tol T] [--json|--text]
//   scalekit scan --m-list 6,11,15,20 --n 4 --count 1000 --seed 42 --out scan.csv
//   scalekit prob --m 4 --n 2 --trials 100000 [--tol T] [--seed S]
//   scalekit construct (--xinv file | --spectrum 1.5,0.5) --m 2 --out frame.json
//
// Exit codes: 0 success (the scalability verdict is data, not a failure),
// 2 usage/parse/precondition errors, 3 solver budget exhausted, 4 I/O errors.
// SCALEKIT_THREADS caps worker threads; SCALEKIT_SIMD=scalar|avx2|auto picks
// the kernel backend.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scalekit/conedist.hpp"
#include "scalekit/error.hpp"
#include "scalekit/frame.hpp"
#include "scalekit/frame_io.hpp"
#include "scalekit/linalg.hpp"
#include "scalekit/matrix.hpp"
#include "scalekit/mvee.hpp"
#include "scalekit/probability.hpp"
#include "scalekit/scalemeasures.hpp"
#include "scalekit/scan.hpp"

namespace {

using namespace scalekit;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_analyze(const std::string& path, double tol, bool as_json) {
  const UnitNormFrame frame = io::read_frame(path);
  const measures::ScalabilityReport report = measures::analyze(frame, tol);
  const std::string text = as_json ? measures::report_to_json(report) : measures::report_to_text(report);
  std::fputs(text.c_str(), stdout);
  return 0;
}

int cmd_scan(const std::vector<int>& m_list, int n, int count, std::uint64_t seed,
             const std::string& out) {
  const std::vector<cli::ScanRow> rows = cli::run_scan(m_list, n, count, seed);
  io::write_text_file(out, cli::scan_csv(rows));
  std::printf("wrote %zu rows to %s\n", rows.size(), out.c_str());
  return 0;
}

int cmd_prob(const std::vector<int>& m_values, int n, std::uint64_t trials, double tol,
             std::uint64_t seed) {
  if (m_values.size() == 1) {
    const prob::ProbEstimate est = prob::monte_carlo_prob(m_values[0], n, trials, tol, seed);
    std::fputs(prob::estimate_to_json(est).c_str(), stdout);
    return 0;
  }
  std::vector<prob::ProbEstimate> rows;
  rows.reserve(m_values.size());
  for (int m : m_values) rows.push_back(prob::monte_carlo_prob(m, n, trials, tol, seed));
  std::fputs(prob::estimates_to_csv(rows).c_str(), stdout);
  return 0;
}

int cmd_construct(const std::string& xinv_path, const std::vector<double>& spectrum, int m,
                  std::uint64_t seed, const std::string& out) {
  Mat x_inv;
  if (!xinv_path.empty()) {
    x_inv = mvee::read_xinv_json(xinv_path);
  } else {
    const int n = static_cast<int>(spectrum.size());
    x_inv = Mat(n, n);
    for (int i = 0; i < n; ++i) x_inv(i, i) = spectrum[static_cast<std::size_t>(i)];
  }
  const double prescribed_v = std::exp(0.5 * la::spd_logdet(x_inv));

  const UnitNormFrame frame = mvee::frame_from_ellipsoid(x_inv, m, seed);
  io::write_text_file(out, ends_with(out, ".csv") ? io::frame_to_csv(frame)
                                                  : io::frame_to_json(frame));

  // Verification re-solve: recompute the minimal ellipsoid from scratch and
  // measure its John certificate against the constructed frame.
  const mvee::MinimalEllipsoid e = mvee::minimal_ellipsoid(frame, 1e-9);
  const mvee::CertificateReport cert = mvee::john_certificate(frame, e, 1e-8);

  std::string text = "{\"n\": " + std::to_string(x_inv.rows) + ", \"m\": " + std::to_string(m);
  text += ", \"out\": \"" + out + "\"";
  text += ", \"prescribed_volume_ratio\": " + io::fmt17(prescribed_v);
  text += ", \"recovered_volume_ratio\": " + io::fmt17(e.volume_ratio);
  text += ", \"reconstruction_residual\": " + io::fmt17(cert.reconstruction_residual);
  text += ", \"max_containment_violation\": " + io::fmt17(cert.max_containment_violation);
  text += ", \"max_contact_slack\": " + io::fmt17(cert.max_contact_slack);
  text += std::string(", \"certificate_pass\": ") + (cert.pass ? "true" : "false") + "}\n";
  std::fputs(text.c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "scalekit: measures how close a unit-norm frame is to being scalable.\n"
      "Environment: SCALEKIT_THREADS caps parallelism, SCALEKIT_SIMD picks the\n"
      "kernel backend (scalar|avx2|auto)."};
  app.require_subcommand(1);

  // analyze
  std::string analyze_path;
  double analyze_tol = 1e-6;
  bool flag_json = false, flag_text = false;
  CLI::App* analyze = app.add_subcommand("analyze", "Report the scalability measures of a frame file");
  analyze->add_option("path", analyze_path, "frame file (JSON or CSV)")->required();
  analyze->add_option("--tol", analyze_tol, "verdict threshold on the cone distance");
  CLI::Option* opt_json = analyze->add_flag("--json", flag_json, "print the report as JSON");
  CLI::Option* opt_text = analyze->add_flag("--text", flag_text, "print the report as text (default)");
  opt_json->excludes(opt_text);
  opt_text->excludes(opt_json);

  // scan
  std::vector<int> scan_m_list;
  int scan_n = 0, scan_count = 100;
  std::uint64_t scan_seed = 0;
  std::string scan_out;
  CLI::App* scan = app.add_subcommand("scan", "Measure batches of random frames, write a CSV");
  scan->add_option("--m-list", scan_m_list, "comma-separated frame sizes")->required()->delimiter(',');
  scan->add_option("--n", scan_n, "ambient dimension")->required();
  scan->add_option("--count", scan_count, "frames per m value");
  scan->add_option("--seed", scan_seed, "RNG seed");
  scan->add_option("--out", scan_out, "output CSV path")->required();

  // prob
  std::vector<int> prob_m;
  int prob_n = 0;
  std::uint64_t prob_trials = 10000, prob_seed = 0;
  double prob_tol = 1e-6;
  CLI::App* probc = app.add_subcommand("prob", "Monte Carlo estimate of the scalability probability");
  probc->add_option("--m", prob_m, "frame size (or comma list for CSV output)")->required()->delimiter(',');
  probc->add_option("--n", prob_n, "ambient dimension")->required();
  probc->add_option("--trials", prob_trials, "Monte Carlo trials");
  probc->add_option("--tol", prob_tol, "scalability threshold on the cone distance");
  probc->add_option("--seed", prob_seed, "RNG seed");

  // construct
  std::string construct_xinv, construct_out;
  std::vector<double> construct_spectrum;
  int construct_m = 0;
  std::uint64_t construct_seed = 0;
  CLI::App* construct = app.add_subcommand(
      "construct", "Build a frame whose minimal ellipsoid matches a prescribed shape matrix");
  CLI::Option* opt_xinv =
      construct->add_option("--xinv", construct_xinv, "JSON file with keys n, x_inv");
  CLI::Option* opt_spec = construct->add_option("--spectrum", construct_spectrum,
                                                "comma-separated eigenvalues (must sum to n)")
                              ->delimiter(',');
  opt_xinv->excludes(opt_spec);
  opt_spec->excludes(opt_xinv);
  construct->add_option("--m", construct_m, "number of vectors (>= n)")->required();
  construct->add_option("--seed", construct_seed, "RNG seed");
  construct->add_option("--out", construct_out, "output frame path (.csv for CSV, else JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);                                     // prints the message
    return 2;
  }

  try {
    if (*analyze) return cmd_analyze(analyze_path, analyze_tol, flag_json);
    if (*scan) return cmd_scan(scan_m_list, scan_n, scan_count, scan_seed, scan_out);
    if (*probc) return cmd_prob(prob_m, prob_n, prob_trials, prob_tol, prob_seed);
    if (*construct) {
      if (construct_xinv.empty() == construct_spectrum.empty()) {
        std::fprintf(stderr, "construct: exactly one of --xinv or --spectrum is required\n");
        return 2;
      }
      return cmd_construct(construct_xinv, construct_spectrum, construct_m, construct_seed,
                           construct_out);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "scalekit: error [%s]: %s\n", errc_name(e.code()), e.what());
    switch (e.code()) {
      case errc::max_iterations: return 3;
      case errc::io_error: return 4;
      default: return 2;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "scalekit: error: %s\n", e.what());
    return 2;
  }
  return 2;  // unreachable: require_subcommand(1)
}
