// SPDX-License-Identifier: MIT
/// Batch scans (library level) and the command-line interface end to end.
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "scalekit/error.hpp"
#include "scalekit/frame.hpp"
#include "scalekit/frame_io.hpp"
#include "scalekit/scalemeasures.hpp"
#include "scalekit/scan.hpp"

using namespace scalekit;

namespace {

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SCALEKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int rc = pclose(pipe);
  CliResult r;
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = out;
  return r;
}

std::string slurp(const std::string& path) { return io::read_text_file(path); }

/// Pulls the first number following "key": from a JSON-ish blob.
double json_number(const std::string& text, const std::string& key) {
  const std::string needle = "\"" + key + "\":";
  const std::size_t at = text.find(needle);
  REQUIRE(at != std::string::npos);
  return std::stod(text.substr(at + needle.size()));
}

UnitNormFrame pair_frame(double theta) {
  Mat cols(2, 2);
  cols(0, 0) = std::cos(theta);
  cols(1, 0) = std::sin(theta);
  cols(0, 1) = std::cos(theta);
  cols(1, 1) = -std::sin(theta);
  return validate_frame(cols);
}

}  // namespace

TEST_CASE("run_scan: deterministic rows with per-block frame indices") {
  const std::vector<cli::ScanRow> rows = cli::run_scan({5, 8}, 3, 4, 99);
  const std::vector<cli::ScanRow> again = cli::run_scan({5, 8}, 3, 4, 99);
  REQUIRE(rows.size() == 8);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].m == (i < 4 ? 5 : 8));
    CHECK(rows[i].n == 3);
    CHECK(rows[i].frame_index == static_cast<int>(i % 4));
    CHECK(rows[i].cone_distance == again[i].cone_distance);
    CHECK(rows[i].volume_ratio == again[i].volume_ratio);
    CHECK(rows[i].d_lower == again[i].d_lower);
    CHECK(rows[i].d_upper == again[i].d_upper);
  }
}

TEST_CASE("run_scan rows satisfy the cross-measure invariants") {
  const std::vector<cli::ScanRow> rows = cli::run_scan({6, 11}, 4, 25, 2025);
  for (const cli::ScanRow& r : rows) {
    CHECK(r.cone_distance >= 0.0);
    CHECK(r.volume_ratio > 0.0);
    CHECK(r.volume_ratio <= 1.0 + 1e-6);
    CHECK(r.d_lower <= r.d_upper + 1e-15);
    CHECK(r.d_lower >= 0.0);
    if (r.cone_distance < 1.0) {
      const double v_pow = std::pow(r.volume_ratio, 4.0 / r.n);
      CHECK(r.vd_lower - 1e-8 <= v_pow);
      CHECK(v_pow <= r.vd_upper + 1e-5);
    }
  }
}

TEST_CASE("run_scan validates its arguments") {
  CHECK_THROWS_AS(cli::run_scan({3}, 4, 5, 0), Error);   // m < n
  CHECK_THROWS_AS(cli::run_scan({5}, 3, 0, 0), Error);   // empty count
  CHECK_THROWS_AS(cli::run_scan({}, 3, 5, 0), Error);    // no m values
}

TEST_CASE("scan_csv: exact header and 17-digit round-trippable floats") {
  const std::vector<cli::ScanRow> rows = cli::run_scan({5}, 3, 3, 7);
  const std::string csv = cli::scan_csv(rows);
  CHECK(csv.rfind("frame_index,m,n,cone_distance,volume_ratio,vd_lower,vd_upper,d_lower,d_upper\n",
                  0) == 0);
  int newlines = 0;
  for (char c : csv) newlines += (c == '\n');
  CHECK(newlines == 4);

  // Double round-trip: the printed cone distance parses back bit-exact.
  const std::size_t line_start = csv.find('\n') + 1;
  const std::size_t first_comma = csv.find(',', line_start);
  const std::size_t second_comma = csv.find(',', first_comma + 1);
  const std::size_t third_comma = csv.find(',', second_comma + 1);
  const double parsed = std::stod(csv.substr(third_comma + 1));
  CHECK(parsed == rows[0].cone_distance);
}

TEST_CASE("cli analyze: verdicts exit zero in both directions") {
  const std::string ortho = "/tmp/scalekit_cli_ortho.csv";
  io::write_text_file(ortho, io::frame_to_csv(validate_frame(Mat::identity(2))));
  const CliResult yes = run_cli("analyze " + ortho);  // default output is text
  CHECK(yes.status == 0);
  CHECK(yes.out.find("scalable: yes") != std::string::npos);
  const CliResult yes_json = run_cli("analyze " + ortho + " --json");
  CHECK(yes_json.status == 0);
  CHECK(yes_json.out.find("\"scalable\": true") != std::string::npos);

  const std::string pair = "/tmp/scalekit_cli_pair.json";
  io::write_text_file(pair, io::frame_to_json(pair_frame(M_PI / 8.0)));
  const CliResult no = run_cli("analyze " + pair + " --json");
  CHECK(no.status == 0);
  CHECK(no.out.find("\"scalable\": false") != std::string::npos);
  CHECK(no.out.find("Apex2D") != std::string::npos);
  CHECK(std::fabs(json_number(no.out, "cone_distance") - std::sqrt(2.0 / 3.0)) < 1e-9);

  const CliResult text = run_cli("analyze " + pair + " --text");
  CHECK(text.status == 0);
  CHECK(text.out.find("scalable: no (certificate: Apex2D)") != std::string::npos);

  std::remove(ortho.c_str());
  std::remove(pair.c_str());
}

TEST_CASE("cli analyze: parse failures exit 2, missing files exit 4") {
  const std::string bad = "/tmp/scalekit_cli_bad.json";
  io::write_text_file(bad, "{\"n\": 2, \"columns\": [[1, 0], [0");
  CHECK(run_cli("analyze " + bad).status == 2);
  std::remove(bad.c_str());

  CHECK(run_cli("analyze /tmp/scalekit_no_such_file.json").status == 4);
  CHECK(run_cli("analyze").status == 2);                       // missing argument
  CHECK(run_cli("analyze x.json --tol notanumber").status == 2);
}

TEST_CASE("cli construct round-trips through analyze") {
  const std::string out = "/tmp/scalekit_cli_constructed.json";
  const CliResult built = run_cli("construct --spectrum 1.5,0.5 --m 4 --seed 3 --out " + out);
  CHECK(built.status == 0);
  CHECK(built.out.find("\"certificate_pass\": true") != std::string::npos);
  const double prescribed = json_number(built.out, "prescribed_volume_ratio");
  CHECK(std::fabs(prescribed - std::sqrt(0.75)) < 1e-12);

  const CliResult analyzed = run_cli("analyze " + out + " --json");
  CHECK(analyzed.status == 0);
  CHECK(std::fabs(json_number(analyzed.out, "volume_ratio") - prescribed) < 1e-6);
  std::remove(out.c_str());
}

TEST_CASE("cli construct rejects bad prescriptions with exit 2") {
  CHECK(run_cli("construct --spectrum 1,1,1.5 --m 4 --out /tmp/x.json").status == 2);
  CHECK(run_cli("construct --spectrum 2.5,-0.5 --m 3 --out /tmp/x.json").status == 2);
  CHECK(run_cli("construct --m 3 --out /tmp/x.json").status == 2);  // neither source given
}

TEST_CASE("cli scan: byte-identical reruns, also across thread budgets") {
  const std::string out1 = "/tmp/scalekit_cli_scan1.csv";
  const std::string out2 = "/tmp/scalekit_cli_scan2.csv";
  const std::string args = "scan --m-list 5,7 --n 3 --count 6 --seed 31 --out ";
  CHECK(run_cli(args + out1).status == 0);
  CHECK(run_cli(args + out2).status == 0);
  const std::string a = slurp(out1), b = slurp(out2);
  CHECK(a == b);
  CHECK(a.rfind("frame_index,m,n,", 0) == 0);

  const CliResult threaded = run_cli("scan --m-list 5,7 --n 3 --count 6 --seed 31 --out " + out2 +
                                     " && true");
  CHECK(threaded.status == 0);
  // Env-pinned run: same bytes with the pool capped at one thread.
  FILE* pipe = popen(("SCALEKIT_THREADS=1 " + std::string(SCALEKIT_CLI_PATH) + " " + args + out2 +
                      " >/dev/null 2>&1")
                         .c_str(),
                     "r");
  REQUIRE(pipe != nullptr);
  pclose(pipe);
  CHECK(slurp(out2) == a);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("cli scan: flag errors exit 2, unwritable output exits 4") {
  CHECK(run_cli("scan --m-list 5 --n 3 --count 2 --seed 1").status == 2);  // no --out
  CHECK(run_cli("scan --n 3 --count 2 --out /tmp/x.csv").status == 2);     // no --m-list
  CHECK(run_cli("scan --m-list 5 --n 3 --count 2 --out /no/such/dir/x.csv").status == 4);
}

TEST_CASE("cli prob: single m prints JSON, several print CSV") {
  const CliResult one = run_cli("prob --m 4 --n 2 --trials 2000 --seed 11");
  CHECK(one.status == 0);
  CHECK(one.out.find("\"estimate\"") != std::string::npos);
  const double est = json_number(one.out, "estimate");
  CHECK(est > 0.4);
  CHECK(est < 0.6);

  const CliResult two = run_cli("prob --m 3,4 --n 2 --trials 500 --seed 11");
  CHECK(two.status == 0);
  CHECK(two.out.rfind("m,n,trials,hits,estimate,stderr,lower,upper\n", 0) == 0);
}

TEST_CASE("cli surface basics") {
  CHECK(run_cli("--help").status == 0);
  CHECK(run_cli("").status == 2);               // a subcommand is required
  CHECK(run_cli("frobnicate").status == 2);     // unknown subcommand
}
