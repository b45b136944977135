// Copyright 2026 The pcanon authors
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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <json.hpp>

#include "pcanon/blockmat.hpp"
#include "pcanon/certify.hpp"
#include "pcanon/lp_oracle.hpp"
#include "pcanon/mdp.hpp"
#include "pcanon/scaling.hpp"
#include "pcanon/simplex_core.hpp"
#include "pcanon/zform.hpp"

using nlohmann::ordered_json;
using namespace pcanon;

namespace {

// Exit codes: 0 success, 1 oracle mismatch, 2 P-property failure,
// 3 pipeline abort (Z-form, scaling, pivot cap), 4 input error.

struct Options {
  bool json = false;
  bool timing = false;
  int decimal = 0;  // 0 = no decimal annotations
  int jobs = 1;
  std::string out;
};

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string digest_string(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw ParseError("cannot write output file: " + path);
}

// Rounded decimal, clearly non-authoritative next to the exact rationals.
std::string decimal_of(const Rational& r, int digits) {
  return static_cast<boost::multiprecision::mpfr_float_50>(r).str(digits);
}

int classify_exit(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 4;
  if (dynamic_cast<const EnumerationCapError*>(&e)) return 4;
  if (dynamic_cast<const SingularMatrixError*>(&e)) return 2;
  if (dynamic_cast<const SingularBasisError*>(&e)) return 2;
  if (dynamic_cast<const ZFormError*>(&e)) return 3;
  if (dynamic_cast<const PivotCapExceeded*>(&e)) return 3;
  if (dynamic_cast<const ScalingError*>(&e)) return 3;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return 4;
  if (dynamic_cast<const std::domain_error*>(&e)) return 4;
  return 1;
}

ordered_json one_based(const std::vector<int>& zero_based) {
  auto arr = ordered_json::array();
  for (int k : zero_based) arr.push_back(k + 1);
  return arr;
}

ordered_json rational_array(const std::vector<Rational>& v) {
  auto arr = ordered_json::array();
  for (const auto& e : v) arr.push_back(to_string(e));
  return arr;
}

ordered_json square_rows(const SquareMatrix& m) {
  auto rows = ordered_json::array();
  for (int i = 0; i < m.order(); ++i) {
    auto row = ordered_json::array();
    for (int j = 0; j < m.order(); ++j) row.push_back(to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json dual_certificate_json(const DualCertificate& cert) {
  ordered_json doc;
  auto y = ordered_json::array();
  for (const auto& row : cert.y) y.push_back(rational_array(row));
  doc["y"] = std::move(y);
  doc["w"] = rational_array(cert.w);
  doc["objective"] = to_string(cert.objective);
  return doc;
}

std::string bracket_list(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + "]";
}

// One processed input file: the stdout line plus its exit code.
struct FileOutcome {
  int exit_code = 0;
  std::string line;
};

using Runner = std::function<FileOutcome(const std::string&, const Options&)>;

// Shared skeleton: read, parse, run the command body, map exceptions to the
// exit-code contract, and render either the human line or the RunReport.
FileOutcome run_on_file(
    const char* command, const std::string& path, const Options& opt,
    const std::function<int(const BlockMatrix&, ordered_json&, std::string&)>&
        body) {
  std::string bytes;
  ordered_json report;
  report["command"] = command;
  report["input"] = path;
  const auto started = std::chrono::steady_clock::now();
  try {
    bytes = read_file(path);
    report["digest"] = digest_string(bytes);
    const BlockMatrix a = parse_block_matrix(bytes);
    ordered_json payload;
    std::string human;
    const int code = body(a, payload, human);
    report["exit"] = code;
    report["payload"] = std::move(payload);
    if (opt.timing) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
      report["elapsed_ms"] = ms;
      human += " (" + std::to_string(ms) + " ms)";
    }
    return {code, opt.json ? report.dump() : path + ": " + human};
  } catch (const std::exception& e) {
    const int code = classify_exit(e);
    if (!opt.json) return {code, path + ": error: " + e.what()};
    report["exit"] = code;
    report["error"] = e.what();
    return {code, report.dump()};
  }
}

FileOutcome run_check(const std::string& path, const Options& opt) {
  return run_on_file(
      "check", path, opt,
      [](const BlockMatrix& a, ordered_json& payload, std::string& human) {
        const auto v = p_property(a);
        payload["holds"] = v.holds();
        if (v.holds()) {
          payload["sign"] = v.sign;
          human = "P-property holds (sign " +
                  std::string(v.sign > 0 ? "+1" : "-1") + ")";
          return 0;
        }
        payload["first"] = one_based(v.violation->first.choices());
        payload["second"] = one_based(v.violation->second.choices());
        human = "P-property violated (selection " +
                one_based(v.violation->first.choices()).dump() + " vs " +
                one_based(v.violation->second.choices()).dump() + ")";
        return 2;
      });
}

ordered_json zform_payload(const ZFormResult& zf) {
  ordered_json payload;
  payload["xbar"] = square_rows(zf.xbar);
  payload["abar"] = ordered_json::parse(serialize_block_matrix(zf.abar));
  payload["pivots_per_row"] = zf.per_row_pivots;
  return payload;
}

FileOutcome run_zform(const std::string& path, const Options& opt) {
  return run_on_file(
      "zform", path, opt,
      [&opt](const BlockMatrix& a, ordered_json& payload, std::string& human) {
        const auto zf = compute_zform(a);
        payload = zform_payload(zf);
        human = "canonical form ready; pivots per row " +
                ordered_json(zf.per_row_pivots).dump();
        if (!opt.out.empty()) {
          write_file(opt.out, payload.dump() + "\n");
          human += " -> " + opt.out;
        }
        return 0;
      });
}

FileOutcome run_scale(const std::string& path, const Options& opt) {
  return run_on_file(
      "scale", path, opt,
      [&opt](const BlockMatrix& a, ordered_json& payload, std::string& human) {
        const auto ts = two_step(a);
        payload["d"] = to_string(ts.d);
        payload["x"] = rational_array(ts.scaling.x);
        payload["Xopt"] = square_rows(ts.xopt);
        payload["argmax"] = ordered_json::array(
            {ts.scaling.argmax.block + 1, ts.scaling.argmax.index + 1});
        auto tight = ordered_json::array();
        for (const auto& block : ts.scaling.tight_columns)
          tight.push_back(one_based(block));
        payload["tight_columns"] = std::move(tight);
        payload["pivots"] = {{"per_row", ts.zform.per_row_pivots},
                             {"scaling", ts.scaling.pivots}};
        payload["certificates"] = {
            {"scaling", dual_certificate_json(ts.scaling_dual)},
            {"lp", dual_certificate_json(ts.lp_dual)}};
        human = "d = " + to_string(ts.d) + "; x = " +
                bracket_list(ts.scaling.x);
        if (opt.decimal > 0) {
          ordered_json approx;
          approx["note"] = "rounded decimals, non-authoritative";
          approx["d"] = decimal_of(ts.d, opt.decimal);
          auto xs = ordered_json::array();
          for (const auto& e : ts.scaling.x)
            xs.push_back(decimal_of(e, opt.decimal));
          approx["x"] = std::move(xs);
          payload["approx"] = std::move(approx);
          human += " (d ~ " + decimal_of(ts.d, opt.decimal) + ")";
        }
        if (!opt.out.empty()) {
          write_file(opt.out, payload.dump() + "\n");
          human += " -> " + opt.out;
        }
        return 0;
      });
}

FileOutcome run_oracle(const std::string& path, const Options& opt) {
  return run_on_file(
      "oracle", path, opt,
      [&opt](const BlockMatrix& a, ordered_json& payload, std::string& human) {
        const auto lpa = simplex_solve(build_lp_A(a));
        if (lpa.status != LpStatus::Optimal)
          throw ScalingError("the full program has no finite optimum");
        const auto zf = compute_zform(a);
        const auto slp = simplex_solve(build_scaling_lp(zf.abar));
        if (slp.status != LpStatus::Optimal)
          throw ScalingError("the scaling program has no finite optimum");
        const auto ts = two_step(a);
        const bool agree =
            lpa.objective == ts.d && slp.objective == ts.d;
        payload["lp_a"] = to_string(lpa.objective);
        payload["scaling_lp"] = to_string(slp.objective);
        payload["two_step"] = to_string(ts.d);
        payload["agree"] = agree;
        if (opt.decimal > 0) {
          ordered_json approx;
          approx["note"] = "rounded decimals, non-authoritative";
          approx["lp_a"] = decimal_of(lpa.objective, opt.decimal);
          approx["two_step"] = decimal_of(ts.d, opt.decimal);
          payload["approx"] = std::move(approx);
        }
        human = "LP " + to_string(lpa.objective) + ", scaling LP " +
                to_string(slp.objective) + ", two-step " + to_string(ts.d) +
                (agree ? ": agree" : ": MISMATCH");
        return agree ? 0 : 1;
      });
}

// Runs `runner` over every input, optionally on several threads, and prints
// the collected lines in input order.  Returns the worst exit code.
int run_batch(const std::vector<std::string>& inputs, const Options& opt,
              const Runner& runner) {
  if (!opt.out.empty() && inputs.size() != 1) {
    std::cerr << "error: --out needs exactly one input file\n";
    return 4;
  }
  std::vector<FileOutcome> outcomes(inputs.size());
  const int workers =
      std::max(1, std::min<int>(opt.jobs, static_cast<int>(inputs.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < inputs.size(); ++i)
      outcomes[i] = runner(inputs[i], opt);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++)
          outcomes[i] = runner(inputs[i], opt);
      });
    for (auto& t : pool) t.join();
  }
  int exit_code = 0;
  for (const auto& o : outcomes) {
    std::cout << o.line << "\n";
    exit_code = std::max(exit_code, o.exit_code);
  }
  return exit_code;
}

struct GenParams {
  int m = 0;
  std::vector<int> blocks;
  std::string gamma = "0";
  std::uint64_t seed = 0;
  bool disguise = false;
};

int run_gen(const GenParams& gp, const Options& opt) {
  try {
    const auto g =
        gen_instance(gp.m, gp.blocks, parse_rational(gp.gamma), gp.seed,
                     gp.disguise);
    const std::string instance = serialize_block_matrix(g.a) + "\n";
    ordered_json sidecar;
    sidecar["gamma"] = to_string(g.gamma);
    sidecar["disguised"] = gp.disguise;
    sidecar["seed"] = gp.seed;
    ordered_json report;
    report["command"] = "gen";
    report["exit"] = 0;
    report["payload"] = sidecar;
    if (!opt.out.empty()) {
      write_file(opt.out, instance);
      write_file(opt.out + ".meta.json", sidecar.dump() + "\n");
      report["out"] = opt.out;
      if (opt.json)
        std::cout << report.dump() << "\n";
      else
        std::cout << "generated " << opt.out << " and " << opt.out
                  << ".meta.json\n";
    } else if (opt.json) {
      report["payload"]["instance"] = ordered_json::parse(instance);
      std::cout << report.dump() << "\n";
    } else {
      std::cout << instance << sidecar.dump() << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify_exit(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact canonical forms, optimal row scalings, and independent LP "
      "cross-checks for block matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pcanon 1.0.0");

  Options opt;
  std::vector<std::string> inputs;
  GenParams gp;

  const auto add_common = [&opt](CLI::App* sub, bool with_out) {
    sub->add_flag("--json", opt.json, "machine-readable run report on stdout");
    sub->add_flag("--timing", opt.timing,
                  "include wall-clock timing (breaks byte determinism)");
    sub->add_option("--decimal", opt.decimal,
                    "annotate key rationals with k-digit decimals")
        ->check(CLI::Range(1, 50));
    sub->add_option("--jobs", opt.jobs, "worker threads across input files")
        ->check(CLI::Range(1, 256));
    if (with_out)
      sub->add_option("--out", opt.out, "write the payload to this file");
  };

  auto* check = app.add_subcommand("check", "P-property verdict");
  check->add_option("inputs", inputs, "matrix files")->required();
  add_common(check, false);

  auto* zform = app.add_subcommand("zform", "canonical complementary form");
  zform->add_option("inputs", inputs, "matrix files")->required();
  add_common(zform, true);

  auto* scale = app.add_subcommand("scale", "two-step optimal row scaling");
  scale->add_option("inputs", inputs, "matrix files")->required();
  add_common(scale, true);

  auto* oracle =
      app.add_subcommand("oracle", "independent simplex cross-check");
  oracle->add_option("inputs", inputs, "matrix files")->required();
  add_common(oracle, false);

  auto* gen = app.add_subcommand("gen", "seeded instance generator");
  gen->add_option("--m", gp.m, "number of row blocks")->required();
  gen->add_option("--blocks", gp.blocks, "column block sizes")
      ->required()
      ->delimiter(',');
  gen->add_option("--gamma", gp.gamma, "discount in [0,1), e.g. 1/2");
  gen->add_option("--seed", gp.seed, "generator seed");
  gen->add_flag("--disguise", gp.disguise,
                "left-multiply by a random nonsingular matrix");
  gen->add_flag("--json", opt.json, "machine-readable run report on stdout");
  gen->add_option("--out", opt.out, "instance file (sidecar gets .meta.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  if (check->parsed()) return run_batch(inputs, opt, run_check);
  if (zform->parsed()) return run_batch(inputs, opt, run_zform);
  if (scale->parsed()) return run_batch(inputs, opt, run_scale);
  if (oracle->parsed()) return run_batch(inputs, opt, run_oracle);
  if (gen->parsed()) return run_gen(gp, opt);
  return 4;
}
