// qcorr: parameter sweeps and closed-form audits for the graphene two-qubit model.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 numeric failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qcorr/errors.hpp"
#include "qcorr/sweep.hpp"
#include "qcorr/verify.hpp"

namespace {

enum Exit : int { kOk = 0, kValidation = 1, kIo = 2, kNumeric = 3 };

struct Options {
  std::string mode;
  std::string config;
  std::string preset;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::vector<std::string> sets;
  unsigned threads = 0;
};

std::string resolve_format(const Options& o) {
  if (!o.format.empty()) return o.format;
  const auto dot = o.out.rfind('.');
  return dot != std::string::npos && o.out.substr(dot) == ".json" ? "json" : "csv";
}

qcorr::SweepSpec build_spec(const Options& o) {
  using namespace qcorr;
  const Mode mode = *parse_mode(o.mode);
  SweepSpec spec;
  if (!o.config.empty()) {
    std::string text = read_text_file(o.config);
    if (!o.preset.empty()) {
      auto doc = nlohmann::json::parse(text, nullptr, false);
      if (!doc.is_discarded() && doc.is_object()) {
        if (doc.contains("preset") && doc["preset"] != o.preset) {
          throw ConfigError("preset", "--preset and the config file name different presets");
        }
        doc["preset"] = o.preset;
        text = doc.dump();
      }
    }
    spec = parse_config(text, mode);
  } else if (!o.preset.empty()) {
    spec = preset_spec(o.preset);
    if (spec.mode != mode) {
      throw ConfigError("preset", "'" + o.preset + "' is a " + std::string(to_string(spec.mode)) + " preset");
    }
  } else if (mode == Mode::Verify) {
    spec.mode = Mode::Verify;
  } else {
    throw ConfigError("config", "either --config or --preset is required");
  }

  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    const std::string name = kv.substr(0, eq);
    const auto idx = parameter_index(name);
    if (eq == std::string::npos || !idx) throw ConfigError("set", "expected <parameter>=<value>, got '" + kv + "'");
    try {
      std::size_t used = 0;
      const std::string value = kv.substr(eq + 1);
      spec.fixed[*idx] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw ConfigError("set", "not a number in '" + kv + "'");
    }
  }
  if (o.seed) spec.seed = *o.seed;
  if (o.samples) spec.samples = *o.samples;
  validate(spec);
  return spec;
}

void emit(const Options& o, const std::string& content) {
  if (o.out.empty() || o.out == "-") {
    std::cout << content;
  } else {
    qcorr::write_text_file(o.out, content);
  }
}

int run(const Options& o) {
  using namespace qcorr;
  const SweepSpec spec = build_spec(o);
  const std::string format = resolve_format(o);

  if (spec.mode == Mode::Verify) {
    const VerifyReport rep = verify_report(spec.seed, spec.samples);
    std::cout << report_to_text(rep);
    if (!o.out.empty()) {
      if (format == "json") {
        qcorr::write_text_file(o.out, report_to_json(rep).dump(2) + "\n");
      } else {
        std::string csv = "group,name,status,magnitude,tolerance,count,detail\r\n";
        for (const auto& it : rep.items) {
          csv += csv_field(it.group) + "," + csv_field(it.name) + "," + std::string(to_string(it.status)) + "," +
                 format_double(it.magnitude) + "," + format_double(it.tolerance) + "," + std::to_string(it.count) +
                 "," + csv_field(it.detail) + "\r\n";
        }
        qcorr::write_text_file(o.out, csv);
      }
    }
    return kOk;
  }

  const auto rows = run_sweep(spec, o.threads);
  std::size_t failed = 0, flagged = 0;
  for (const auto& r : rows) {
    failed += !r.error.empty();
    flagged += !r.flags.empty();
  }
  emit(o, format == "json" ? rows_to_json(spec, rows).dump(2) + "\n" : rows_to_csv(spec, rows));
  std::cerr << "qcorr: " << rows.size() << " rows";
  if (failed) std::cerr << ", " << failed << " with errors";
  if (flagged) std::cerr << ", " << flagged << " flagged";
  std::cerr << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum correlations and teleportation in a graphene pseudo-spin/valley model"};
  Options o;
  app.add_option("mode", o.mode, "ground | thermal | teleport | verify")
      ->required()
      ->check(CLI::IsMember({"ground", "thermal", "teleport", "verify"}));
  app.add_option("--config", o.config, "JSON run configuration");
  std::string presets_help = "named figure preset:";
  for (const auto& n : qcorr::preset_names()) presets_help += " " + n;
  app.add_option("--preset", o.preset, presets_help);
  app.add_option("--out", o.out, "output file (stdout when omitted)");
  app.add_option("--seed", o.seed, "seed for sampled verify draws");
  app.add_option("--samples", o.samples, "number of sampled verify draws");
  app.add_option("--format", o.format, "csv or json (default from --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--set", o.sets, "override a fixed parameter, e.g. --set eta_y=6");
  app.add_option("--threads", o.threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    return run(o);
  } catch (const qcorr::ConfigError& e) {
    std::cerr << "qcorr: invalid configuration: " << e.what() << "\n";
    return kValidation;
  } catch (const qcorr::IoError& e) {
    std::cerr << "qcorr: I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "qcorr: numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
}
