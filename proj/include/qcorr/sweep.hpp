#pragma once

// Parameter sweeps: run configurations (JSON or named presets), parallel grid
// evaluation and CSV / JSON row emission.

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcorr/errors.hpp"
#include "qcorr/graphene.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/teleport.hpp"

namespace qcorr {

enum class Mode { Ground, Thermal, Teleport, Verify };

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Ground: return "ground";
    case Mode::Thermal: return "thermal";
    case Mode::Teleport: return "teleport";
    case Mode::Verify: return "verify";
  }
  return "?";
}

inline std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : {Mode::Ground, Mode::Thermal, Mode::Teleport, Mode::Verify})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

inline constexpr std::size_t kParamCount = 8;
inline constexpr std::array<std::string_view, kParamCount> kParameterNames{
    "eta", "eta_x", "eta_y", "lambda", "alpha", "T", "theta", "beta_phase"};
using ParamPoint = std::array<double, kParamCount>;
inline constexpr ParamPoint kParameterDefaults{1.0, 1.0, 1.0, 1.0, 0.0, 1.0, std::numbers::pi / 2, 0.0};

enum ParamIndex : std::size_t { kEta, kEtaX, kEtaY, kLambda, kAlpha, kT, kTheta, kBetaPhase };

inline std::optional<std::size_t> parameter_index(std::string_view name) {
  for (std::size_t i = 0; i < kParamCount; ++i)
    if (kParameterNames[i] == name) return i;
  return std::nullopt;
}

enum class Spacing { Linear, Log };

struct Axis {
  std::string name;
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 2;
  Spacing spacing = Spacing::Linear;

  /// Node i of the grid; both endpoints are hit exactly.
  double at(std::size_t i) const {
    if (i == 0) return start;
    if (i + 1 == count) return stop;
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    if (spacing == Spacing::Log) return std::exp(std::log(start) + f * (std::log(stop) - std::log(start)));
    return start + f * (stop - start);
  }
};

struct SweepSpec {
  Mode mode = Mode::Thermal;
  ParamPoint fixed = kParameterDefaults;
  std::vector<Axis> axes;
  std::vector<std::string> outputs;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::string preset;

  std::size_t row_count() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.count;
    return n;
  }
};

inline const std::vector<std::string>& available_outputs(Mode m) {
  static const std::vector<std::string> ground{
      "concurrence", "bures", "bures_raw", "tmin", "uin", "energy",
      "concurrence_phi1", "concurrence_phi2", "concurrence_phi3", "concurrence_phi4",
      "bures_phi1", "bures_phi2", "bures_phi3", "bures_phi4"};
  static const std::vector<std::string> thermal{
      "concurrence", "bures", "bures_raw", "tmin", "tmin_closed", "tmin_closed_euclidean",
      "uin", "uin_closed", "uin_closed_bloch"};
  static const std::vector<std::string> teleport{
      "fidelity", "avg_fidelity", "avg_fidelity_phi0", "avg_fidelity_closed", "avg_fidelity_printed",
      "a", "b", "a_closed", "b_closed", "quantum"};
  static const std::vector<std::string> none;
  switch (m) {
    case Mode::Ground: return ground;
    case Mode::Thermal: return thermal;
    case Mode::Teleport: return teleport;
    case Mode::Verify: return none;
  }
  return none;
}

inline std::vector<std::string> default_outputs(Mode m) {
  switch (m) {
    case Mode::Ground: return {"concurrence", "bures", "tmin", "uin", "energy"};
    case Mode::Thermal: return {"concurrence", "bures", "tmin", "tmin_closed", "uin", "uin_closed"};
    case Mode::Teleport: return {"fidelity", "avg_fidelity", "avg_fidelity_closed", "b", "b_closed", "quantum"};
    case Mode::Verify: return {};
  }
  return {};
}

/// Range and name checks shared by the JSON path, presets and CLI overrides.
inline void validate(const SweepSpec& s) {
  for (std::size_t i = 0; i < kParamCount; ++i) {
    if (!std::isfinite(s.fixed[i])) throw ConfigError("fixed." + std::string(kParameterNames[i]), "must be finite");
  }
  if (s.mode == Mode::Verify) return;
  if (s.axes.empty()) throw ConfigError("axes", "at least one axis is required");
  if (s.axes.size() > 2) throw ConfigError("axes", "at most two axes are supported");
  for (std::size_t k = 0; k < s.axes.size(); ++k) {
    const Axis& a = s.axes[k];
    const std::string f = "axes[" + std::to_string(k) + "]";
    if (!parameter_index(a.name)) throw ConfigError(f + ".name", "unknown parameter '" + a.name + "'");
    if (!std::isfinite(a.start) || !std::isfinite(a.stop)) throw ConfigError(f, "bounds must be finite");
    if (a.count < 2) throw ConfigError(f + ".count", "must be at least 2");
    if (!(a.start < a.stop)) throw ConfigError(f, "start must be below stop");
    if (a.spacing == Spacing::Log && !(a.start > 0.0)) throw ConfigError(f + ".start", "log spacing needs start > 0");
  }
  if (s.axes.size() == 2 && s.axes[0].name == s.axes[1].name) throw ConfigError("axes", "duplicate axis parameter");
  if (s.outputs.empty()) throw ConfigError("outputs", "at least one output is required");
  const auto& ok = available_outputs(s.mode);
  for (const auto& o : s.outputs) {
    if (std::find(ok.begin(), ok.end(), o) == ok.end()) {
      throw ConfigError("outputs", "'" + o + "' is not available in " + std::string(to_string(s.mode)) + " mode");
    }
  }
}

// --- presets -------------------------------------------------------------------

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig5",
                                              "fig6a", "fig6b", "fig7a", "fig7b", "fig7c"};
  return names;
}

inline SweepSpec preset_spec(std::string_view name) {
  constexpr double pi = std::numbers::pi;
  SweepSpec s;
  s.preset = std::string(name);
  auto set = [&](std::size_t i, double v) { s.fixed[i] = v; };
  const Axis t_thermal{"T", 0.01, 10.0, 200, Spacing::Linear};
  const Axis t_teleport{"T", 0.01, 5.0, 200, Spacing::Linear};
  const Axis lambda_three{"lambda", 0.5, 2.0, 3, Spacing::Log};

  if (name == "fig2a" || name == "fig3a") {
    s.mode = Mode::Ground;
    set(kLambda, 1.0);
    s.axes = {Axis{"eta", 0.0, 5.0, 200, Spacing::Linear}};
  } else if (name == "fig2b" || name == "fig3b") {
    s.mode = Mode::Ground;
    set(kEta, 1.0);
    if (name == "fig3b") set(kEtaX, 5.0);
    s.axes = {Axis{"lambda", 0.01, 5.0, 200, Spacing::Linear}};
  } else if (name == "fig4" || name == "fig5") {
    s.mode = Mode::Thermal;
    set(kEta, 1.0);
    set(kAlpha, pi / 3);
    if (name == "fig4") {
      s.axes = {t_thermal};
    } else {
      set(kEtaX, 3.0);
      set(kEtaY, 6.0);
      s.axes = {lambda_three, t_thermal};
    }
  } else if (name == "fig6a" || name == "fig6b" || name == "fig7a" || name == "fig7b" || name == "fig7c") {
    s.mode = Mode::Teleport;
    set(kEta, 1.0);
    set(kAlpha, pi);
    set(kTheta, pi / 2);
    set(kEtaX, name == "fig7b" ? 3.0 : 1.0);
    set(kEtaY, name == "fig6a" || name == "fig6b" || name == "fig7c" ? 3.0 : 1.0);
    if (name == "fig6a") {
      s.axes = {t_teleport};
    } else if (name == "fig6b") {
      s.axes = {lambda_three, t_teleport};
    } else {
      s.axes = {Axis{"T", 0.01, 5.0, 50, Spacing::Linear}, Axis{"lambda", 0.1, 5.0, 50, Spacing::Linear}};
    }
  } else {
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
  }

  if (name == "fig2a" || name == "fig2b") {
    s.outputs = {"concurrence", "bures"};
  } else if (name == "fig3a" || name == "fig3b") {
    s.outputs = {"bures_phi3", "bures_phi4"};
  } else if (s.mode == Mode::Thermal) {
    s.outputs = {"bures", "tmin", "uin"};
  } else {
    s.outputs = {"avg_fidelity", "avg_fidelity_closed", "quantum"};
  }
  return s;
}

// --- JSON configuration ----------------------------------------------------------

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline double number_field(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(field, "must be finite");
  return d;
}

inline std::uint64_t count_field(const nlohmann::json& v, const std::string& field) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) throw ConfigError(field, "must be non-negative");
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw ConfigError(field, "expected a non-negative integer");
}

inline Spacing spacing_field(const nlohmann::json& v, const std::string& field) {
  if (v.is_string()) {
    if (v == "linear") return Spacing::Linear;
    if (v == "log") return Spacing::Log;
  }
  throw ConfigError(field, "spacing must be \"linear\" or \"log\"");
}

inline Axis parse_axis(const nlohmann::json& j, const std::string& field) {
  Axis a;
  if (j.is_array()) {
    if (j.size() < 4 || j.size() > 5) throw ConfigError(field, "expected [name, start, stop, count, spacing?]");
    if (!j[0].is_string()) throw ConfigError(field + ".name", "expected a string");
    a.name = j[0].get<std::string>();
    a.start = number_field(j[1], field + ".start");
    a.stop = number_field(j[2], field + ".stop");
    a.count = count_field(j[3], field + ".count");
    if (j.size() == 5) a.spacing = spacing_field(j[4], field + ".spacing");
  } else if (j.is_object()) {
    for (const auto& [key, val] : j.items()) {
      if (key == "name") {
        if (!val.is_string()) throw ConfigError(field + ".name", "expected a string");
        a.name = val.get<std::string>();
      } else if (key == "start") {
        a.start = number_field(val, field + ".start");
      } else if (key == "stop") {
        a.stop = number_field(val, field + ".stop");
      } else if (key == "count") {
        a.count = count_field(val, field + ".count");
      } else if (key == "spacing") {
        a.spacing = spacing_field(val, field + ".spacing");
      } else {
        throw ConfigError(field + "." + key, "unknown key");
      }
    }
    for (const char* req : {"name", "start", "stop", "count"})
      if (!j.contains(req)) throw ConfigError(field + "." + req, "missing");
  } else {
    throw ConfigError(field, "expected an array or object");
  }
  if (!parameter_index(a.name)) throw ConfigError(field + ".name", "unknown parameter '" + a.name + "'");
  return a;
}

}  // namespace detail

/// Parses and validates a run configuration. `mode_hint` comes from the
/// command line; when the document also names a mode the two must agree.
inline SweepSpec parse_config(std::string_view text, std::optional<Mode> mode_hint = std::nullopt) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (const auto pos = msg.find(": syntax error"); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ConfigParseError(line, col, msg);
  }
  if (!doc.is_object()) throw ConfigError("", "configuration must be a JSON object");

  static const std::array<std::string_view, 7> known{"mode", "preset", "fixed", "axes", "outputs", "seed", "samples"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError(key, "unknown key");
  }

  SweepSpec s;
  bool have_outputs = false;
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ConfigError("preset", "expected a string");
    s = preset_spec(doc["preset"].get<std::string>());
    have_outputs = true;
  }
  std::optional<Mode> mode;
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string()) throw ConfigError("mode", "expected a string");
    mode = parse_mode(doc["mode"].get<std::string>());
    if (!mode) throw ConfigError("mode", "unknown mode '" + doc["mode"].get<std::string>() + "'");
  }
  if (mode && mode_hint && *mode != *mode_hint) {
    throw ConfigError("mode", "config says '" + std::string(to_string(*mode)) + "' but command is '" +
                                  std::string(to_string(*mode_hint)) + "'");
  }
  if (!mode) mode = mode_hint;
  if (!s.preset.empty()) {
    if (mode && *mode != s.mode) throw ConfigError("mode", "does not match preset '" + s.preset + "'");
  } else {
    if (!mode) throw ConfigError("mode", "missing");
    s.mode = *mode;
  }

  if (doc.contains("fixed")) {
    const auto& f = doc["fixed"];
    if (!f.is_object()) throw ConfigError("fixed", "expected an object");
    for (const auto& [key, val] : f.items()) {
      const auto idx = parameter_index(key);
      if (!idx) throw ConfigError("fixed." + key, "unknown parameter");
      s.fixed[*idx] = detail::number_field(val, "fixed." + key);
    }
  }
  if (doc.contains("axes")) {
    const auto& a = doc["axes"];
    if (!a.is_array()) throw ConfigError("axes", "expected an array");
    s.axes.clear();
    for (std::size_t k = 0; k < a.size(); ++k) s.axes.push_back(detail::parse_axis(a[k], "axes[" + std::to_string(k) + "]"));
  }
  if (doc.contains("outputs")) {
    const auto& o = doc["outputs"];
    if (!o.is_array()) throw ConfigError("outputs", "expected an array of names");
    s.outputs.clear();
    for (const auto& v : o) {
      if (!v.is_string()) throw ConfigError("outputs", "expected an array of names");
      s.outputs.push_back(v.get<std::string>());
    }
    have_outputs = true;
  }
  if (!have_outputs) s.outputs = default_outputs(s.mode);
  if (doc.contains("seed")) s.seed = detail::count_field(doc["seed"], "seed");
  if (doc.contains("samples")) s.samples = detail::count_field(doc["samples"], "samples");
  validate(s);
  return s;
}

// --- evaluation --------------------------------------------------------------------

struct SweepRow {
  ParamPoint params{};
  std::vector<double> values;  // aligned with SweepSpec::outputs; NaN when unavailable
  std::string flags;           // "name=magnitude" items joined by ';'
  std::string error;           // reasons joined by "; "
};

inline GrapheneParams to_graphene(const ParamPoint& x) {
  GrapheneParams p;
  p.eta = x[kEta];
  p.eta_x = x[kEtaX];
  p.eta_y = x[kEtaY];
  p.lambda = x[kLambda];
  p.alpha = x[kAlpha];
  return p;
}

namespace detail {

// Memoizes intermediate objects so each point computes only what its outputs need.
template <class T>
class Lazy {
 public:
  explicit Lazy(std::function<T()> make) : make_(std::move(make)) {}
  const T& get() {
    if (!value_) value_ = make_();
    return *value_;
  }
  bool ready() const { return value_.has_value(); }

 private:
  std::function<T()> make_;
  std::optional<T> value_;
};

inline void append(std::string& s, std::string_view sep, std::string_view item) {
  if (!s.empty()) s += sep;
  s += item;
}

inline std::string short_number(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace detail

inline SweepRow evaluate_point(const SweepSpec& spec, const ParamPoint& x, const SphereSearchOptions& opt = {}) {
  using detail::Lazy;
  SweepRow row;
  row.params = x;
  row.values.assign(spec.outputs.size(), std::numeric_limits<double>::quiet_NaN());
  const GrapheneParams p = to_graphene(x);
  const double temp = x[kT];

  Lazy<GroundState> ground([&] { return ground_state(p, x[kBetaPhase]); });
  Lazy<GrapheneEigensystem> eig([&] { return analytic_eigensystem(p); });
  Lazy<Mat4> ground_rho([&] { return Mat4::projector(ground.get().state); });
  Lazy<Mat4> thermal([&] { return thermal_state(p, temp); });
  Lazy<Mat4> state([&] { return spec.mode == Mode::Ground ? ground_rho.get() : thermal.get(); });
  Lazy<double> concurrence([&] {
    return spec.mode == Mode::Ground ? concurrence_pure(ground.get().state) : concurrence_mixed(thermal.get());
  });
  Lazy<double> tmin([&] { return tmin_oracle(state.get(), opt); });
  Lazy<double> uin([&] { return uin_oracle(state.get(), opt); });
  Lazy<FanoForm> canon([&] { return canonicalize_fano(pauli_decompose(state.get())); });
  Lazy<double> tmin_cl([&] { return tmin_closed(canon.get(), NormReading::OneNorm).value; });
  Lazy<double> uin_cl([&] { return uin_closed(state.get(), UinVectorReading::SqrtRho); });
  Lazy<ChannelProbabilities> probs([&] { return channel_probabilities(thermal.get()); });
  Lazy<double> avg([&] { return average_fidelity(probs.get()); });
  Lazy<OutputAB> ab([&] { return output_numeric_ab(probs.get()); });
  Lazy<OutputAB> ab_closed([&] { return output_closed_ab(p, temp); });

  auto compute = [&](const std::string& name) -> double {
    if (name == "concurrence") return concurrence.get();
    if (name == "bures") return bures_entanglement(concurrence.get()).normalized;
    if (name == "bures_raw") return bures_entanglement(concurrence.get()).raw;
    if (name == "tmin") return tmin.get();
    if (name == "uin") return uin.get();
    if (name == "energy") return ground.get().energy;
    if (name.rfind("concurrence_phi", 0) == 0 || name.rfind("bures_phi", 0) == 0) {
      const std::size_t k = static_cast<std::size_t>(name.back() - '1');
      const double c = concurrence_pure(eig.get().states[k]);
      return name[0] == 'c' ? c : bures_entanglement(c).normalized;
    }
    if (name == "tmin_closed") return tmin_cl.get();
    if (name == "tmin_closed_euclidean") return tmin_closed(canon.get(), NormReading::Euclidean).value;
    if (name == "uin_closed") return uin_cl.get();
    if (name == "uin_closed_bloch") return uin_closed(state.get(), UinVectorReading::Bloch);
    if (name == "fidelity") return channel_fidelity(probs.get(), InputState{x[kTheta], 0.0}.vector());
    if (name == "avg_fidelity") return avg.get();
    if (name == "avg_fidelity_phi0") return average_fidelity_phi0(probs.get());
    if (name == "avg_fidelity_closed") return ab.get().a + 2.0 / 3.0 * ab.get().b;
    if (name == "avg_fidelity_printed") return ab_closed.get().a + 2.0 / 3.0 * ab_closed.get().b;
    if (name == "a") return ab.get().a;
    if (name == "b") return ab.get().b;
    if (name == "a_closed") return ab_closed.get().a;
    if (name == "b_closed") return ab_closed.get().b;
    if (name == "quantum") return classical_threshold_check(avg.get()) ? 1.0 : 0.0;
    throw ConfigError("outputs", "unknown output '" + name + "'");
  };

  for (std::size_t i = 0; i < spec.outputs.size(); ++i) {
    try {
      row.values[i] = compute(spec.outputs[i]);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      if (row.error.find(e.what()) == std::string::npos) detail::append(row.error, "; ", e.what());
    }
  }

  const auto flag = [&](const char* name, double closed, double reference) {
    const double d = std::abs(closed - reference);
    if (d > kDiscrepancyTol) detail::append(row.flags, ";", std::string(name) + "=" + detail::short_number(d));
  };
  if (tmin.ready() && tmin_cl.ready()) flag("tmin_closed_vs_oracle", tmin_cl.get(), tmin.get());
  if (uin.ready() && uin_cl.ready()) flag("uin_closed_vs_oracle", uin_cl.get(), uin.get());
  if (ab.ready() && ab_closed.ready()) flag("b_closed_vs_numeric", ab_closed.get().b, ab.get().b);
  return row;
}

/// Grid points in row order: the first axis is outermost.
inline std::vector<ParamPoint> grid_points(const SweepSpec& spec) {
  std::vector<ParamPoint> pts;
  pts.reserve(spec.row_count());
  const std::size_t n = spec.row_count();
  for (std::size_t flat = 0; flat < n; ++flat) {
    ParamPoint x = spec.fixed;
    std::size_t rest = flat;
    for (std::size_t k = spec.axes.size(); k-- > 0;) {
      const Axis& a = spec.axes[k];
      x[*parameter_index(a.name)] = a.at(rest % a.count);
      rest /= a.count;
    }
    pts.push_back(x);
  }
  return pts;
}

/// Evaluates every grid point. Work is spread over `threads` workers
/// (0 = hardware concurrency); rows are stored by grid index, so the result
/// does not depend on scheduling.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0) {
  validate(spec);
  const auto pts = grid_points(spec);
  std::vector<SweepRow> rows(pts.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, pts.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pts.size(); i = next++) rows[i] = evaluate_point(spec, pts[i]);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

// --- output ------------------------------------------------------------------------

/// Shortest text of 17 significant digits; parses back to the same double.
inline std::string format_double(double v) {
  std::array<char, 40> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), r.ptr);
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::vector<std::string> csv_header(const SweepSpec& spec) {
  std::vector<std::string> h(kParameterNames.begin(), kParameterNames.end());
  h.insert(h.end(), spec.outputs.begin(), spec.outputs.end());
  h.emplace_back("flags");
  h.emplace_back("error");
  return h;
}

inline std::string rows_to_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_field(fields[i]);
    }
    out += "\r\n";
  };
  line(csv_header(spec));
  for (const auto& r : rows) {
    std::vector<std::string> f;
    for (double v : r.params) f.push_back(format_double(v));
    for (double v : r.values) f.push_back(format_double(v));
    f.push_back(r.flags);
    f.push_back(r.error);
    line(f);
  }
  return out;
}

inline nlohmann::ordered_json rows_to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr); };
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < kParamCount; ++i) o[std::string(kParameterNames[i])] = num(r.params[i]);
    for (std::size_t i = 0; i < spec.outputs.size(); ++i) o[spec.outputs[i]] = num(r.values[i]);
    o["flags"] = r.flags;
    o["error"] = r.error;
    arr.push_back(std::move(o));
  }
  return arr;
}

inline void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

inline void emit_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  write_text_file(path, rows_to_csv(spec, rows));
}

}  // namespace qcorr
