#include "cli/app.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sglab/core/error.hpp"
#include "sglab/core/format.hpp"
#include "sglab/core/parallel.hpp"

namespace sglab::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  return out;
}

// JSON has no NaN or infinity; nlohmann writes null, which would hide a failure
std::string nonfinite_path(const json& j, const std::string& path) {
  if (j.is_number_float()) return std::isfinite(j.get<double>()) ? std::string() : path;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (auto p = nonfinite_path(it.value(), path + "." + it.key()); !p.empty()) return p;
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      if (auto p = nonfinite_path(j[i], path + "[" + std::to_string(i) + "]"); !p.empty()) return p;
  }
  return {};
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(),
          what + ": expected a nonnegative integer, got '" + s + "'");
  return v;
}

bool is_integral_type(const json& j) { return j.is_number_integer() || j.is_number_unsigned(); }

// Checks `v` against the parameter's type and returns the canonical value.
json coerce(const Param& p, const json& v) {
  const std::string where = "parameter '" + p.name + "'";
  if (p.fallback.is_boolean()) {
    require(v.is_boolean(), where + " must be true or false");
    return v;
  }
  if (is_integral_type(p.fallback)) {
    if (is_integral_type(v)) {
      require(!v.is_number_integer() || v.get<std::int64_t>() >= 0, where + " must be nonnegative");
      return v.get<std::uint64_t>();
    }
    require(v.is_number_float() && v.get<double>() >= 0.0 && std::floor(v.get<double>()) == v.get<double>() &&
                v.get<double>() < 1.8e19,
            where + " must be a nonnegative integer");
    return static_cast<std::uint64_t>(v.get<double>());
  }
  if (p.fallback.is_number()) {
    require(v.is_number(), where + " must be a number");
    require(std::isfinite(v.get<double>()), where + " must be finite");
    return v.get<double>();
  }
  require(v.is_string(), where + " must be a string");
  return v;
}

json from_flag(const Param& p, const std::string& s) {
  if (is_integral_type(p.fallback)) return parse_u64(s, "--" + p.name);
  if (p.fallback.is_number()) return parse_double(s);
  return s;
}

std::string csv_cell(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::vector<Series> fallback_plot(const Table& t) {
  std::vector<std::size_t> numeric;
  for (std::size_t c = 0; c < t.columns.size() && numeric.size() < 2; ++c) {
    bool ok = !t.rows.empty();
    for (const auto& r : t.rows) ok = ok && r[c].is_number();
    if (ok) numeric.push_back(c);
  }
  require(numeric.size() == 2, "this output has no plottable columns");
  Series s;
  s.name = t.columns[numeric[1]];
  s.style = Series::Style::scatter;
  for (const auto& r : t.rows) {
    s.x.push_back(r[numeric[0]].get<double>());
    s.y.push_back(r[numeric[1]].get<double>());
  }
  return {s};
}

struct Invocation {
  std::string config, seed, format, output, plot;
  unsigned threads = 0;
  bool check = false;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::map<std::string, CLI::Option*> options;
};

json load_config(const std::string& path) {
  std::ifstream f(path);
  require(static_cast<bool>(f), "cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw ValidationError("config file '" + path + "': " + e.what());
  }
  require(j.is_object(), "config file must hold a JSON object");
  static const std::vector<std::string> known = {"schema", "subcommand", "seed", "format", "output", "threads", "params"};
  for (auto it = j.begin(); it != j.end(); ++it)
    require(std::find(known.begin(), known.end(), it.key()) != known.end(),
            "config: unknown field '" + it.key() + "'");
  require(j.contains("schema") && j["schema"] == 1, "config: \"schema\": 1 is required");
  return j;
}

}  // namespace

double Params::num(const std::string& key) const { return values_.at(key).get<double>(); }
std::size_t Params::count(const std::string& key) const { return values_.at(key).get<std::size_t>(); }
int Params::integer(const std::string& key) const {
  const auto v = values_.at(key).get<std::uint64_t>();
  require(v <= 1000000000u, "parameter '" + key + "' is too large");
  return static_cast<int>(v);
}
bool Params::flag(const std::string& key) const { return values_.at(key).get<bool>(); }
std::string Params::str(const std::string& key) const { return values_.at(key).get<std::string>(); }

std::vector<double> Params::nums(const std::string& key) const {
  const json& v = values_.at(key);
  if (v.is_number()) return {v.get<double>()};
  std::vector<double> out;
  for (const auto& s : split(v.get<std::string>(), ',')) out.push_back(parse_double(s));
  require(!out.empty(), "parameter '" + key + "' is empty");
  return out;
}

std::vector<std::size_t> Params::counts(const std::string& key) const {
  const json& v = values_.at(key);
  if (v.is_number()) return {v.get<std::size_t>()};
  std::vector<std::size_t> out;
  for (const auto& s : split(v.get<std::string>(), ',')) out.push_back(parse_u64(s, key));
  require(!out.empty(), "parameter '" + key + "' is empty");
  return out;
}

std::vector<OrderParameter> Params::orders(const std::string& key) const {
  std::vector<OrderParameter> out;
  for (const auto& s : split(str(key), ';')) {
    if (s.rfind("rs:", 0) == 0) {
      out.push_back(OrderParameter::replica_symmetric(parse_double(s.substr(3))));
    } else {
      out.push_back(OrderParameter::parse(s));
    }
  }
  require(!out.empty(), "parameter '" + key + "' is empty");
  return out;
}

CovarianceSeries Params::series(const std::string& key) const {
  const std::string s = str(key);
  if (s.empty() || s == "sk") return CovarianceSeries::sk();
  if (s.rfind("pspin:", 0) == 0) return CovarianceSeries::pspin(static_cast<int>(parse_u64(s.substr(6), key)));
  std::map<int, double> coeffs;
  for (const auto& item : split(s, ',')) {
    const auto colon = item.find(':');
    require(colon != std::string::npos, "covariance series: expected degree:coefficient pairs, got '" + item + "'");
    coeffs[static_cast<int>(parse_u64(item.substr(0, colon), key))] = parse_double(item.substr(colon + 1));
  }
  return CovarianceSeries(coeffs);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sglab: numerical laboratory for mean-field spin-glass free energies"};
  app.set_version_flag("--version", std::string(SGLAB_VERSION));
  // "--h" is the field, so help is long-form only
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  const auto& cmds = commands();
  std::vector<Invocation> inv(cmds.size());
  for (std::size_t c = 0; c < cmds.size(); ++c) {
    auto* sub = app.add_subcommand(cmds[c].name, cmds[c].description);
    auto& iv = inv[c];
    sub->add_option("--config", iv.config, "JSON config file (schema 1); flags override it");
    sub->add_option("--seed", iv.seed, "root seed (default 1)");
    sub->add_option("--format", iv.format, "json, csv or svg (default json)");
    sub->add_option("--output", iv.output, "output path (default stdout)");
    sub->add_option("--plot", iv.plot, "also write an SVG plot here");
    sub->add_option("--threads", iv.threads, "worker threads (0 = logical cores)");
    sub->add_flag("--check", iv.check, "exit 1 when the command's own checks fail");
    for (const auto& p : cmds[c].params) {
      const std::string fallback = p.fallback.is_string() ? p.fallback.get<std::string>() : p.fallback.dump();
      const std::string help = fallback.empty() ? p.help : p.help + " (default " + fallback + ")";
      if (p.fallback.is_boolean()) {
        iv.options[p.name] = sub->add_flag("--" + p.name, iv.flags[p.name], help);
      } else {
        iv.options[p.name] = sub->add_option("--" + p.name, iv.values[p.name], help);
      }
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::size_t which = 0;
  while (which < cmds.size() && !app.got_subcommand(cmds[which].name)) ++which;
  const Command& cmd = cmds[which];
  Invocation& iv = inv[which];
  try {
    json params = json::object();
    for (const auto& p : cmd.params) params[p.name] = p.fallback;
    std::uint64_t seed = 1;
    std::string format = "json", output;
    unsigned threads = 0;
    if (!iv.config.empty()) {
      const json cfg = load_config(iv.config);
      if (cfg.contains("subcommand"))
        require(cfg["subcommand"] == cmd.name, "config is for subcommand " + cfg["subcommand"].dump());
      if (cfg.contains("seed")) {
        require(cfg["seed"].is_number_unsigned() || (cfg["seed"].is_number_integer() && cfg["seed"].get<std::int64_t>() >= 0),
                "config: seed must be a nonnegative integer");
        seed = cfg["seed"].get<std::uint64_t>();
      }
      if (cfg.contains("format")) format = cfg["format"].get<std::string>();
      if (cfg.contains("output")) output = cfg["output"].get<std::string>();
      if (cfg.contains("threads")) threads = cfg["threads"].get<unsigned>();
      if (cfg.contains("params")) {
        require(cfg["params"].is_object(), "config: params must be an object");
        for (auto it = cfg["params"].begin(); it != cfg["params"].end(); ++it) {
          const auto p = std::find_if(cmd.params.begin(), cmd.params.end(), [&](const Param& q) { return q.name == it.key(); });
          require(p != cmd.params.end(), "config: unknown parameter '" + it.key() + "' for " + cmd.name);
          params[it.key()] = coerce(*p, it.value());
        }
      }
    }
    for (const auto& p : cmd.params) {
      if (iv.options[p.name]->count() == 0) continue;
      params[p.name] = p.fallback.is_boolean() ? json(iv.flags[p.name]) : coerce(p, from_flag(p, iv.values[p.name]));
    }
    if (!iv.seed.empty()) seed = parse_u64(iv.seed, "--seed");
    if (!iv.format.empty()) format = iv.format;
    if (!iv.output.empty()) output = iv.output;
    if (app.get_subcommand(cmd.name)->get_option("--threads")->count()) threads = iv.threads;
    require(format == "json" || format == "csv" || format == "svg", "format must be json, csv or svg");
    set_thread_count(threads);

    const json canonical = {{"schema", 1}, {"subcommand", cmd.name}, {"seed", seed}, {"params", params}};
    const std::string hash = hex64(fnv1a(canonical.dump()));
    const json header = {{"tool", "sglab"},     {"version", SGLAB_VERSION}, {"schema", 1},
                         {"subcommand", cmd.name}, {"seed", seed},          {"config_hash", hash},
                         {"params", params}};
    const std::string banner = std::string("sglab ") + SGLAB_VERSION + " " + cmd.name + " seed=" + std::to_string(seed) +
                               " config_hash=" + hash;

    const Output o = cmd.run(Params(params, seed));
    if (const auto bad = nonfinite_path(o.result, "result"); !bad.empty())
      throw NumericalError("nonfinite value at " + bad);

    std::string text;
    if (format == "json") {
      text = json{{"header", header}, {"pass", o.pass}, {"result", o.result}}.dump(2) + "\n";
    } else if (format == "csv") {
      text = "# " + banner + "\n# params " + params.dump() + "\n# pass " + (o.pass ? "true" : "false") + "\n";
      for (std::size_t c = 0; c < o.table.columns.size(); ++c) text += (c ? "," : "") + o.table.columns[c];
      text += "\n";
      for (const auto& r : o.table.rows) {
        for (std::size_t c = 0; c < r.size(); ++c) text += (c ? "," : "") + csv_cell(r[c]);
        text += "\n";
      }
    } else {
      text = emit_plot(o.plot.empty() ? fallback_plot(o.table) : o.plot, o.x_label, o.y_label,
                       banner + " params " + params.dump());
    }
    if (output.empty()) {
      out << text;
      out.flush();
    } else {
      write_text_file(output, text);
    }
    if (!iv.plot.empty())
      write_text_file(iv.plot, emit_plot(o.plot.empty() ? fallback_plot(o.table) : o.plot, o.x_label, o.y_label,
                                         banner + " params " + params.dump()));
    return iv.check && !o.pass ? 1 : 0;
  } catch (const ValidationError& e) {
    err << json{{"error", "validation"}, {"subcommand", cmd.name}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << json{{"error", "numerical"}, {"subcommand", cmd.name}, {"message", e.what()}}.dump() << "\n";
    return 3;
  } catch (const json::exception& e) {
    err << json{{"error", "validation"}, {"subcommand", cmd.name}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << json{{"error", "io"}, {"subcommand", cmd.name}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}

}  // namespace sglab::cli
