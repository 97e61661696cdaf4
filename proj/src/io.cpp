#include "scaleplan/io.hpp"

#include <charconv>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scaleplan/errors.hpp"

namespace scaleplan {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed while reading " + path.string());
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed while writing " + path.string());
}

json parse_json(const std::string& text, const std::string& what) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError(what + ": not valid JSON");
  return doc;
}

double number_field(const json& obj, const std::string& key, const std::string& what) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(what + ": missing key \"" + key + "\"");
  if (!it->is_number()) throw ParseError(what + ": key \"" + key + "\" must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ParseError(what + ": key \"" + key + "\" must be finite");
  return v;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& what) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) throw ParseError(what + ": unknown key \"" + key + "\"");
  }
}

std::string trim(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && is_space(static_cast<unsigned char>(s[start]))) ++start;
  return s.substr(start);
}

}  // namespace

std::string coefficients_to_json_text(const Coefficients& c) {
  json doc;
  doc["A"] = c.A;
  doc["B"] = c.B;
  doc["E"] = c.E;
  doc["alpha"] = c.alpha;
  doc["beta"] = c.beta;
  return doc.dump(2) + "\n";
}

Coefficients coefficients_from_json_text(const std::string& text) {
  const json doc = parse_json(text, "coefficients");
  if (!doc.is_object()) throw ParseError("coefficients: top level must be an object");
  reject_unknown_keys(doc, {"A", "B", "E", "alpha", "beta"}, "coefficients");
  try {
    return Coefficients(number_field(doc, "A", "coefficients"),
                        number_field(doc, "B", "coefficients"),
                        number_field(doc, "E", "coefficients"),
                        number_field(doc, "alpha", "coefficients"),
                        number_field(doc, "beta", "coefficients"));
  } catch (const ValidationError& e) {
    throw ParseError(std::string("coefficients: ") + e.what());
  }
}

Coefficients load_coefficients_json(const std::filesystem::path& path) {
  return coefficients_from_json_text(read_file(path));
}

void save_coefficients_json(const Coefficients& c, const std::filesystem::path& path) {
  write_file(path, coefficients_to_json_text(c));
}

PlannerConfig planner_config_from_json_text(const std::string& text) {
  const json doc = parse_json(text, "config");
  if (!doc.is_object()) throw ParseError("config: top level must be an object");
  reject_unknown_keys(doc, {"hardware", "mfu", "demand"}, "config");

  PlannerConfig cfg;
  if (const auto it = doc.find("hardware"); it != doc.end()) {
    reject_unknown_keys(*it,
                        {"train_price_per_hour", "train_peak_ops", "inf_price_per_hour",
                         "inf_peak_ops"},
                        "config.hardware");
    try {
      cfg.hardware = HardwareProfile(
          number_field(*it, "train_price_per_hour", "config.hardware"),
          number_field(*it, "train_peak_ops", "config.hardware"),
          number_field(*it, "inf_price_per_hour", "config.hardware"),
          number_field(*it, "inf_peak_ops", "config.hardware"));
    } catch (const ValidationError& e) {
      throw ParseError(std::string("config.hardware: ") + e.what());
    }
  }
  if (const auto it = doc.find("mfu"); it != doc.end()) {
    reject_unknown_keys(*it, {"train_mfu", "input_mfu", "output_mfu"}, "config.mfu");
    try {
      cfg.mfu = MfuProfile(number_field(*it, "train_mfu", "config.mfu"),
                           number_field(*it, "input_mfu", "config.mfu"),
                           number_field(*it, "output_mfu", "config.mfu"));
    } catch (const ValidationError& e) {
      throw ParseError(std::string("config.mfu: ") + e.what());
    }
  }
  if (const auto it = doc.find("demand"); it != doc.end()) {
    const bool by_requests = it->contains("requests") ||
                             it->contains("input_tokens_per_request") ||
                             it->contains("output_tokens_per_request");
    const bool by_totals =
        it->contains("total_input_tokens") || it->contains("total_output_tokens");
    if (by_requests && by_totals)
      throw ParseError("config.demand: give either request shape or raw totals, not both");
    try {
      if (by_totals) {
        reject_unknown_keys(*it, {"total_input_tokens", "total_output_tokens"},
                            "config.demand");
        cfg.demand = InferenceDemand::from_totals(
            it->contains("total_input_tokens")
                ? number_field(*it, "total_input_tokens", "config.demand")
                : 0.0,
            it->contains("total_output_tokens")
                ? number_field(*it, "total_output_tokens", "config.demand")
                : 0.0);
      } else {
        reject_unknown_keys(
            *it, {"requests", "input_tokens_per_request", "output_tokens_per_request"},
            "config.demand");
        cfg.demand = InferenceDemand(
            it->contains("requests") ? number_field(*it, "requests", "config.demand") : 0.0,
            it->contains("input_tokens_per_request")
                ? number_field(*it, "input_tokens_per_request", "config.demand")
                : InferenceDemand::kDefaultInputTokens,
            it->contains("output_tokens_per_request")
                ? number_field(*it, "output_tokens_per_request", "config.demand")
                : InferenceDemand::kDefaultOutputTokens);
      }
    } catch (const ValidationError& e) {
      throw ParseError(std::string("config.demand: ") + e.what());
    }
  }
  return cfg;
}

PlannerConfig load_planner_config(const std::filesystem::path& path) {
  return planner_config_from_json_text(read_file(path));
}

namespace {

double parse_csv_number(const std::string& field, int line, const char* column,
                        std::string& error) {
  double v = 0;
  const std::string t = trim(field);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    error = "line " + std::to_string(line) + ": " + column + " value '" + t +
            "' is not a number";
    return 0;
  }
  return v;
}

}  // namespace

std::vector<TrainingRun> parse_run_log_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::string> errors;
  std::vector<TrainingRun> runs;

  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);

    if (!header_seen) {
      if (fields.size() != 3 || trim(fields[0]) != "params" || trim(fields[1]) != "tokens" ||
          trim(fields[2]) != "loss")
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected header 'params,tokens,loss'");
      header_seen = true;
      continue;
    }

    if (fields.size() != 3) {
      errors.push_back("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                       std::to_string(fields.size()));
      continue;
    }
    std::string err;
    const double params = parse_csv_number(fields[0], line_no, "params", err);
    if (err.empty()) {
      const double tokens = parse_csv_number(fields[1], line_no, "tokens", err);
      if (err.empty()) {
        const double run_loss = parse_csv_number(fields[2], line_no, "loss", err);
        if (err.empty()) {
          try {
            runs.emplace_back(params, tokens, run_loss);
          } catch (const ValidationError& e) {
            err = "line " + std::to_string(line_no) + ": " + e.what();
          }
        }
      }
    }
    if (!err.empty()) errors.push_back(std::move(err));
  }

  if (!header_seen) throw ParseError("run log is empty (expected header 'params,tokens,loss')");
  if (!errors.empty()) {
    std::string joined;
    for (const auto& e : errors) {
      if (!joined.empty()) joined += "; ";
      joined += e;
    }
    throw ParseError("invalid run log: " + joined);
  }
  return runs;
}

std::vector<TrainingRun> load_run_log_csv(const std::filesystem::path& path) {
  return parse_run_log_csv(read_file(path));
}

namespace {

// Shortest decimal form that parses back to the same double.
void append_full_precision(std::string& out, double v) {
  char buf[40];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  out += buf;
}

}  // namespace

std::string sweep_to_csv(const SweepResult& result) {
  std::string out =
      "loss,demand,flops_ratio,params_ratio,tokens_ratio,optimal_params,"
      "optimal_tokens,baseline_params,baseline_tokens\n";
  for (const auto& cell : result.cells) {
    append_full_precision(out, cell.loss);
    out += ',';
    append_full_precision(out, cell.demand);
    if (cell.valid) {
      for (double v : {cell.flops_ratio, cell.params_ratio, cell.tokens_ratio,
                       cell.optimal_params, cell.optimal_tokens, cell.baseline_params,
                       cell.baseline_tokens}) {
        out += ',';
        append_full_precision(out, v);
      }
    } else {
      out += ",NA,NA,NA,NA,NA,NA,NA";
    }
    out += '\n';
  }
  return out;
}

void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path) {
  const std::string text = sweep_to_csv(result);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  write_file(tmp, text);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move temporary file onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace scaleplan
