#include "gradbandit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gradbandit {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

std::string sweep_csv(const std::vector<RunTrace>& traces) {
  int k = 0;
  for (const RunTrace& trace : traces) {
    if (k == 0) k = trace.num_actions();
    if (trace.num_actions() != k)
      throw std::invalid_argument("sweep_csv: traces disagree on arm count");
  }
  if (k == 0) throw std::invalid_argument("sweep_csv: no traces");

  std::string out = "run_seed,eta,t,subopt,log_subopt,underflow,pi_star";
  for (int a = 1; a <= k; ++a) out += ",count_" + std::to_string(a);
  for (int a = 1; a <= k; ++a) out += ",theta_" + std::to_string(a);
  out += "\n";

  std::vector<const RunTrace*> order;
  order.reserve(traces.size());
  for (const RunTrace& trace : traces) order.push_back(&trace);
  std::stable_sort(order.begin(), order.end(),
                   [](const RunTrace* a, const RunTrace* b) {
                     if (a->eta != b->eta) return a->eta < b->eta;
                     return a->seed < b->seed;
                   });

  for (const RunTrace* trace : order) {
    for (const CheckpointRow& row : trace->rows) {
      out += std::to_string(trace->seed);
      out += ',';
      out += fmt_double(trace->eta);
      out += ',';
      out += std::to_string(row.t);
      out += ',';
      out += fmt_double(row.subopt);
      out += ',';
      out += fmt_double(row.log_subopt);
      out += ',';
      out += row.underflow ? '1' : '0';
      out += ',';
      out += fmt_double(row.pi_star);
      for (int a = 0; a < k; ++a) {
        out += ',';
        out += std::to_string(row.counts[a]);
      }
      for (int a = 0; a < k; ++a) {
        out += ',';
        out += fmt_double(row.theta[a]);
      }
      out += '\n';
    }
  }
  return out;
}

void write_sweep_csv(const std::string& path, const std::vector<RunTrace>& traces) {
  write_file(path, sweep_csv(traces));
}

std::string summary_json(const SweepResult& result) {
  nlohmann::json doc;
  doc["runs"] = nlohmann::json::array();
  for (const RunTrace& trace : result.traces) {
    nlohmann::json run;
    run["seed"] = trace.seed;
    run["eta"] = trace.eta;
    run["horizon"] = trace.horizon;
    run["final_subopt"] = trace.final_subopt;
    run["final_counts"] = trace.final_counts;
    run["final_theta"] = trace.final_theta;
    doc["runs"].push_back(std::move(run));
  }
  doc["failures"] = nlohmann::json::array();
  for (const SweepFailure& failure : result.failures) {
    nlohmann::json entry;
    entry["seed"] = failure.seed;
    entry["eta"] = failure.eta;
    entry["step"] = failure.step;
    entry["message"] = failure.message;
    doc["failures"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

void write_summary(const std::string& path, const SweepResult& result) {
  write_file(path, summary_json(result));
}

std::vector<PlotRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open CSV: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty CSV: " + path);
  const auto header = split_csv_line(line);
  if (header.size() < 7 || header[0] != "run_seed" || header[1] != "eta" ||
      header[2] != "t" || header[4] != "log_subopt" || header[5] != "underflow")
    throw std::runtime_error("unrecognized CSV header: " + path);
  std::vector<PlotRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw std::runtime_error("ragged CSV row: " + path);
    PlotRow row;
    row.seed = std::stoull(fields[0]);
    row.eta = std::stod(fields[1]);
    row.t = std::stoll(fields[2]);
    row.log_subopt = std::stod(fields[4]);
    row.underflow = fields[5] == "1";
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> emit_plot_files(const std::string& csv_path,
                                         const std::string& out_dir) {
  const std::vector<PlotRow> rows = read_sweep_csv(csv_path);
  if (rows.empty())
    throw std::runtime_error("no data rows in CSV: " + csv_path);
  std::filesystem::create_directories(out_dir);

  std::map<double, std::string> per_eta;
  for (const PlotRow& row : rows) {
    std::string& body = per_eta[row.eta];
    if (body.empty()) body = "log_t,log_subopt,seed,underflow\n";
    body += fmt_double(std::log(static_cast<double>(row.t)));
    body += ',';
    body += fmt_double(row.log_subopt);
    body += ',';
    body += std::to_string(row.seed);
    body += ',';
    body += row.underflow ? '1' : '0';
    body += '\n';
  }

  std::vector<std::string> names;
  for (const auto& [eta, body] : per_eta) {
    char tag[32];
    std::snprintf(tag, sizeof(tag), "%.12g", eta);
    const std::string name = std::string("plot_eta_") + tag + ".csv";
    write_file((std::filesystem::path(out_dir) / name).string(), body);
    names.push_back(name);
  }
  return names;
}

RewardKind parse_reward_kind(const std::string& name) {
  if (name == "point_mass") return RewardKind::point_mass;
  if (name == "gaussian") return RewardKind::gaussian;
  if (name == "bernoulli") return RewardKind::bernoulli;
  throw std::invalid_argument("unknown reward kind: " + name);
}

std::string reward_kind_name(RewardKind kind) {
  switch (kind) {
    case RewardKind::point_mass: return "point_mass";
    case RewardKind::gaussian: return "gaussian";
    case RewardKind::bernoulli: return "bernoulli";
  }
  return "unknown";
}

DiagLevel parse_diag_level(const std::string& name) {
  if (name == "off") return DiagLevel::off;
  if (name == "ckpt") return DiagLevel::checkpointed;
  if (name == "step") return DiagLevel::per_step;
  throw std::invalid_argument("unknown diagnostics level: " + name);
}

std::string diag_level_name(DiagLevel level) {
  switch (level) {
    case DiagLevel::off: return "off";
    case DiagLevel::checkpointed: return "ckpt";
    case DiagLevel::per_step: return "step";
  }
  return "unknown";
}

ExperimentConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& err) {
    throw std::runtime_error("config parse error in " + path + ": " + err.what());
  }
  ExperimentConfig config;
  try {
    doc.at("means").get_to(config.means);
    if (doc.contains("dist_kind"))
      config.kind = parse_reward_kind(doc["dist_kind"].get<std::string>());
    if (doc.contains("sigma")) config.sigma = doc["sigma"].get<double>();
    if (doc.contains("r_max")) config.r_max = doc["r_max"].get<double>();
    if (doc.contains("etas")) doc["etas"].get_to(config.etas);
    if (doc.contains("seeds")) doc["seeds"].get_to(config.seeds);
    if (doc.contains("horizon")) config.horizon = doc["horizon"].get<long long>();
    if (doc.contains("checkpoint_ratio"))
      config.checkpoint_ratio = doc["checkpoint_ratio"].get<double>();
    if (doc.contains("diagnostics"))
      config.diag = parse_diag_level(doc["diagnostics"].get<std::string>());
    if (doc.contains("theta_init")) doc["theta_init"].get_to(config.theta_init);
    if (doc.contains("seed_base"))
      config.seed_base = doc["seed_base"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& err) {
    throw std::runtime_error("bad config field in " + path + ": " + err.what());
  }
  return config;
}

std::string config_to_json(const ExperimentConfig& config) {
  nlohmann::json doc;
  doc["means"] = config.means;
  doc["dist_kind"] = reward_kind_name(config.kind);
  doc["sigma"] = config.sigma;
  doc["r_max"] = config.r_max;
  doc["etas"] = config.etas;
  doc["seeds"] = config.seeds;
  doc["horizon"] = config.horizon;
  doc["checkpoint_ratio"] = config.checkpoint_ratio;
  doc["diagnostics"] = diag_level_name(config.diag);
  if (!config.theta_init.empty()) doc["theta_init"] = config.theta_init;
  doc["seed_base"] = config.seed_base;
  return doc.dump(2) + "\n";
}

}  // namespace gradbandit
