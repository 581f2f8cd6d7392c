#include "pacbo/io.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pacbo {

namespace {

constexpr int kDigits = std::numeric_limits<double>::max_digits10;

double number_or_nan(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

nlohmann::json step_to_json(const StepRecord& s, const char* type, bool include_timing) {
  nlohmann::json j;
  j["type"] = type;
  j["t"] = s.t;
  j["k"] = s.k();
  j["centers"] = centers_to_json(s.centers);
  if (std::isnan(s.loss)) {
    j["loss"] = nullptr;
  } else {
    j["loss"] = s.loss;
  }
  j["cumulative_loss"] = s.cumulative_loss;
  j["lambda"] = s.lambda;
  j["acceptance_rate"] = s.acceptance_rate;
  if (include_timing) j["wall_ms"] = s.wall_ms;
  if (!s.trace.empty()) {
    auto& tr = j["trace"] = nlohmann::json::array();
    for (const auto& e : s.trace)
      tr.push_back({e.n, e.k_current, e.k_proposed, e.alpha, e.accepted});
  }
  return j;
}

StepRecord step_from_json(const nlohmann::json& j) {
  StepRecord s;
  s.t = j.at("t").get<std::size_t>();
  s.centers = centers_from_json(j.at("centers"));
  if (s.centers.k() != j.at("k").get<std::size_t>())
    throw std::runtime_error("run record: k does not match the centers");
  s.loss = number_or_nan(j.at("loss"));
  s.cumulative_loss = j.at("cumulative_loss").get<double>();
  s.lambda = j.at("lambda").get<double>();
  s.acceptance_rate = j.at("acceptance_rate").get<double>();
  s.wall_ms = j.value("wall_ms", 0.0);
  if (j.contains("trace")) {
    for (const auto& e : j.at("trace"))
      s.trace.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                         e.at(2).get<std::size_t>(), e.at(3).get<double>(),
                         e.at(4).get<bool>()});
  }
  return s;
}

}  // namespace

nlohmann::json centers_to_json(const Centers& c) {
  auto arr = nlohmann::json::array();
  for (std::size_t j = 0; j < c.k(); ++j) {
    const auto row = c[j];
    arr.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return arr;
}

Centers centers_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::runtime_error("centers: expected a non-empty array");
  const std::size_t d = j.front().size();
  if (d == 0) throw std::runtime_error("centers: empty point");
  Centers c(d);
  for (const auto& row : j) {
    const auto v = row.get<std::vector<double>>();
    if (v.size() != d) throw std::runtime_error("centers: ragged array");
    c.push_back(v);
  }
  return c;
}

void write_run_jsonl(std::ostream& out, const RunRecord& record, bool include_timing) {
  nlohmann::json meta{{"type", "meta"},
                      {"R", record.R},
                      {"radius_exceedances", record.radius_exceedances},
                      {"T", record.steps.size()}};
  out << meta.dump() << '\n';
  for (const auto& s : record.steps) out << step_to_json(s, "step", include_timing).dump() << '\n';
  out << step_to_json(record.next, "prediction", include_timing).dump() << '\n';
}

RunRecord read_run_jsonl(std::istream& in) {
  RunRecord record;
  std::string line;
  bool have_meta = false, have_prediction = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    const auto type = j.at("type").get<std::string>();
    if (type == "meta") {
      record.R = j.at("R").get<double>();
      record.radius_exceedances = j.at("radius_exceedances").get<std::size_t>();
      have_meta = true;
    } else if (type == "step") {
      record.steps.push_back(step_from_json(j));
    } else if (type == "prediction") {
      record.next = step_from_json(j);
      have_prediction = true;
    } else {
      throw std::runtime_error("run record: unknown line type '" + type + "'");
    }
  }
  if (!have_meta || !have_prediction) throw std::runtime_error("run record: truncated file");
  return record;
}

void write_run_summary_csv(std::ostream& out, const RunRecord& record) {
  out << "t,k,loss,cumulative_loss,lambda,acceptance_rate\n" << std::setprecision(kDigits);
  for (const auto& s : record.steps)
    out << s.t << ',' << s.k() << ',' << s.loss << ',' << s.cumulative_loss << ',' << s.lambda
        << ',' << s.acceptance_rate << '\n';
}

void write_trace_csv(std::ostream& out, std::size_t t, const ChainTrace& trace, bool header) {
  if (header) out << "t,n,k_current,k_proposed,alpha,accepted\n";
  out << std::setprecision(kDigits);
  for (const auto& e : trace)
    out << t << ',' << e.n << ',' << e.k_current << ',' << e.k_proposed << ',' << e.alpha << ','
        << (e.accepted ? 1 : 0) << '\n';
}

void write_stream_csv(std::ostream& out, const GeneratedStream& stream) {
  const std::size_t d = stream.data.dim();
  out << 't';
  for (std::size_t i = 1; i <= d; ++i) out << ",x" << i;
  out << ",k_true\n" << std::setprecision(kDigits);
  for (std::size_t t = 0; t < stream.data.size(); ++t) {
    out << t + 1;
    for (double v : stream.data[t]) out << ',' << v;
    out << ',';
    if (!stream.k_true.empty()) out << stream.k_true[t];
    out << '\n';
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

GeneratedStream read_stream_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("stream csv: empty input");
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header.front() != "t" || header.back() != "k_true")
    throw std::runtime_error("stream csv: header must be t,x1..xd,k_true");
  const std::size_t d = header.size() - 2;
  GeneratedStream out{Dataset(d), {}};
  std::vector<double> x(d);
  bool any_truth = false, any_missing = false;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    const auto f = split_csv_line(line);
    if (f.size() != d + 2) throw std::runtime_error("stream csv: wrong field count on row " + std::to_string(row));
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t used = 0;
      x[i] = std::stod(f[i + 1], &used);
      if (used != f[i + 1].size()) throw std::runtime_error("stream csv: bad number on row " + std::to_string(row));
    }
    out.data.push_back(x);
    if (f.back().empty()) {
      any_missing = true;
    } else {
      any_truth = true;
      out.k_true.push_back(std::stoul(f.back()));
    }
  }
  if (any_truth && any_missing) throw std::runtime_error("stream csv: k_true only partially filled");
  return out;
}

void write_regret_csv(std::ostream& out, const std::vector<RegretRow>& rows) {
  out << "t,ecl,ocl,regret,bound_cor3,k_true,k_mode\n" << std::setprecision(kDigits);
  for (const auto& r : rows)
    out << r.t << ',' << r.ecl << ',' << r.ocl << ',' << r.regret << ',' << r.bound_cor3 << ','
        << r.k_true << ',' << r.k_mode << '\n';
}

}  // namespace pacbo
