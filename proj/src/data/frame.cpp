#include "nsibf/data/frame.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nsibf::data {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

SeriesFrame SeriesFrame::head(std::size_t n) const {
  SeriesFrame out = *this;
  const auto nn = static_cast<Eigen::Index>(std::min(n, rows()));
  out.X = X.topRows(nn);
  out.U = U.topRows(nn);
  if (has_labels) out.labels.assign(labels.begin(), labels.begin() + nn);
  return out;
}

SeriesFrame SeriesFrame::tail_from(std::size_t start) const {
  SeriesFrame out = *this;
  const auto s = static_cast<Eigen::Index>(std::min(start, rows()));
  out.X = X.bottomRows(X.rows() - s);
  out.U = U.bottomRows(U.rows() - s);
  if (has_labels) out.labels.assign(labels.begin() + s, labels.end());
  return out;
}

void SeriesFrame::validate() const {
  if (U.rows() != X.rows()) throw ValidationError("frame: X/U row count mismatch");
  if (has_labels && labels.size() != rows())
    throw ValidationError("frame: label length mismatch");
  if (!X.allFinite() || !U.allFinite())
    throw ValidationError("frame: non-finite values");
  std::set<std::string> names(sensor_names.begin(), sensor_names.end());
  names.insert(actuator_names.begin(), actuator_names.end());
  if (names.size() != sensor_names.size() + actuator_names.size())
    throw ValidationError("frame: duplicate column names");
}

CsvSchema CsvSchema::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open schema file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError("schema file " + path + ": " + e.what());
  }
  CsvSchema s;
  if (j.contains("sensors")) s.sensors = j["sensors"].get<std::vector<std::string>>();
  if (j.contains("actuators"))
    s.actuators = j["actuators"].get<std::vector<std::string>>();
  if (j.contains("label") && !j["label"].is_null())
    s.label = j["label"].get<std::string>();
  if (s.sensors.empty())
    throw ValidationError("schema file " + path + ": no sensor columns declared");
  return s;
}

SeriesFrame load_csv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open data file: " + path);
  if (schema.sensors.empty()) throw ValidationError("schema declares no sensors");

  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
  const std::vector<std::string> header = split_csv_line(line);

  auto col_index = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw ValidationError(path + ": missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };

  std::vector<std::size_t> sensor_cols, actuator_cols;
  sensor_cols.reserve(schema.sensors.size());
  for (const auto& n : schema.sensors) sensor_cols.push_back(col_index(n));
  for (const auto& n : schema.actuators) actuator_cols.push_back(col_index(n));
  const bool want_label = !schema.label.empty();
  const std::size_t label_col = want_label ? col_index(schema.label) : 0;

  std::vector<std::vector<double>> xs, us;
  std::vector<std::uint8_t> labels;
  std::vector<std::string> problems;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      problems.push_back("row " + std::to_string(row) + ": expected " +
                         std::to_string(header.size()) + " cells, got " +
                         std::to_string(cells.size()));
      if (problems.size() >= 10) break;
      continue;
    }
    auto read_cell = [&](std::size_t c) -> double {
      double v;
      try {
        v = parse_double(cells[c], "row " + std::to_string(row) + ", column '" +
                                       header[c] + "'");
      } catch (const ValidationError& e) {
        problems.emplace_back(e.what());
        return 0.0;
      }
      if (!std::isfinite(v)) {
        problems.push_back("row " + std::to_string(row) + ", column '" + header[c] +
                           "': non-finite value");
      }
      return v;
    };
    std::vector<double> xr(sensor_cols.size()), ur(actuator_cols.size());
    for (std::size_t i = 0; i < sensor_cols.size(); ++i) xr[i] = read_cell(sensor_cols[i]);
    for (std::size_t i = 0; i < actuator_cols.size(); ++i) ur[i] = read_cell(actuator_cols[i]);
    if (want_label) {
      const double lv = read_cell(label_col);
      labels.push_back(lv != 0.0 ? 1 : 0);
    }
    xs.push_back(std::move(xr));
    us.push_back(std::move(ur));
    if (problems.size() >= 10) break;
  }
  if (!problems.empty()) {
    std::ostringstream msg;
    msg << path << ": " << problems.size() << " parse error(s):";
    for (const auto& p : problems) msg << "\n  " << p;
    throw ValidationError(msg.str());
  }

  SeriesFrame frame;
  frame.sensor_names = schema.sensors;
  frame.actuator_names = schema.actuators;
  const auto T = static_cast<Eigen::Index>(xs.size());
  frame.X.resize(T, static_cast<Eigen::Index>(sensor_cols.size()));
  frame.U.resize(T, static_cast<Eigen::Index>(actuator_cols.size()));
  for (Eigen::Index r = 0; r < T; ++r) {
    for (Eigen::Index c = 0; c < frame.X.cols(); ++c) frame.X(r, c) = xs[r][c];
    for (Eigen::Index c = 0; c < frame.U.cols(); ++c) frame.U(r, c) = us[r][c];
  }
  frame.has_labels = want_label;
  frame.labels = std::move(labels);
  frame.validate();
  return frame;
}

void write_csv(const std::string& path, const SeriesFrame& frame) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write: " + path);
  out << "t";
  for (const auto& n : frame.sensor_names) out << "," << n;
  for (const auto& n : frame.actuator_names) out << "," << n;
  if (frame.has_labels) out << ",label";
  out << "\n";
  for (std::size_t r = 0; r < frame.rows(); ++r) {
    out << (r + 1);
    for (Eigen::Index c = 0; c < frame.X.cols(); ++c)
      out << "," << format_double(frame.X(static_cast<Eigen::Index>(r), c));
    for (Eigen::Index c = 0; c < frame.U.cols(); ++c)
      out << "," << format_double(frame.U(static_cast<Eigen::Index>(r), c));
    if (frame.has_labels) out << "," << int(frame.labels[r]);
    out << "\n";
  }
}

}  // namespace nsibf::data
