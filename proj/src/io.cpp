// Apache License, Version 2.0, refer to LICENSE.txt

#include "lss/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lss::io {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

}  // namespace

void write_samples_csv(const std::filesystem::path& path,
                       const ChainOutput& chain) {
  auto out = open_out(path);
  out << "iter";
  for (std::size_t c = 1; c <= chain.dim; ++c) out << ",y" << c;
  out << "\n";
  for (std::size_t r = 0; r < chain.n_kept; ++r) {
    out << chain.kept_iteration[r];
    for (std::size_t c = 0; c < chain.dim; ++c)
      out << ',' << format_double(chain.at(r, c));
    out << "\n";
  }
}

void write_series_csv(const std::filesystem::path& path,
                      const std::string& column_name,
                      const std::vector<double>& series) {
  auto out = open_out(path);
  out << "iter," << column_name << "\n";
  for (std::size_t i = 0; i < series.size(); ++i)
    out << (i + 1) << ',' << format_double(series[i]) << "\n";
}

void write_summary_json(const std::filesystem::path& path,
                        const std::string& experiment, std::uint64_t seed,
                        std::size_t n, double wall_time_s,
                        const std::vector<diag::ChainSummary>& per_dimension) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["experiment"] = experiment;
  doc["seed"] = seed;
  doc["n"] = n;
  doc["dim"] = per_dimension.size();
  doc["wall_time_s"] = wall_time_s;
  doc["summaries"] = nlohmann::json::array();
  for (const auto& s : per_dimension) {
    nlohmann::json entry{{"mean", s.mean},   {"sd", s.sd},
                         {"q025", s.q025},   {"q50", s.q50},
                         {"q975", s.q975},   {"act", s.act}};
    // NaN is not representable in JSON; flag degenerate chains as null
    entry["ess"] = std::isnan(s.ess) ? nlohmann::json() : nlohmann::json(s.ess);
    if (std::isnan(s.act)) entry["act"] = nlohmann::json();
    if (s.ks_stat) entry["ks_stat"] = *s.ks_stat;
    if (s.mode_fractions) entry["mode_fractions"] = *s.mode_fractions;
    doc["summaries"].push_back(std::move(entry));
  }
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

void write_table_csv(const std::filesystem::path& path, const Table& table) {
  auto out = open_out(path);
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (std::size_t r = 0; r < table.rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      out << (c ? "," : "") << format_double(table.at(r, c));
    out << "\n";
  }
}

Table table_from_series(const std::string& column,
                        const std::vector<double>& xs) {
  Table table;
  table.columns = {column};
  table.rows = xs.size();
  table.data = xs;
  return table;
}

std::vector<double> series_from_table(const Table& table) {
  if (table.columns.size() != 1)
    throw std::runtime_error("series_from_table: expected a single column");
  return table.data;
}

Table table_from_gp(const targets::GpData& data) {
  Table table;
  table.columns = {"x", "y", "f_true"};
  table.rows = data.inputs.size();
  for (std::size_t i = 0; i < table.rows; ++i) {
    table.data.push_back(data.inputs[i]);
    table.data.push_back(data.observed[i]);
    table.data.push_back(data.f_true[i]);
  }
  return table;
}

targets::GpData gp_from_table(const Table& table, double noise_sd) {
  if (table.columns != std::vector<std::string>{"x", "y", "f_true"})
    throw std::runtime_error("gp_from_table: expected columns x,y,f_true");
  targets::GpData data;
  data.noise_sd = noise_sd;
  for (std::size_t r = 0; r < table.rows; ++r) {
    data.inputs.push_back(table.at(r, 0));
    data.observed.push_back(table.at(r, 1));
    data.f_true.push_back(table.at(r, 2));
  }
  return data;
}

Table table_from_state_space(const targets::StateSpaceData& data) {
  Table table;
  table.columns = {"y", "x_true"};
  table.rows = data.counts.size();
  for (std::size_t i = 0; i < table.rows; ++i) {
    table.data.push_back(static_cast<double>(data.counts[i]));
    table.data.push_back(data.x_true[i]);
  }
  return table;
}

targets::StateSpaceData state_space_from_table(const Table& table, double rho) {
  if (table.columns != std::vector<std::string>{"y", "x_true"})
    throw std::runtime_error("state_space_from_table: expected columns y,x_true");
  targets::StateSpaceData data;
  data.rho = rho;
  for (std::size_t r = 0; r < table.rows; ++r) {
    data.counts.push_back(static_cast<long>(table.at(r, 0)));
    data.x_true.push_back(table.at(r, 1));
  }
  return data;
}

Table table_from_spike_slab(const targets::SpikeSlabData& data) {
  Table table;
  table.columns = {"y"};
  for (std::size_t j = 1; j <= data.p; ++j)
    table.columns.push_back("x" + std::to_string(j));
  table.rows = data.n;
  for (std::size_t i = 0; i < data.n; ++i) {
    table.data.push_back(data.response[i]);
    for (std::size_t j = 0; j < data.p; ++j)
      table.data.push_back(data.design[i * data.p + j]);
  }
  return table;
}

targets::SpikeSlabData spike_slab_from_table(const Table& table) {
  if (table.columns.empty() || table.columns[0] != "y")
    throw std::runtime_error("spike_slab_from_table: first column must be y");
  targets::SpikeSlabData data;
  data.n = table.rows;
  data.p = table.columns.size() - 1;
  data.beta_true.clear();  // not part of the inference problem
  for (std::size_t r = 0; r < table.rows; ++r) {
    data.response.push_back(table.at(r, 0));
    for (std::size_t j = 0; j < data.p; ++j)
      data.design.push_back(table.at(r, j + 1));
  }
  return data;
}

Table read_table_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  Table table;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty csv: " + path.string());
  std::stringstream header(line);
  for (std::string cell; std::getline(header, cell, ',');)
    table.columns.push_back(cell);
  if (table.columns.empty())
    throw std::runtime_error("headerless csv: " + path.string());

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::size_t got = 0;
    for (std::string cell; std::getline(row, cell, ','); ++got)
      table.data.push_back(std::stod(cell));
    if (got != table.columns.size())
      throw std::runtime_error("ragged csv row in " + path.string());
    ++table.rows;
  }
  return table;
}

}  // namespace lss::io
