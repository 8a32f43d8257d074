#include "moaodv/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace moaodv {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(trim(cell));
  return out;
}

bool parse_row(const std::vector<std::string>& cells, std::vector<double>& row) {
  row.clear();
  for (const auto& c : cells) {
    try {
      std::size_t used = 0;
      row.push_back(std::stod(c, &used));
      if (used != c.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  return out;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto cells = split(s);
    if (parse_row(cells, row)) {
      if (!t.rows.empty() && row.size() != t.rows.front().size()) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": ragged row");
      }
      t.rows.push_back(row);
    } else if (first) {
      t.header = cells;
    } else {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-numeric cell");
    }
    first = false;
  }
  return t;
}

void write_csv(const std::string& path, const CsvTable& table) {
  auto out = open_out(path);
  for (std::size_t j = 0; j < table.header.size(); ++j) out << (j ? "," : "") << table.header[j];
  if (!table.header.empty()) out << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << r[j];
    out << '\n';
  }
}

std::vector<ObjectiveVector> read_front_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  std::vector<ObjectiveVector> out;
  for (const auto& r : t.rows) {
    if (r.size() < 2) throw std::runtime_error(path + ": front rows need f1,f2");
    out.push_back({r[0], r[1]});
  }
  return out;
}

void write_front_csv(const std::string& path, const std::vector<ObjectiveVector>& points) {
  CsvTable t{{"f1", "f2"}, {}};
  for (const auto& p : points) t.rows.push_back({p.f1, p.f2});
  write_csv(path, t);
}

std::vector<Genome> read_genomes_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  std::vector<Genome> out;
  for (const auto& r : t.rows) out.emplace_back(r);
  return out;
}

void write_genomes_csv(const std::string& path, const ParameterSpace& space,
                       const std::vector<Genome>& genomes) {
  CsvTable t{space.column_names(), {}};
  for (const auto& g : genomes) t.rows.emplace_back(g.begin(), g.end());
  write_csv(path, t);
}

void write_history_csv(const std::string& path, const std::vector<GenerationRecord>& history) {
  auto out = open_out(path);
  out << "generation,elapsed_seconds,hypervolume,front_size\n";
  for (const auto& h : history) {
    out << h.generation << ',' << h.elapsed_seconds << ',' << h.hypervolume << ',' << h.front.size() << '\n';
  }
}

std::vector<double> read_sample_csv(const std::string& path) {
  const CsvTable t = read_csv(path);
  std::vector<double> out;
  for (const auto& r : t.rows) {
    if (r.empty()) throw std::runtime_error(path + ": empty row");
    out.push_back(r[0]);
  }
  return out;
}

}  // namespace moaodv
