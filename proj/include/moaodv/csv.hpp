#pragma once

#include <string>
#include <vector>

#include "moaodv/objectives.hpp"
#include "moaodv/param_space.hpp"
#include "moaodv/stop.hpp"

namespace moaodv {

/// Comma-separated table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Numeric CSV reader. A first line that does not parse as numbers is
/// taken as the header. Blank lines and lines starting with '#' are skipped.
CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const CsvTable& table);

/// `f1,f2` rows.
std::vector<ObjectiveVector> read_front_csv(const std::string& path);
void write_front_csv(const std::string& path, const std::vector<ObjectiveVector>& points);

/// One genome per row, columns named after the space's parameters.
std::vector<Genome> read_genomes_csv(const std::string& path);
void write_genomes_csv(const std::string& path, const ParameterSpace& space,
                       const std::vector<Genome>& genomes);

/// `generation,elapsed_seconds,hypervolume,front_size`
void write_history_csv(const std::string& path, const std::vector<GenerationRecord>& history);

/// Single-column sample (first column of every row).
std::vector<double> read_sample_csv(const std::string& path);

}  // namespace moaodv
