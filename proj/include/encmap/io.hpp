#pragma once

// CSV artifacts written between pipeline stages. Times use 6 decimals, other
// floats 9 significant digits, and `inf` stands for +infinity. Every reader
// accepts exactly what the matching writer produces and reports the first
// offending line in a ParseError.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "encmap/analysis.hpp"
#include "encmap/encounter.hpp"
#include "encmap/homology.hpp"
#include "encmap/metric.hpp"
#include "encmap/subsample.hpp"
#include "encmap/swarm.hpp"

namespace encmap::io {

namespace fs = std::filesystem;

std::string format_time(double t);    // "%.6f"
std::string format_value(double v);   // "%.9g", or "inf"

// Whole-field parse; accepts `inf`. Throws ParseError.
double parse_value(std::string_view s, const std::string& file, std::size_t line);

void write_status(const fs::path& p, const StatusLog& log);
StatusLog read_status(const fs::path& p);

void write_trajectory(const fs::path& p, const Trajectory& traj);
Trajectory read_trajectory(const fs::path& p);

void write_events(const fs::path& p, const std::vector<EncounterEvent>& events);
std::vector<EncounterEvent> read_events(const fs::path& p);

void write_distances(const fs::path& p, const DistanceMatrix& d);
DistanceMatrix read_distances(const fs::path& p);  // also rejects asymmetric input

void write_landmarks(const fs::path& p, const IndexList& idx);
IndexList read_landmarks(const fs::path& p);

void write_diagram(const fs::path& p, const PersistenceDiagram& dgm);
PersistenceDiagram read_diagram(const fs::path& p);

void write_embedding(const fs::path& p, const Embedding& e);
Embedding read_embedding(const fs::path& p);

struct ClassifierRecord {
  ClassifierParams theta;
  double cost = 0.0;
};
void write_classifier(const fs::path& p, const ClassifierRecord& c);
ClassifierRecord read_classifier(const fs::path& p);

struct SnrRecord {
  int run = 0;
  std::string method;
  double snr = 0.0;
};
void write_snr(const fs::path& p, const std::vector<SnrRecord>& rows);
std::vector<SnrRecord> read_snr(const fs::path& p);

// Writes via a temporary sibling and rename, so readers never see half a file.
void write_text(const fs::path& p, const std::string& text);
std::string read_text(const fs::path& p);

}  // namespace encmap::io
