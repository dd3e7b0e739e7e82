#ifndef ABELFEM_CSV_HPP
#define ABELFEM_CSV_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace abelfem {

/// One line of a study table.  `rate` is the pairwise log2 rate against
/// the previous row and is absent on the first row.
struct StudyRow {
  std::int64_t n = 0;       // number of elements
  double h = 0.0;           // mesh width
  std::int64_t m_dim = 0;   // system dimension
  double error = 0.0;
  double rel_error = 0.0;
  std::optional<double> rate;
};

inline constexpr const char* kCsvHeader = "N,h,M,error,rel_error,rate";

inline std::string format_real(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

inline std::string to_csv(const std::vector<StudyRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_real(r.h) << ',' << r.m_dim << ','
        << format_real(r.error) << ',' << format_real(r.rel_error) << ',';
    if (r.rate) out << format_real(*r.rate);
    out << "\n";
  }
  return out.str();
}

inline void write_csv(const std::string& path, const std::vector<StudyRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write csv file: " + path);
  out << to_csv(rows);
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::vector<StudyRow> from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("csv: missing or wrong header");
  std::vector<StudyRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (fields.size() != 6) throw std::runtime_error("csv: expected 6 fields per row");
    StudyRow r;
    r.n = std::stoll(fields[0]);
    r.h = std::stod(fields[1]);
    r.m_dim = std::stoll(fields[2]);
    r.error = std::stod(fields[3]);
    r.rel_error = std::stod(fields[4]);
    if (!fields[5].empty()) r.rate = std::stod(fields[5]);
    rows.push_back(r);
  }
  return rows;
}

inline std::vector<StudyRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_csv(buf.str());
}

}  // namespace abelfem

#endif
