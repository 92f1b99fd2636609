#pragma once

#include <string>
#include <vector>

#include "svarkit/timeseries.hpp"

namespace svarkit::tscore {

// Reads a UTF-8, comma-separated file with a header row. One column (named
// index_col) holds integer periods; every other column becomes a TimeSeries,
// in file order.
Dataset load_csv(const std::string& path, const std::string& index_col);

// Minimal CSV emitter for labeled tables. Cells are written as given;
// numeric formatting is the caller's job.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
void write_csv(const std::string& path, const Dataset& data, const std::string& index_col);

std::string format_double(double x);  // shortest round-trip representation

}  // namespace svarkit::tscore
