#include "svarkit/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "svarkit/errors.hpp"

namespace svarkit::tscore {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, int row, int col) {
  const std::string s = trim(raw);
  if (s.empty()) {
    throw ParseError("empty cell at row " + std::to_string(row) + ", column " +
                     std::to_string(col));
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw ParseError("non-numeric cell '" + s + "' at row " + std::to_string(row) +
                     ", column " + std::to_string(col));
  }
  return v;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& index_col) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw ParseError("'" + path + "': empty file");
  std::vector<std::string> header = split_line(line);
  for (auto& h : header) h = trim(h);

  int index_pos = -1;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == index_col) index_pos = static_cast<int>(j);
  }
  if (index_pos < 0) throw ParseError("'" + path + "': no index column '" + index_col + "'");

  const int ncol = static_cast<int>(header.size());
  std::vector<int> index;
  std::vector<std::vector<double>> data(ncol);

  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_line(line);
    if (static_cast<int>(cells.size()) != ncol) {
      throw ParseError("'" + path + "': row " + std::to_string(row) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(ncol));
    }
    for (int j = 0; j < ncol; ++j) {
      const double v = parse_cell(cells[j], row, j + 1);
      if (j == index_pos) {
        const int year = static_cast<int>(std::llround(v));
        if (std::fabs(v - year) > 1e-9) {
          throw ParseError("'" + path + "': non-integer index value at row " +
                           std::to_string(row));
        }
        if (!index.empty() && year <= index.back()) {
          throw IndexError("'" + path + "': index not strictly increasing at row " +
                           std::to_string(row) + " (" + std::to_string(year) + ")");
        }
        index.push_back(year);
      } else {
        data[j].push_back(v);
      }
    }
  }

  std::vector<TimeSeries> columns;
  for (int j = 0; j < ncol; ++j) {
    if (j == index_pos) continue;
    TimeSeries s;
    s.name = header[j];
    s.index = index;
    s.values = Eigen::Map<Eigen::VectorXd>(data[j].data(), static_cast<int>(data[j].size()));
    columns.push_back(std::move(s));
  }
  return Dataset(std::move(index), std::move(columns));
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  auto emit_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (j) out << ',';
      out << cells[j];
    }
    out << '\n';
  };
  emit_row(table.header);
  for (const auto& r : table.rows) emit_row(r);
}

void write_csv(const std::string& path, const Dataset& data, const std::string& index_col) {
  CsvTable t;
  t.header.push_back(index_col);
  for (const auto& c : data.columns()) t.header.push_back(c.name);
  for (int i = 0; i < data.T(); ++i) {
    std::vector<std::string> row;
    row.push_back(std::to_string(data.index()[i]));
    for (const auto& c : data.columns()) row.push_back(format_double(c.values[i]));
    t.rows.push_back(std::move(row));
  }
  write_csv(path, t);
}

}  // namespace svarkit::tscore
