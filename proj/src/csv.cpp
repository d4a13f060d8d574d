#include "fanoqed/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fanoqed {

std::string format_double(double v) {
  char buf[40];
  // shortest form that round-trips: try increasing precision
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::string header) : buf_(std::move(header)) {
  buf_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += format_double(values[i]);
  }
  buf_ += '\n';
}

void CsvWriter::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << buf_;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fanoqed
