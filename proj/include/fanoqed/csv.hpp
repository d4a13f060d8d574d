#pragma once

#include <string>
#include <vector>

namespace fanoqed {

// Shortest-round-trip decimal form of a double ("%.17g" trimmed). The same
// value always yields the same bytes, so CSV output is reproducible.
std::string format_double(double v);

struct CsvWriter {
  explicit CsvWriter(std::string header);
  void row(const std::vector<double>& values);
  const std::string& str() const { return buf_; }
  void save(const std::string& path) const;

 private:
  std::string buf_;
};

}  // namespace fanoqed
