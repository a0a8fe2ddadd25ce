#pragma once

#include <string>
#include <vector>

namespace dualsolver {

// Shortest decimal representation that parses back to the same binary64.
std::string fmt_double(double v);

// Writes content to path via a temp file + rename, so readers never observe
// a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// Minimal CSV assembly; all numeric cells go through fmt_double so reruns
// with the same seed produce byte-identical bodies.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<std::string>& cells);
    std::string str() const;
    void save(const std::string& path) const;

  private:
    std::size_t columns_;
    std::string body_;
};

}  // namespace dualsolver
