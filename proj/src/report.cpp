#include "dualsolver/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dualsolver {

std::string fmt_double(double v) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    std::string line;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) line += ',';
        line += header[i];
    }
    body_ = line + "\n";
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) {
        throw std::invalid_argument("CsvWriter: row width mismatch");
    }
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    body_ += line + "\n";
}

std::string CsvWriter::str() const { return body_; }

void CsvWriter::save(const std::string& path) const { atomic_write_file(path, body_); }

}  // namespace dualsolver
