#include "cascade/csv_io.hpp"

#include <cstdio>
#include <stdexcept>

#include "cascade/version.hpp"

namespace cascade {

CsvWriter::CsvWriter(const std::string& path) : f_(path) {
    if (!f_) throw std::runtime_error("cannot open output file: " + path);
    f_ << "# " << kToolName << " " << kVersion << "\n";
}

void CsvWriter::comment(const std::string& text) { f_ << "# " << text << "\n"; }

void CsvWriter::kv(const std::string& key, const std::string& value) {
    f_ << "# " << key << " = " << value << "\n";
}

void CsvWriter::kv(const std::string& key, double value) { kv(key, format(value)); }

void CsvWriter::header(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i) f_ << (i ? "," : "") << names[i];
    f_ << "\n";
}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i) f_ << (i ? "," : "") << format(values[i]);
    f_ << "\n";
}

void CsvWriter::row_raw(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) f_ << (i ? "," : "") << cells[i];
    f_ << "\n";
}

uint64_t fnv1a(const void* data, size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = 14695981039346656037ull;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::string grid_hash(const std::vector<double>& grid) {
    uint64_t h = fnv1a(grid.data(), grid.size() * sizeof(double));
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace cascade
