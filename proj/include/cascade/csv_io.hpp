#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace cascade {

// Deterministic CSV output: '#' metadata lines (parameter echo, version,
// grid hash), one header row, then fixed-format numeric rows.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    void comment(const std::string& text);
    void kv(const std::string& key, const std::string& value);
    void kv(const std::string& key, double value);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void row_raw(const std::vector<std::string>& cells);
    static std::string format(double v);

private:
    std::ofstream f_;
};

uint64_t fnv1a(const void* data, size_t len);
std::string grid_hash(const std::vector<double>& grid);

}  // namespace cascade
