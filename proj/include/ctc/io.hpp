#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace ctc {

/// Shortest-roundtrip decimal formatting (%.17g); byte-stable across runs,
/// which is what makes CSV output reproducible.
std::string format_double(double x);

/// RFC-4180 quoting: fields containing commas, quotes, or newlines are
/// wrapped in double quotes with inner quotes doubled.
std::string csv_escape(const std::string& field);

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    /// '#'-prefixed comment line (format version banner).
    void comment(const std::string& text);
    void row(const std::vector<std::string>& fields);
    bool good() const { return out_.good(); }

private:
    std::ofstream out_;
};

}  // namespace ctc
