#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace nanosim {

/// Minimal CSV row builder. Fields are written verbatim; callers only emit
/// identifiers and numbers, so no quoting is needed.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(std::vector<std::string> fields);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Fixed-precision decimal formatting (no locale, no exponent).
std::string fmt_fixed(double v, int digits);

}  // namespace nanosim
