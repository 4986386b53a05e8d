// csv.hpp
// Deterministic CSV output: shortest round-trip float formatting, no
// timestamps, self-describing comment header. Identical inputs give
// byte-identical files.

#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cliffmoll {

inline std::string csv_num(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("csv: formatting failed");
    return std::string(buf, p);
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("csv: cannot open '" + path + "'");
    }

    void comment(const std::string& line) { out_ << "# " << line << "\n"; }

    void header(const std::vector<std::string>& cols) { write_row(cols); }

    void row(const std::vector<std::string>& cells) { write_row(cells); }

  private:
    void write_row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

    std::ofstream out_;
};

}  // namespace cliffmoll
