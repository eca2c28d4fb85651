#pragma once

// CSV output. The first line is "# precision_digits=D"; big integers are
// decimal strings and every number is printed with D significant digits.

#include "shear/exactarith.hpp"

#include <string>
#include <vector>

namespace shear {

// Directed decimal forms of a Real; "inf", "-inf", "nan" pass through.
std::string fmt_up(const Real &v, int digits);
std::string fmt_down(const Real &v, int digits);
std::string fmt_near(const Real &v, int digits);
std::string fmt_rat(const BigRat &q);  // "a/b" or "a"

class CsvTable {
public:
    CsvTable(std::vector<std::string> columns, int digits);

    int digits() const { return digits_; }
    void add_row(std::vector<std::string> cells);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;
    void write(const std::string &path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
    int digits_;
};

// Minimal reader for tables written by CsvTable (no quoting).
struct CsvData {
    int digits = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    long column(const std::string &name) const;  // -1 when absent
};

CsvData read_csv(const std::string &path);

std::string read_text(const std::string &path);
void write_text(const std::string &path, const std::string &text);

} // namespace shear
