#include "shear/orbitlab/format.hpp"
#include "shear/error.hpp"

#include <fstream>
#include <sstream>

namespace shear {

namespace {

std::string fmt(const Real &v, int digits, mpfr_rnd_t rnd) { return v.to_string(digits, rnd); }

std::vector<std::string> split_line(const std::string &line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

} // namespace

std::string fmt_up(const Real &v, int digits) { return fmt(v, digits, MPFR_RNDU); }
std::string fmt_down(const Real &v, int digits) { return fmt(v, digits, MPFR_RNDD); }
std::string fmt_near(const Real &v, int digits) { return fmt(v, digits, MPFR_RNDN); }
std::string fmt_rat(const BigRat &q) { return to_string(q); }

CsvTable::CsvTable(std::vector<std::string> columns, int digits) : columns_(std::move(columns)), digits_(digits) {}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != columns_.size())
        throw std::logic_error("csv row width mismatch");
    for (const auto &c : cells)
        if (c.find_first_of(",\n") != std::string::npos)
            throw std::logic_error("csv cell contains a separator: " + c);
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const
{
    std::ostringstream os;
    os << "# precision_digits=" << digits_ << "\n";
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            os << (i ? "," : "") << cells[i];
        os << "\n";
    };
    line(columns_);
    for (const auto &r : rows_)
        line(r);
    return os.str();
}

void CsvTable::write(const std::string &path) const { write_text(path, str()); }

long CsvData::column(const std::string &name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name)
            return static_cast<long>(i);
    return -1;
}

CsvData read_csv(const std::string &path)
{
    std::istringstream in(read_text(path));
    CsvData d;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# precision_digits=", 0) != 0)
        throw Error(ErrorKind::missing_input, path + ": missing precision header");
    d.digits = std::stoi(line.substr(19));
    if (!std::getline(in, line))
        throw Error(ErrorKind::missing_input, path + ": missing column header");
    d.columns = split_line(line);
    while (std::getline(in, line))
        if (!line.empty())
            d.rows.push_back(split_line(line));
    return d;
}

std::string read_text(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::missing_input, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::config, "cannot write " + path);
    out << text;
    if (!out)
        throw Error(ErrorKind::config, "write failed for " + path);
}

} // namespace shear
