#include "lap/csv.hpp"

#include "lap/energies.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace lap {

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : out_(path) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string CsvWriter::num(int v) { return std::to_string(v); }

void write_radial_function(const std::string& path, const RadialFunction& f) {
    CsvWriter w(path, {"r", "re", "im"});
    for (std::size_t i = 0; i < f.size(); ++i)
        w.row({CsvWriter::num(f.grid->r[i]), CsvWriter::num(f.values[i].real()),
               CsvWriter::num(f.values[i].imag())});
}

RadialFunction read_radial_function(const std::string& path, GridPtr expected) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_radial_function: cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<cplx> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string r, re, im;
        std::getline(ss, r, ',');
        std::getline(ss, re, ',');
        std::getline(ss, im, ',');
        vals.emplace_back(std::stod(re), std::stod(im));
    }
    return RadialFunction(std::move(expected), std::move(vals));
}

}  // namespace lap

namespace lap {

void write_energy_series(const std::string& path,
                         const SphericalEnergySeries& s) {
    CsvWriter w(path, {"r", "M", "R", "A", "F", "N", "Re_Z", "Im_Z", "G"});
    for (std::size_t i = 0; i < s.grid->size(); ++i)
        w.row({CsvWriter::num(s.grid->r[i]), CsvWriter::num(s.M[i]),
               CsvWriter::num(s.R[i]), CsvWriter::num(s.A[i]),
               CsvWriter::num(s.F[i]), CsvWriter::num(s.N[i]),
               CsvWriter::num(s.Z[i].real()), CsvWriter::num(s.Z[i].imag()),
               CsvWriter::num(s.G[i])});
}

void write_dimensionless_series(const std::string& path,
                                const DimensionlessSeries& d) {
    CsvWriter w(path, {"r", "mu", "alpha", "beta"});
    for (std::size_t i = 0; i < d.grid->size(); ++i) {
        if (!d.valid[i]) continue;
        w.row({CsvWriter::num(d.grid->r[i]), CsvWriter::num(d.mu[i]),
               CsvWriter::num(d.alpha[i]), CsvWriter::num(d.beta[i])});
    }
}

}  // namespace lap
