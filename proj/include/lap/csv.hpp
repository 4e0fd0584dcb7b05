#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "lap/grid.hpp"

namespace lap {

// CSV writer emitting full double precision (17 significant digits).
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    static std::string num(double v);
    static std::string num(int v);

  private:
    std::ofstream out_;
};

// RadialFunction serialization: header `r,re,im`, one row per grid point.
void write_radial_function(const std::string& path, const RadialFunction& f);
RadialFunction read_radial_function(const std::string& path, GridPtr expected);

struct SphericalEnergySeries;
struct DimensionlessSeries;

// Series serializations: `r,M,R,A,F,N,Re_Z,Im_Z,G` and `r,mu,alpha,beta`.
void write_energy_series(const std::string& path,
                         const SphericalEnergySeries& s);
void write_dimensionless_series(const std::string& path,
                                const DimensionlessSeries& d);

}  // namespace lap
