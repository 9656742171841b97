// CSV ingestion and emission for the command-line tool.
#pragma once

#include "dunkl/transform.hpp"

#include <iosfwd>
#include <string>

namespace dunkl::io {

struct Samples {
    std::vector<double> x;
    std::vector<cplx> value;
    bool complex = false;
};

// Header `x,value` or `x,re,im`; x strictly increasing; no NaN.
Samples read_samples(std::istream& in, const std::string& source = "<stream>");
Samples read_samples(const std::string& path);

// Linear interpolation onto the grid nodes, zero outside [x_0, x_last].
GridFunction resample(const Samples& s, const GridPtr& grid);

GridFunction ingest_csv(const std::string& path, const GridPtr& grid);

void write_function(std::ostream& out, const GridFunction& f);
void write_spectrum(std::ostream& out, const SpectralFunction& F);

} // namespace dunkl::io
