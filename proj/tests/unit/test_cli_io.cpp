#include "csv_io.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/test_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace dunkl;

namespace {

GridPtr grid() { return build_grid(DunklParameter(0.0), 12.0, 512); }

} // namespace

TEST_CASE("two zero samples give the zero function") {
    std::istringstream in("x,value\n-1,0\n1,0\n");
    const auto f = io::resample(io::read_samples(in), grid());
    CHECK(f.sup_norm() == 0.0);
    CHECK_FALSE(f.warnings().empty());
}

TEST_CASE("dense Gaussian samples reproduce the builtin") {
    std::ostringstream csv;
    csv << "x,value\n";
    for (int i = -24000; i <= 24000; ++i) {
        const double x = i * 5e-4;
        csv << x << ',' << std::exp(-x * x / 2) << '\n';
    }
    std::istringstream in(csv.str());
    const auto g = grid();
    const auto f = io::resample(io::read_samples(in), g);
    const auto ref = sample(gaussian(1.0), g);
    double err = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(f[i] - ref[i]));
    CHECK(err <= 1e-6);
}

TEST_CASE("complex columns and zero outside the sample range") {
    std::istringstream in("x,re,im\n0,1,2\n2,3,4\n");
    const auto g = grid();
    const auto f = io::resample(io::read_samples(in), g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = g->node(i);
        if (x < 0.0 || x > 2.0) CHECK(f[i] == cplx{});
        else CHECK(f[i] == cplx(1 + x, 2 + x));
    }
}

TEST_CASE("malformed input is a data error") {
    const auto bad = [](const char* text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(io::read_samples(in), DataError);
    };
    bad("");
    bad("x,y\n0,1\n");          // header mismatch
    bad("x,value\n");           // no rows
    bad("x,value\n1,0\n0,1\n"); // not increasing
    bad("x,value\n0,1\n0,2\n"); // repeated x
    bad("x,value\n0,nan\n");
    bad("x,value\n0,1,2\n");
    bad("x,value\n0,abc\n");
    CHECK_THROWS_AS(io::read_samples("/nonexistent/file.csv"), DataError);
}

TEST_CASE("CSV output round trips through ingestion") {
    const auto g = grid();
    const auto f = sample(bump(2.0), g);
    std::stringstream s;
    io::write_function(s, f);
    const auto back = io::resample(io::read_samples(s), g);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i].real() == doctest::Approx(f[i].real()).epsilon(1e-14));
}
