#include "csv_io.hpp"

#include "dunkl/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dunkl::io {
namespace {

std::string trim(std::string s) {
    const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_number(const std::string& cell, const std::string& where) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    if (!cell.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw DataError(fmt::format("{}: not a number: '{}'", where, cell));
    if (!std::isfinite(v)) throw DataError(fmt::format("{}: non-finite value '{}'", where, cell));
    return v;
}

} // namespace

Samples read_samples(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split(trim(line));
            break;
        }
    }
    if (header.empty()) throw DataError(source + ": empty file");

    Samples s;
    if (header == std::vector<std::string>{"x", "value"}) {
        s.complex = false;
    } else if (header == std::vector<std::string>{"x", "re", "im"}) {
        s.complex = true;
    } else {
        throw DataError(fmt::format("{}: header must be 'x,value' or 'x,re,im', got '{}'", source, trim(line)));
    }
    const std::size_t cols = s.complex ? 3 : 2;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto cells = split(t);
        const std::string where = fmt::format("{}:{}", source, line_no);
        if (cells.size() != cols)
            throw DataError(fmt::format("{}: expected {} columns, got {}", where, cols, cells.size()));
        const double x = parse_number(cells[0], where);
        if (!s.x.empty() && !(x > s.x.back()))
            throw DataError(fmt::format("{}: x must be strictly increasing", where));
        s.x.push_back(x);
        const double re = parse_number(cells[1], where);
        const double im = s.complex ? parse_number(cells[2], where) : 0.0;
        s.value.emplace_back(re, im);
    }
    if (s.x.empty()) throw DataError(source + ": no data rows");
    return s;
}

Samples read_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return read_samples(in, path);
}

GridFunction resample(const Samples& s, const GridPtr& grid) {
    std::vector<cplx> v(grid->size(), cplx{});
    const auto& xs = s.x;
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const double x = grid->node(i);
        if (x < xs.front() || x > xs.back()) continue;
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        if (it == xs.end()) {
            v[i] = s.value.back();
            continue;
        }
        const auto hi = static_cast<std::size_t>(it - xs.begin());
        const std::size_t lo = hi - 1;
        const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
        v[i] = (1.0 - t) * s.value[lo] + t * s.value[hi];
    }
    GridFunction f(grid, std::move(v));
    const double covered_lo = std::max(xs.front(), -grid->extent());
    const double covered_hi = std::min(xs.back(), grid->extent());
    f.add_warning(fmt::format("linear interpolation of {} samples on [{}, {}]; zero outside; grid coverage [{}, {}]",
                              xs.size(), xs.front(), xs.back(), covered_lo, covered_hi));
    return f;
}

GridFunction ingest_csv(const std::string& path, const GridPtr& grid) {
    return resample(read_samples(path), grid);
}

void write_function(std::ostream& out, const GridFunction& f) {
    const bool real = f.is_real();
    out << (real ? "x,value\n" : "x,re,im\n");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (real)
            out << fmt::format("{},{}\n", f.grid().node(i), f[i].real());
        else
            out << fmt::format("{},{},{}\n", f.grid().node(i), f[i].real(), f[i].imag());
    }
}

void write_spectrum(std::ostream& out, const SpectralFunction& F) {
    out << "lambda,re,im\n";
    for (std::size_t i = 0; i < F.size(); ++i)
        out << fmt::format("{},{},{}\n", F.grid().node(i), F[i].real(), F[i].imag());
}

} // namespace dunkl::io
