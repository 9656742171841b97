// Discretization of (R, mu): grids with exact cell masses, sampled functions,
// integrals, L^p and Lorentz quantities.
#pragma once

#include "dunkl/special_functions.hpp"

#include <complex>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dunkl {

using cplx = std::complex<double>;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Grading { uniform, graded };

// Symmetric grid on [-X, X]. Positive half-cells [b_{j-1}, b_j], j = 1..N, with
// nodes near the midpoints (shifted to cancel the leading quadrature
// error, see grid.cpp) and weights equal to the exact mu-mass of the cell.
// Storage order is increasing in x: index N-1-j holds the node -m_j, index N+j
// holds m_j.
class QuadratureGrid {
public:
    QuadratureGrid(DunklParameter param, double extent, int half_cells, Grading grading);

    const DunklParameter& param() const noexcept { return param_; }
    double extent() const noexcept { return extent_; }
    int half_size() const noexcept { return n_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    Grading grading() const noexcept { return grading_; }

    std::span<const double> boundaries() const noexcept { return b_; }
    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    double node(std::size_t i) const noexcept { return nodes_[i]; }
    double weight(std::size_t i) const noexcept { return weights_[i]; }

    std::size_t pos_index(int j) const noexcept { return static_cast<std::size_t>(n_ + j); }
    std::size_t neg_index(int j) const noexcept { return static_cast<std::size_t>(n_ - 1 - j); }
    // Half-line cell index (0-based) of storage index i.
    int cell_of(std::size_t i) const noexcept {
        const int ii = static_cast<int>(i);
        return ii >= n_ ? ii - n_ : n_ - 1 - ii;
    }
    // Positive midpoints m_0 < ... < m_{N-1}.
    std::span<const double> half_nodes() const noexcept { return {nodes_.data() + n_, static_cast<std::size_t>(n_)}; }
    std::span<const double> half_weights() const noexcept { return {weights_.data() + n_, static_cast<std::size_t>(n_)}; }

    // Signed primitive G(x) = (d_k/2) sign(x) |x|^{2k+2}; mu([a,b]) = G(b) - G(a).
    double primitive(double x) const noexcept;
    // mu of the part of storage cell i lying in [a, b].
    double overlap_mass(std::size_t i, double a, double b) const noexcept;
    // Boundary b_j nearest to r (ties to the larger), and its index.
    int snap_index(double r) const;
    double snap(double r) const { return b_[static_cast<std::size_t>(snap_index(r))]; }

    std::string describe() const;

private:
    DunklParameter param_;
    double extent_;
    int n_;
    Grading grading_;
    std::vector<double> b_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

GridPtr build_grid(const DunklParameter& param, double extent, int half_cells,
                   Grading grading = Grading::graded);

// How samples represent the function: point values, or constant on each cell
// (indicators snapped to cell boundaries). The transform treats the latter
// exactly on every cell.
enum class Sampling { point, cell };

class GridFunction {
public:
    GridFunction(GridPtr grid, std::vector<cplx> values, Sampling sampling = Sampling::point);
    GridFunction(GridPtr grid, const std::vector<double>& values, Sampling sampling = Sampling::point);
    static GridFunction zeros(GridPtr grid);

    const QuadratureGrid& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    std::span<const cplx> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    cplx operator[](std::size_t i) const noexcept { return values_[i]; }
    Sampling sampling() const noexcept { return sampling_; }

    bool is_real() const noexcept;
    std::vector<double> real_values() const;
    std::vector<double> abs_values() const;
    double sup_norm() const noexcept;

    // |f|^q, keeping the sampling tag.
    GridFunction abs_pow(double q) const;
    GridFunction abs() const { return abs_pow(1.0); }
    GridFunction scaled(double t) const;
    // Pointwise product; cell data only when both factors are cell data.
    GridFunction operator*(const GridFunction& g) const;
    GridFunction operator+(const GridFunction& g) const;
    GridFunction operator-(const GridFunction& g) const;

    // Quality notes attached by operations (truncation, undershoot).
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

private:
    void check_same_grid(const GridFunction& g) const;

    GridPtr grid_;
    std::vector<cplx> values_;
    Sampling sampling_;
    std::vector<std::string> warnings_;
};

// Open ball of the Dunkl geometry: max(0, |x|-r) < |y| < |x|+r.
struct Ball {
    double center;
    double radius;
    bool contains(double y) const noexcept;
};

// Ordinary interval (x-r, x+r).
struct Interval {
    double center;
    double radius;
    bool contains(double y) const noexcept { return y > center - radius && y < center + radius; }
    Interval dilate(double delta) const { return {center, delta * radius}; }
};

double mu_ball(const DunklParameter& param, double r);

// Indicator of B_r with r snapped to the nearest cell boundary; the snapped
// radius is returned through `snapped` when requested.
GridFunction ball_indicator(const GridPtr& grid, double r, double* snapped = nullptr);

cplx integrate(const GridFunction& f);
double lp_norm(const GridFunction& f, double p);
double distribution_function(const GridFunction& f, double lambda);
double decreasing_rearrangement(const GridFunction& f, double s);
double lorentz_norm(const GridFunction& f, double p, double q);

// The same quantities on bare (|value|, weight) samples.
double lp_norm_samples(std::span<const double> v, std::span<const double> w, double p);
double lorentz_norm_samples(std::span<const double> v, std::span<const double> w, double p, double q);

void check_exponent(double p, const char* name);

} // namespace dunkl
