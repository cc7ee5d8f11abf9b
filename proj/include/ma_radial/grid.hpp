#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace ma_radial {

/// Strictly increasing mesh 0 = t_0 < t_1 < ... < t_N = t_max.
///
/// The graded layout has `levels` nodes in geometric progression toward 0
/// (consecutive ratio `ratio`) below a junction t_g, and uniform spacing
/// h = t_g (1 - 1/ratio) from t_g up to t_max, so the spacing is continuous
/// across the junction.
class Grid {
public:
    static constexpr std::size_t kMinNodes = 16;

    /// `levels < 0` selects half of the nodes for the geometric part.
    static Grid graded(double t_max, int nodes = 1024, double ratio = 1.05, int levels = -1);

    /// Wraps explicit nodes (e.g. read back from a CSV file). Grading
    /// descriptors are left at ratio 0 / levels 0.
    static Grid from_nodes(std::vector<double> nodes);

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double operator[](std::size_t i) const { return nodes_[i]; }
    double t_max() const noexcept { return nodes_.back(); }
    double ratio() const noexcept { return ratio_; }
    int levels() const noexcept { return levels_; }

    /// Index i with nodes[i] <= t <= nodes[i+1] (the last cell for t_max).
    std::size_t cell_of(double t) const;

private:
    Grid(std::vector<double> nodes, double ratio, int levels);

    std::vector<double> nodes_;
    double ratio_ = 0.0;
    int levels_ = 0;
};

using GridPtr = std::shared_ptr<const Grid>;

enum class Interpolation {
    Cubic,     ///< local 4-point Lagrange cubic, O(h^4), exact at nodes
    Monotone,  ///< Fritsch-Carlson monotone cubic Hermite; never undershoots nonnegative data
};

/// Values on a grid with a piecewise-cubic interpolant.
///
/// Leading entries may be NaN (derived quantities only defined for t > 0);
/// `first_valid()` is the first finite entry and interpolation below it
/// extrapolates from the first valid stencil.
class SampledFunction {
public:
    SampledFunction() = default;
    SampledFunction(GridPtr grid, std::vector<double> values, Interpolation kind = Interpolation::Cubic);

    /// Interpolated value; throws ParameterError outside [0, t_max].
    double operator()(double t) const;

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t first_valid() const noexcept { return first_valid_; }
    Interpolation kind() const noexcept { return kind_; }

private:
    double cubic(std::size_t cell, double t) const;
    double monotone(std::size_t cell, double t) const;
    double pchip_slope(std::size_t i) const;

    GridPtr grid_;
    std::vector<double> values_;
    Interpolation kind_ = Interpolation::Cubic;
    std::size_t first_valid_ = 0;
};

inline double interpolate(const SampledFunction& h, double t) { return h(t); }

}  // namespace ma_radial
