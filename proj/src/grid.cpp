#include "ma_radial/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ma_radial/error.hpp"

namespace ma_radial {

Grid::Grid(std::vector<double> nodes, double ratio, int levels)
    : nodes_(std::move(nodes)), ratio_(ratio), levels_(levels) {}

Grid Grid::graded(double t_max, int nodes, double ratio, int levels) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ParameterError("t_max must be positive");
    if (nodes < static_cast<int>(kMinNodes)) {
        throw ParameterError("grid needs at least " + std::to_string(kMinNodes) + " nodes");
    }
    if (!(ratio > 1.0)) throw ParameterError("grading ratio must exceed 1");
    if (levels < 0) levels = nodes / 2;
    // nodes = 1 (origin) + levels (geometric, below t_g) + uniform + 1 (t_g .. t_max)
    const int uniform = nodes - 2 - levels;
    if (levels < 1 || uniform < 1) throw ParameterError("grading levels leave no room for the uniform part");

    const double junction_factor = ratio / (ratio - 1.0);  // t_g / h
    const double h = t_max / (uniform + junction_factor);
    const double t_g = h * junction_factor;

    std::vector<double> t(static_cast<std::size_t>(nodes));
    t[0] = 0.0;
    for (int j = 0; j < levels; ++j) {
        // geometric nodes t_g * ratio^{-(levels - j)}, increasing
        t[static_cast<std::size_t>(j) + 1] = t_g * std::pow(ratio, -static_cast<double>(levels - j));
    }
    for (int j = 0; j <= uniform; ++j) {
        t[static_cast<std::size_t>(levels + 1 + j)] = j == uniform ? t_max : t_g + j * h;
    }
    return Grid(std::move(t), ratio, levels);
}

Grid Grid::from_nodes(std::vector<double> nodes) {
    if (nodes.size() < kMinNodes) {
        throw ParameterError("grid needs at least " + std::to_string(kMinNodes) + " nodes");
    }
    if (nodes.front() != 0.0) throw ParameterError("grid must start at t = 0");
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) throw ParameterError("grid nodes must be strictly increasing");
    }
    return Grid(std::move(nodes), 0.0, 0);
}

std::size_t Grid::cell_of(double t) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return std::min(i, nodes_.size() - 2);
}

// --- SampledFunction ---------------------------------------------------------

SampledFunction::SampledFunction(GridPtr grid, std::vector<double> values, Interpolation kind)
    : grid_(std::move(grid)), values_(std::move(values)), kind_(kind) {
    if (!grid_) throw ParameterError("sampled function needs a grid");
    if (values_.size() != grid_->size()) throw ParameterError("sample count does not match the grid");
    while (first_valid_ < values_.size() && !std::isfinite(values_[first_valid_])) ++first_valid_;
    if (values_.size() - first_valid_ < 4) throw ParameterError("sampled function has fewer than 4 finite values");
}

double SampledFunction::operator()(double t) const {
    const Grid& g = *grid_;
    if (!(t >= 0.0 && t <= g.t_max())) {
        throw ParameterError("interpolation point " + std::to_string(t) + " outside [0, t_max]");
    }
    std::size_t cell = g.cell_of(t);
    if (t == g[cell] && cell >= first_valid_) return values_[cell];
    if (t == g[cell + 1] && cell + 1 >= first_valid_) return values_[cell + 1];
    if (kind_ == Interpolation::Monotone && cell >= first_valid_) return monotone(cell, t);
    return cubic(cell, t);
}

double SampledFunction::cubic(std::size_t cell, double t) const {
    const auto x = grid_->nodes();
    const std::size_t n = values_.size();
    std::size_t start = cell > 0 ? cell - 1 : 0;
    start = std::clamp(start, first_valid_, n - 4);
    const double x0 = x[start], x1 = x[start + 1], x2 = x[start + 2], x3 = x[start + 3];
    const double y0 = values_[start], y1 = values_[start + 1], y2 = values_[start + 2], y3 = values_[start + 3];
    // Newton divided differences; constant data gives exactly y0.
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double d23 = (y3 - y2) / (x3 - x2);
    const double d012 = (d12 - d01) / (x2 - x0);
    const double d123 = (d23 - d12) / (x3 - x1);
    const double d0123 = (d123 - d012) / (x3 - x0);
    return y0 + (t - x0) * (d01 + (t - x1) * (d012 + (t - x2) * d0123));
}

double SampledFunction::pchip_slope(std::size_t i) const {
    const auto x = grid_->nodes();
    const std::size_t lo = first_valid_, hi = values_.size() - 1;
    auto delta = [&](std::size_t k) { return (values_[k + 1] - values_[k]) / (x[k + 1] - x[k]); };
    if (i == lo || i == hi) {
        // one-sided three-point estimate, limited as in Fritsch-Carlson
        const bool left = i == lo;
        const std::size_t k0 = left ? lo : hi - 1, k1 = left ? lo + 1 : hi - 2;
        const double h0 = x[k0 + 1] - x[k0], h1 = x[k1 + 1] - x[k1];
        const double d0 = delta(k0), d1 = delta(k1);
        double d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (d * d0 <= 0.0) d = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(d) > std::abs(3 * d0)) d = 3 * d0;
        return d;
    }
    const double hl = x[i] - x[i - 1], hr = x[i + 1] - x[i];
    const double dl = delta(i - 1), dr = delta(i);
    if (dl * dr <= 0.0) return 0.0;
    const double w1 = 2 * hr + hl, w2 = hr + 2 * hl;
    return (w1 + w2) / (w1 / dl + w2 / dr);
}

double SampledFunction::monotone(std::size_t cell, double t) const {
    const auto x = grid_->nodes();
    const double h = x[cell + 1] - x[cell];
    const double s = (t - x[cell]) / h;
    const double y0 = values_[cell], y1 = values_[cell + 1];
    const double m0 = pchip_slope(cell) * h, m1 = pchip_slope(cell + 1) * h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
}

}  // namespace ma_radial
