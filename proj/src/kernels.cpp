#include "ma_radial/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <limits>
#include <mutex>

#include "ma_radial/error.hpp"
#include "ma_radial/quadrature.hpp"

namespace ma_radial {

void set_thread_count(int threads) {
    if (threads < 1) throw ParameterError("thread count must be positive");
    omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

namespace detail {

void parallel_loop(std::size_t count, const std::function<void(std::size_t)>& body) {
    std::exception_ptr first;
    std::size_t first_index = std::numeric_limits<std::size_t>::max();
    std::mutex mu;
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (i < first_index) {
                first_index = i;
                first = std::current_exception();
            }
        }
    }
    if (first) std::rethrow_exception(first);
}

}  // namespace detail

std::vector<double> cell_integrals(const Grid& grid, const ScalarFn& h, double p, Execution exec) {
    std::vector<double> cells(grid.size() - 1);
    for_each_index(cells.size(), exec,
                   [&](std::size_t i) { cells[i] = weighted_cell_integral(h, p, grid[i], grid[i + 1]); });
    return cells;
}

std::vector<double> prefix_sums(const std::vector<double>& cells) {
    std::vector<double> out(cells.size() + 1);
    out[0] = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) out[i + 1] = out[i] + cells[i];
    return out;
}

double nth_root(double x, int n) {
    return n == 1 ? x : n == 2 ? std::sqrt(x) : n == 3 ? std::cbrt(x) : std::pow(x, 1.0 / n);
}

double g_prime_from_integral(double I, double t, int n) {
    if (!(I > 0.0)) return 0.0;
    const double beta = 0.5 * n;
    return nth_root(beta * I / std::pow(t, beta), n);
}

ProfilePass profile_pass(const Grid& grid, int n, const ScalarFn& phi, double phi0, Execution exec) {
    const double p = 0.5 * n - 1.0;
    ProfilePass out;
    out.I = prefix_sums(cell_integrals(grid, phi, p, exec));

    const std::size_t cells = grid.size() - 1;
    std::vector<double> K(cells);
    for_each_index(cells, exec, [&](std::size_t i) {
        const double a = grid[i], b = grid[i + 1], Ia = out.I[i];
        auto gp = [&](double x) { return g_prime_from_integral(Ia + weighted_cell_integral(phi, p, a, x), x, n); };
        K[i] = weighted_cell_integral(gp, 0.0, a, b);
    });
    out.G = prefix_sums(K);

    out.g1.resize(grid.size());
    out.g1[0] = nth_root(phi0, n);
    for (std::size_t i = 1; i < grid.size(); ++i) out.g1[i] = g_prime_from_integral(out.I[i], grid[i], n);
    return out;
}

}  // namespace ma_radial
