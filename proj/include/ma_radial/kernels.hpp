#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

#include "ma_radial/grid.hpp"

namespace ma_radial {

/// Serial is the reference path; Parallel runs the same per-index body under
/// OpenMP. Reductions are always done serially afterwards, so both produce
/// bitwise identical results.
enum class Execution { Serial, Parallel };

void set_thread_count(int threads);
int thread_count();

namespace detail {
void parallel_loop(std::size_t count, const std::function<void(std::size_t)>& body);
}

/// Runs body(i) for i in [0, count). If any call throws, the exception from
/// the lowest index is rethrown after the loop.
template <class F>
void for_each_index(std::size_t count, Execution exec, F&& body) {
    if (exec == Execution::Serial) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    detail::parallel_loop(count, std::function<void(std::size_t)>(std::forward<F>(body)));
}

using ScalarFn = std::function<double(double)>;

/// Per-cell integrals of s^p h(s) over every grid cell.
std::vector<double> cell_integrals(const Grid& grid, const ScalarFn& h, double p, Execution exec);

/// Running sums: out[0] = 0, out[i+1] = out[i] + cells[i].
std::vector<double> prefix_sums(const std::vector<double>& cells);

/// Radial profile of phi on the grid with beta = n/2:
///   I[i]  = integral_0^{t_i} s^{beta-1} phi(s) ds
///   g1[i] = ((n/2) t_i^{-beta} I[i])^{1/n},  g1[0] = phi0^{1/n}
///   G[i]  = integral_0^{t_i} g'(s) ds  (g' evaluated from the same formula inside each cell)
/// Nodes with I = 0 get g1 = 0 ("flat").
struct ProfilePass {
    std::vector<double> I;
    std::vector<double> g1;
    std::vector<double> G;
};

ProfilePass profile_pass(const Grid& grid, int n, const ScalarFn& phi, double phi0, Execution exec);

double nth_root(double x, int n);

/// The n-th root expression ((n/2) I / t^{n/2})^{1/n}, 0 when I <= 0.
double g_prime_from_integral(double I, double t, int n);

}  // namespace ma_radial
