#ifndef BIWAVE_QUADRATURE_HPP
#define BIWAVE_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "biwave/types.hpp"

namespace biwave {

/// Gauss-Legendre rule on [-1, 1]; nodes ascending.  Rules are computed
/// once per order and cached.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(std::size_t n);

struct QuadResult {
    cplx value;
    double error;
};

/// One Gauss-Legendre panel of f over [lo, hi].
cplx gl_panel(const std::function<cplx(double)>& f, double lo, double hi,
              const GaussRule& rule);

/// Composite rule over consecutive [breaks[k], breaks[k+1]] panels; panels
/// are summed with compensated accumulation.
cplx integrate_panels(const std::function<cplx(double)>& f,
                      const std::vector<double>& breaks, std::size_t order = 16);

/// Adaptive bisection with a GL16 whole-vs-halves error gauge; the budget
/// halves at each split.  Exceeding max_depth raises AccuracyError with the
/// best estimate attached.
QuadResult integrate_adaptive(const std::function<cplx(double)>& f, double lo,
                              double hi, double tol, int max_depth = 24);

/// Breakpoints lo..hi with spacing <= max_width (at least one panel).
std::vector<double> uniform_breaks(double lo, double hi, double max_width);

} // namespace biwave

#endif
