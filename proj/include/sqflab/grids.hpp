#pragma once

// Weighted quadrature grids standing in for the Hilbert spaces L^2(R),
// L^2((0,inf), dt/t) and L^2 of strip boundaries, plus oriented contours for
// the calculus integrals. Trapezoid weights throughout; reductions run in
// fixed index order.

#include <functional>
#include <string>
#include <vector>

#include "sqflab/numlin.hpp"

namespace sqflab {

enum class MeasureTag { lebesgue_line, mult_haar, boundary_strip, boundary_keyhole };

// Quadrature grid with inner product <f,g> = sum_j w_j f(t_j) conj(g(t_j)).
struct DiscreteHilbert {
    MeasureTag tag = MeasureTag::lebesgue_line;
    std::vector<cplx> nodes;
    std::vector<double> weights;  // strictly positive
    double omega = 0.0;           // boundary grids: strip half-height

    std::size_t size() const { return nodes.size(); }
    double weight_sum() const;
};

cplx grid_inner(const DiscreteHilbert& g, const CVector& f, const CVector& h);
double grid_norm(const DiscreteHilbert& g, const CVector& f);
CVector sample(const DiscreteHilbert& g, const std::function<cplx(cplx)>& f);

// Oriented quadrature contour: sum_j dz_j f(z_j) approximates the contour
// integral of f (orientation folded into the complex weights dz_j).
struct Contour {
    std::string descriptor;
    std::vector<cplx> nodes;
    std::vector<cplx> dz;

    std::size_t size() const { return nodes.size(); }
    cplx integrate(const std::function<cplx(cplx)>& f) const;
};

// Uniform trapezoid grid on [-T, T].
DiscreteHilbert make_lebesgue_line(double half_width, std::size_t n);
// Geometric nodes on [eps, T], weights = spacing in log t (Haar measure dt/t).
DiscreteHilbert make_mult_haar(double eps, double T, std::size_t n);
// Both lines +-i omega + [-T, T], uniform nodes, arc-length weights.
DiscreteHilbert make_boundary_strip(double omega, double half_width, std::size_t n_per_line);
// Same two lines but graded: t = sinh(u) with uniform u in [-u_max, u_max].
// Reaches far tails (|t| ~ sinh(u_max)) with few nodes; used for kernels with
// only algebraic decay along the boundary.
DiscreteHilbert make_boundary_strip_sinh(double omega, double u_max, std::size_t n_per_line);

// Positively oriented boundary of the strip {|Im z| < omega}, truncated at
// |Re z| = T: bottom line left-to-right, top line right-to-left.
Contour make_strip_contour(double omega, double half_width, std::size_t n_per_line);
// Boundary of (sector of angle omega) minus (disk of radius r), truncated at
// |z| = T, oriented for the inverse Laplace transform: in along the lower ray,
// counterclockwise across the arc, out along the upper ray. Ray nodes are
// graded toward the arc joints. Requires pi/2 < omega <= pi.
Contour make_keyhole_contour(double omega, double radius, double T, std::size_t n_per_ray,
                             std::size_t n_arc);

// Trapezoid Fourier transform g_hat(t) = int g(s) e^{ist} ds evaluated at the
// given points. `inverse` applies the 1/(2 pi) convention instead.
struct FourierResult {
    CVector values;
    bool edge_decay_ok = true;  // tails of g below 1e-3 * tol at the grid edges
};
FourierResult discrete_fourier(const DiscreteHilbert& line, const CVector& g,
                               const std::vector<double>& eval_points, bool inverse = false,
                               double tol = 1e-8);

// Principal-value convolution sum (K h)(lambda) = pv sum_w h(w) dz_w/(lambda-w)
// skipping the singular node; evaluation points must be contour nodes.
// First-order accuracy in the grid spacing.
CVector pv_convolution(const Contour& c, const CVector& h, const std::vector<std::size_t>& at);
cplx pv_convolution_at(const Contour& c, const CVector& h, std::size_t at);

// CSV dump (node, weight) for debugging.
void write_grid_csv(const DiscreteHilbert& g, const std::string& path);

}  // namespace sqflab
