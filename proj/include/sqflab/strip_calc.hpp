#pragma once

// Holomorphic functional calculus for matrices of strip type: elementary
// calculus by boundary contour integral, regularized H-infinity calculus via
// e_n(z) = exp(-z^2/n), the Gauss-Cauchy variant valid for all bounded f, and
// the sectorial calculus through the exp/log correspondence.

#include <functional>

#include "sqflab/grids.hpp"
#include "sqflab/numlin.hpp"

namespace sqflab {

using ScalarFn = std::function<cplx(cplx)>;

struct HolFn {
    ScalarFn eval;
    double strip_half_height = 0.0;
    enum class Tag { elementary, bounded, unchecked } tag = Tag::unchecked;

    cplx operator()(cplx z) const { return eval(z); }
};

HolFn make_bounded(ScalarFn f, double strip_half_height);
HolFn make_unchecked(ScalarFn f, double strip_half_height);

// Square matrix of strip type; omega0 is computed from the spectrum.
struct StripOperator {
    CMatrix A;
    double omega0 = 0.0;
    double resolvent_margin = 1e-3;  // minimum allowed omega' - omega0
    CVector spectrum;

    std::size_t dim() const { return A.rows; }
    static StripOperator from_matrix(const CMatrix& A, double resolvent_margin = 1e-3);
};

struct ContourOpts {
    double omega_prime = 0.0;   // 0: midway between omega0 and the strip height
    double half_width = 0.0;    // 0: auto from the spectrum (and n for regularized)
    std::size_t n_per_line = 0; // 0: auto from spacing rule h <= min(0.05, gap/5)
};

enum class CalcMethod { elementary, regularized, gauss_cauchy };

struct CalcOpts {
    ContourOpts contour;
    int regularizer_n = 64;
};

// f(A) by the requested method. elementary requires the elementary tag;
// regularized computes e_n(A)^{-1} (e_n f)(A); gauss-cauchy inserts the
// Gaussian factor exp(-(zeta I - A)^2) and is valid for every bounded f.
CMatrix calculus_apply(const HolFn& f, const StripOperator& A, CalcMethod method,
                       const CalcOpts& opts = {});

// Resolve the contour that calculus_apply would use (for callers that batch
// several functions over one resolvent sweep).
Contour resolve_contour(const HolFn& f, const StripOperator& A, CalcMethod method,
                        const CalcOpts& opts = {});

// Per-node resolvent actions dz_k (z_k I - A)^{-1} x for a fixed vector.
std::vector<CVector> resolvent_sweep(const StripOperator& A, const Contour& c, const CVector& x);
// Per-node actions dz_k exp(-(z_k I - A)^2) (z_k I - A)^{-1} x.
std::vector<CVector> gauss_cauchy_sweep(const StripOperator& A, const Contour& c,
                                        const CVector& x);

struct LawReport {
    double residual = 0.0;
    double tol = 1e-8;
    bool pass = false;
};

LawReport check_multiplicative(const StripOperator& A, const HolFn& f, const HolFn& g,
                               CalcMethod method, const CalcOpts& opts = {}, double tol = 1e-8);
// (f(z)/(lambda - z))(A) = f(A) R(lambda, A) for |Im lambda| beyond the contour.
LawReport check_resolvent_consistency(const StripOperator& A, const HolFn& f, cplx lambda,
                                      CalcMethod method, const CalcOpts& opts = {},
                                      double tol = 1e-8);

// f(S) = (f o exp)(log S) for invertible S with spectrum off (-inf, 0];
// sector_angle is the half-angle of the sector on which f lives.
CMatrix sector_calculus(const CMatrix& S, const ScalarFn& f, double sector_angle,
                        const CalcOpts& opts = {});

// ---------------------------------------------------------------------------
// Elementary-class diagnostics.

struct DiagOpts {
    double truncation = 200.0;    // line integrals on [-T, T], stability vs 2T
    std::size_t nodes_per_unit = 32;
    std::size_t heights = 7;      // heights sampled in (-alpha, alpha)
    double height_fraction = 0.9; // alpha = fraction * omega
    std::size_t z_grid = 7;       // W12 profile sample points across the strip
    double inner_fraction = 0.5;  // W12 shifts taken in St_{inner_fraction * omega}
    std::size_t w12_nodes_per_unit = 10;
};

struct ElementaryDiagnostics {
    std::vector<double> heights;
    std::vector<double> line_integrals;  // int |f(r + i s)| dr per height
    double sup_line_integral = 0.0;
    double closed_contour_residual = 0.0;  // | oint_{bd strip} f | at alpha
    double w12_profile = 0.0;  // sup_z int (|f| + |f'| + |f''|)(t + z) dt
    bool is_elementary = false;
    bool tails_flagged = false;  // truncation-doubling changed some integral > 1%
};

ElementaryDiagnostics elementary_diagnostics(const ScalarFn& f, double omega,
                                             const DiagOpts& opts = {});

// Tags the function elementary after diagnostics pass; throws otherwise.
HolFn make_elementary(ScalarFn f, double strip_half_height, const DiagOpts& opts = {});

// Derivative by the Cauchy integral on a circle of radius rho around w.
cplx cauchy_derivative(const ScalarFn& f, cplx w, double rho, int order,
                       std::size_t circle_nodes = 48);

// sup over z_grid of sum_j w_j (|f| + |f'| + |f''|)(t_j + z); derivatives on
// circles of radius rho.
double w12_profile(const ScalarFn& f, const DiscreteHilbert& line, const std::vector<cplx>& z_grid,
                   double rho);

}  // namespace sqflab
