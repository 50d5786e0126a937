#pragma once

// Integral representation formulas on strips and sectors as numerical
// reconstruction engines: the Gauss-Cauchy formula, the Poisson formula, the
// inverse-Laplace multiplier representation, the singular Cauchy kernel with
// its principal-value operator, and the exponent-improvement isometry.

#include <string>
#include <vector>

#include "sqflab/strip_calc.hpp"

namespace sqflab {

struct ReprReport {
    std::string method;
    std::vector<cplx> points;
    std::vector<cplx> reconstructed;
    std::vector<cplx> reference;
    double max_abs_error = 0.0;
    // Laplace only: multiplier profile m_u on the time grid and its sup-norm.
    std::vector<cplx> multiplier_nodes;
    std::vector<cplx> multiplier;
    double multiplier_sup = 0.0;
    double multiplier_bound = 0.0;  // contour estimate * sup |u|
};

// u(z) = (1/2 pi i) int_{bd strip_omega} u(w) e^{-(w-z)^2}/(w-z) dw.
ReprReport reconstruct_gauss_cauchy(const ScalarFn& u, double omega,
                                    const std::vector<cplx>& z_points, double half_width = 0.0,
                                    std::size_t n_per_line = 0);

// u(z) = (1/2 pi) int (pi/2 omega) sech(pi (z+s)/(2 omega))
//                    (u(i omega - s) + u(-i omega - s)) ds.
ReprReport reconstruct_poisson(const ScalarFn& u, double omega, const std::vector<cplx>& z_points,
                               double half_width = 0.0, std::size_t n = 0);

struct LaplaceOpts {
    double alpha = 1.0;
    double beta = 1.0;
    double keyhole_omega = 2.0 * M_PI / 3.0;  // in (pi/2, angle of u)
    double sup_u = 1.0;                       // H-infinity norm of u on the sector
    double ray_truncation = 0.0;              // 0: auto from e^{s cos omega} decay
    std::size_t n_per_ray = 6000;
    std::size_t n_arc = 3000;
};

// m_u(s) = (2^{a+b}/2 pi i) int_{keyhole} u(z/(2s)) z^{-(a+b)} e^z dz, then
// u(z) is rebuilt as int m_u(t) (tz)^{a+b} e^{-2tz} dt/t over the log grid.
ReprReport reconstruct_laplace(const ScalarFn& u, const LaplaceOpts& opts,
                               const DiscreteHilbert& haar, const std::vector<cplx>& z_points);

struct FourierPairReport {
    double max_error = 0.0;
    bool pass = false;
};

// (1/2 pi) int (pi/omega) sech(pi s/(2 omega)) e^{ist} ds = sech(omega t),
// checked over the t grid.
FourierPairReport fourier_pair_check(double omega, const DiscreteHilbert& line,
                                     const std::vector<double>& t_points, double tol = 1e-6);

struct SingularCauchyOpts {
    double half_width = 30.0;          // identity grid truncation
    std::size_t n_per_line = 40001;    // identity grid resolution (pv is first order)
    double lambda_window = 3.0;        // full-resolution lambda scan around each z
    std::size_t far_stride = 25;       // sparse lambda sampling elsewhere
    std::size_t norm_n_per_line = 1501;  // coarser grid for the ||T_f|| estimate
    std::size_t power_iterations = 12;
    double tol = 1e-3;
};

struct SingularCauchyReport {
    double max_identity_residual = 0.0;  // f(z)/(l-z) vs (T_f g(.,z))(l)
    double tf_norm = 0.0;                // ||T_f|| on the discretized L^2(Gamma)
    double f_sup = 0.0;                  // sampled sup of |f| on the strip
    double norm_ratio = 0.0;             // tf_norm / f_sup
    bool pass = false;
};

// T_f h = f h / 2 + (1/2 pi i) pv int f(w) h(w)/(lambda - w) dw on the strip
// boundary; the pass threshold reflects the first-order pv quadrature.
SingularCauchyReport singular_cauchy(const HolFn& f, double omega,
                                     const std::vector<cplx>& z_points,
                                     const SingularCauchyOpts& opts = {});

struct ExponentReport {
    double isometry_defect = 0.0;     // max |<Tf,Tg> - <f,g>| over the dictionary
    double convolution_defect = 0.0;  // vs the Beta closed form
    double beta_constant = 0.0;       // B(alpha + 1/2, beta + 1/2)
    bool pass = false;
};

// (Tf)(s,t) = (t+s)^{-1/2} f(t+s) is isometric L^2(0,inf) -> L^2((0,inf)^2),
// and (1/sqrt t) int_0^t f_a(t-s, z) f_b(s, z) ds
//   = B(a+1/2, b+1/2) t^{a+b-1/2} z^{a+b} e^{-tz}.
ExponentReport exponent_improvement_check(double alpha, double beta,
                                          const std::vector<cplx>& z_points, double tol = 1e-6);

// Multiplier profile CSV (t, Re m, Im m).
void write_multiplier_csv(const ReprReport& rep, const std::string& path);

}  // namespace sqflab
