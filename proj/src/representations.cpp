#include "sqflab/representations.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace sqflab {

namespace {

double max_abs_real(const std::vector<cplx>& zs) {
    double m = 0.0;
    for (const auto& z : zs) m = std::max(m, std::abs(z.real()));
    return m;
}

}  // namespace

ReprReport reconstruct_gauss_cauchy(const ScalarFn& u, double omega,
                                    const std::vector<cplx>& z_points, double half_width,
                                    std::size_t n_per_line) {
    for (const auto& z : z_points)
        if (!(std::abs(z.imag()) < omega))
            throw std::invalid_argument("reconstruct_gauss_cauchy: point outside the strip");
    if (half_width == 0.0) half_width = 12.0 + max_abs_real(z_points);
    if (n_per_line == 0)
        n_per_line = static_cast<std::size_t>(std::ceil(2.0 * half_width / 0.02)) + 1;
    const Contour c = make_strip_contour(omega, half_width, n_per_line);

    ReprReport rep;
    rep.method = "gauss-cauchy";
    rep.points = z_points;
    for (const auto& z : z_points) {
        const cplx v = c.integrate([&](cplx w) {
                           const cplx d = w - z;
                           return u(w) * std::exp(-d * d) / d;
                       }) /
                       (2.0 * M_PI * iunit);
        rep.reconstructed.push_back(v);
        rep.reference.push_back(u(z));
        rep.max_abs_error = std::max(rep.max_abs_error, std::abs(v - rep.reference.back()));
    }
    return rep;
}

ReprReport reconstruct_poisson(const ScalarFn& u, double omega, const std::vector<cplx>& z_points,
                               double half_width, std::size_t n) {
    for (const auto& z : z_points)
        if (!(std::abs(z.imag()) < omega))
            throw std::invalid_argument("reconstruct_poisson: point outside the strip");
    // sech(pi (z+s) / (2 omega)) tail ~ 2 e^{-pi |s| / (2 omega)}
    if (half_width == 0.0) half_width = 22.0 * omega + max_abs_real(z_points);
    if (n == 0) n = static_cast<std::size_t>(std::ceil(2.0 * half_width / 0.01)) + 1;
    const DiscreteHilbert line = make_lebesgue_line(half_width, n);

    ReprReport rep;
    rep.method = "poisson";
    rep.points = z_points;
    const double a = M_PI / (2.0 * omega);
    for (const auto& z : z_points) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < line.size(); ++j) {
            const double s = line.nodes[j].real();
            const cplx kern = a / std::cosh(a * (z + s));
            acc += line.weights[j] * kern *
                   (u(cplx{-s, omega}) + u(cplx{-s, -omega}));
        }
        const cplx v = acc / (2.0 * M_PI);
        rep.reconstructed.push_back(v);
        rep.reference.push_back(u(z));
        rep.max_abs_error = std::max(rep.max_abs_error, std::abs(v - rep.reference.back()));
    }
    return rep;
}

ReprReport reconstruct_laplace(const ScalarFn& u, const LaplaceOpts& opts,
                               const DiscreteHilbert& haar, const std::vector<cplx>& z_points) {
    if (haar.tag != MeasureTag::mult_haar)
        throw std::invalid_argument("reconstruct_laplace: mult-haar grid required");
    if (!(opts.alpha > 0.0 && opts.beta > 0.0))
        throw std::invalid_argument("reconstruct_laplace: alpha, beta > 0 required");
    const double omega = opts.keyhole_omega;
    if (!(omega > 0.5 * M_PI && omega < M_PI))
        throw std::invalid_argument("reconstruct_laplace: keyhole angle in (pi/2, pi) required");
    const double ab = opts.alpha + opts.beta;
    double T = opts.ray_truncation;
    if (T == 0.0) T = 42.0 / std::abs(std::cos(omega));
    // Keyhole radius fixed at 1; the t-dependence is absorbed by the change
    // of variables into u(z / (2t)).
    const Contour key = make_keyhole_contour(omega, 1.0, T, opts.n_per_ray, opts.n_arc);
    const double pow2 = std::pow(2.0, ab);

    // ray-end decay and arc sanity for u
    if (std::exp(T * std::cos(omega)) * std::pow(T, -ab) > 1e-10)
        throw std::domain_error("reconstruct_laplace: ray truncation fails the decay check");
    for (double th : {-omega, -0.5 * omega, 0.0, 0.5 * omega, omega}) {
        const cplx v = u(std::exp(cplx{0.0, th}) / (2.0 * haar.nodes.front().real()));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("reconstruct_laplace: keyhole arc touches a singularity of u");
    }

    ReprReport rep;
    rep.method = "laplace";
    rep.points = z_points;
    rep.multiplier_nodes = haar.nodes;
    rep.multiplier.resize(haar.size());
    double contour_estimate = 0.0;
    for (std::size_t k = 0; k < key.size(); ++k)
        contour_estimate +=
            std::abs(key.dz[k]) * std::exp(key.nodes[k].real()) * std::pow(std::abs(key.nodes[k]), -ab);
    rep.multiplier_bound = pow2 / (2.0 * M_PI) * contour_estimate * opts.sup_u;

    for (std::size_t j = 0; j < haar.size(); ++j) {
        const double t = haar.nodes[j].real();
        const cplx m = key.integrate([&](cplx z) {
                           return u(z / (2.0 * t)) * std::pow(z, -ab) * std::exp(z);
                       }) *
                       pow2 / (2.0 * M_PI * iunit);
        rep.multiplier[j] = m;
        rep.multiplier_sup = std::max(rep.multiplier_sup, std::abs(m));
    }

    for (const auto& z : z_points) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < haar.size(); ++j) {
            const double t = haar.nodes[j].real();
            acc += haar.weights[j] * rep.multiplier[j] * std::pow(t * z, ab) *
                   std::exp(-2.0 * t * z);
        }
        rep.reconstructed.push_back(acc);
        rep.reference.push_back(u(z));
        rep.max_abs_error = std::max(rep.max_abs_error, std::abs(acc - rep.reference.back()));
    }
    return rep;
}

FourierPairReport fourier_pair_check(double omega, const DiscreteHilbert& line,
                                     const std::vector<double>& t_points, double tol) {
    CVector g = sample(line, [omega](cplx s) {
        return (M_PI / omega) / std::cosh(M_PI * s / (2.0 * omega));
    });
    const FourierResult r = discrete_fourier(line, g, t_points, /*inverse=*/true, tol);
    FourierPairReport rep;
    for (std::size_t k = 0; k < t_points.size(); ++k) {
        const double expect = 1.0 / std::cosh(omega * t_points[k]);
        rep.max_error = std::max(rep.max_error, std::abs(r.values[k] - expect));
    }
    rep.pass = r.edge_decay_ok && rep.max_error < tol;
    return rep;
}

namespace {

// a * (1 / b) with one real division; the hot loops below run over N^2 pairs.
inline cplx mul_inv(const cplx& a, const cplx& b) {
    const double d = b.real() * b.real() + b.imag() * b.imag();
    const double re = (a.real() * b.real() + a.imag() * b.imag()) / d;
    const double im = (a.imag() * b.real() - a.real() * b.imag()) / d;
    return {re, im};
}

}  // namespace

SingularCauchyReport singular_cauchy(const HolFn& f, double omega,
                                     const std::vector<cplx>& z_points,
                                     const SingularCauchyOpts& opts) {
    if (!(f.strip_half_height > omega))
        throw std::invalid_argument("singular_cauchy: f must live on a wider strip");
    for (const auto& z : z_points)
        if (!(std::abs(z.imag()) < omega - 1e-12))
            throw std::invalid_argument("singular_cauchy: z outside the open strip");
    const double half_width = opts.half_width;
    const Contour c = make_strip_contour(omega, half_width, opts.n_per_line);
    const std::size_t N = c.size();

    CVector fvals(N);
    for (std::size_t j = 0; j < N; ++j) fvals[j] = f.eval(c.nodes[j]);

    SingularCauchyReport rep;
    // sampled sup of |f| over the closed strip
    for (double s = -omega; s <= omega + 1e-12; s += omega / 4.0)
        for (double r = -half_width; r <= half_width; r += half_width / 200.0)
            rep.f_sup = std::max(rep.f_sup, std::abs(f.eval(cplx{r, s})));

    // Identity residual: full-resolution lambda scan near each z plus a
    // sparse sweep over the central region (the residual varies slowly away
    // from z, and the quadrature degrades toward the truncation edges).
    const cplx itwopinv = cplx{0.0, -1.0} / (2.0 * M_PI);
    const double far_reach = std::min(10.0, half_width / 3.0);
    for (const auto& z : z_points) {
        CVector q(N);
        for (std::size_t j = 0; j < N; ++j) q[j] = mul_inv(fvals[j] * c.dz[j], c.nodes[j] - z);
        for (std::size_t i = 0; i < N; ++i) {
            const cplx lambda = c.nodes[i];
            const double dist = std::abs(lambda.real() - z.real());
            const bool near = dist <= opts.lambda_window;
            const bool far_sample =
                (i % opts.far_stride == 0) && std::abs(lambda.real()) <= far_reach;
            if (!near && !far_sample) continue;
            cplx pv = 0.0;
            for (std::size_t j = 0; j < N; ++j) {
                if (j == i) continue;
                pv += mul_inv(q[j], lambda - c.nodes[j]);
            }
            const cplx rhs = 0.5 * fvals[i] / (lambda - z) + itwopinv * pv;
            const cplx lhs = f.eval(z) / (lambda - z);
            rep.max_identity_residual = std::max(rep.max_identity_residual, std::abs(lhs - rhs));
        }
    }

    // ||T_f|| on the sqrt(weight)-scaled coarse grid by power iteration on
    // T^* T (sigma_max needs far less resolution than the pv identity).
    const Contour cn = make_strip_contour(omega, half_width, opts.norm_n_per_line);
    const std::size_t M = cn.size();
    CVector fn(M);
    std::vector<double> sw(M);
    for (std::size_t j = 0; j < M; ++j) {
        fn[j] = f.eval(cn.nodes[j]);
        sw[j] = std::sqrt(std::abs(cn.dz[j]));
    }
    auto apply = [&](const CVector& h, bool adj) {
        CVector out(M, cplx{});
        if (!adj) {
            CVector hs(M);
            for (std::size_t j = 0; j < M; ++j) hs[j] = fn[j] * cn.dz[j] * (h[j] / sw[j]);
            for (std::size_t i = 0; i < M; ++i) {
                cplx acc = 0.0;
                for (std::size_t j = 0; j < M; ++j) {
                    if (j == i) continue;
                    acc += mul_inv(hs[j], cn.nodes[i] - cn.nodes[j]);
                }
                out[i] = 0.5 * fn[i] * h[i] + itwopinv * sw[i] * acc;
            }
        } else {
            CVector hs(M);
            for (std::size_t i = 0; i < M; ++i) hs[i] = std::conj(itwopinv * sw[i]) * h[i];
            for (std::size_t j = 0; j < M; ++j) {
                cplx acc = 0.0;
                for (std::size_t i = 0; i < M; ++i) {
                    if (i == j) continue;
                    acc += mul_inv(hs[i], std::conj(cn.nodes[i] - cn.nodes[j]));
                }
                out[j] = std::conj(0.5 * fn[j]) * h[j] + std::conj(fn[j] * cn.dz[j]) * acc / sw[j];
            }
        }
        return out;
    };
    CVector v(M);
    for (std::size_t j = 0; j < M; ++j) v[j] = std::exp(-0.01 * std::norm(cn.nodes[j]));
    {
        const double nv = norm2(v);
        for (auto& e : v) e /= nv;
    }
    double sigma = 0.0;
    for (std::size_t it = 0; it < opts.power_iterations; ++it) {
        CVector w = apply(v, false);
        sigma = norm2(w);
        CVector b = apply(w, true);
        const double nb = norm2(b);
        if (nb == 0.0) break;
        for (auto& e : b) e /= nb;
        v = std::move(b);
    }
    rep.tf_norm = sigma;
    rep.norm_ratio = rep.f_sup > 0 ? rep.tf_norm / rep.f_sup : 0.0;
    rep.pass = rep.max_identity_residual < opts.tol;
    return rep;
}

ExponentReport exponent_improvement_check(double alpha, double beta,
                                          const std::vector<cplx>& z_points, double tol) {
    if (alpha < 0.1 || beta < 0.1)
        throw std::domain_error(
            "exponent_improvement_check: endpoint quadrature unstable for alpha or beta < 0.1");
    ExponentReport rep;
    rep.beta_constant = std::beta(alpha + 0.5, beta + 0.5);

    // Isometry of (Tf)(s,t) = (t+s)^{-1/2} f(t+s) over a small dictionary;
    // double integral in logarithmic coordinates.
    const std::vector<ScalarFn> dict = {
        [](cplx u) { return std::exp(-u); },
        [](cplx u) { return u * std::exp(-u); },
        [](cplx u) { return std::exp(-2.0 * u) * (1.0 + u); },
    };
    const double L = 22.0, U = 4.5, h = 0.02;
    const std::size_t n1 = static_cast<std::size_t>((U + L) / h) + 1;
    std::vector<double> expa(n1), wa(n1);
    for (std::size_t i = 0; i < n1; ++i) {
        const double a = -L + h * static_cast<double>(i);
        expa[i] = std::exp(a);
        wa[i] = h * ((i == 0 || i + 1 == n1) ? 0.5 : 1.0);
    }
    for (std::size_t p = 0; p < dict.size(); ++p) {
        for (std::size_t q = p; q < dict.size(); ++q) {
            // <f,g> on (0,inf), Lebesgue, log substitution
            cplx inner = 0.0;
            for (std::size_t i = 0; i < n1; ++i)
                inner += wa[i] * expa[i] * dict[p](expa[i]) * std::conj(dict[q](expa[i]));
            // <Tf, Tg> on the quarter plane
            cplx dbl = 0.0;
            for (std::size_t i = 0; i < n1; ++i) {
                cplx row = 0.0;
                for (std::size_t j = 0; j < n1; ++j) {
                    const double u = expa[i] + expa[j];
                    row += wa[j] * expa[j] * dict[p](u) * std::conj(dict[q](u)) / u;
                }
                dbl += wa[i] * expa[i] * row;
            }
            rep.isometry_defect = std::max(rep.isometry_defect, std::abs(dbl - inner));
        }
    }

    // Convolution identity against the Beta closed form; endpoint-graded
    // nodes s = t sin^2(pi v / 2).
    auto f_exp = [](double a, cplx u, cplx z) {
        return std::pow(u, a - 0.5) * std::pow(z, a) * std::exp(-u * z);
    };
    const std::size_t nv = 4001;
    for (const cplx& z : z_points) {
        for (double t : {0.3, 1.0, 2.7}) {
            cplx conv = 0.0;
            const double hv = 1.0 / static_cast<double>(nv - 1);
            for (std::size_t k = 0; k < nv; ++k) {
                const double v = hv * static_cast<double>(k);
                const double sn = std::sin(0.5 * M_PI * v);
                const double s = t * sn * sn;
                const double ds = t * 0.5 * M_PI * std::sin(M_PI * v);
                if (s <= 0.0 || s >= t) continue;
                conv += ((k == 0 || k + 1 == nv) ? 0.5 : 1.0) * hv * ds *
                        f_exp(alpha, t - s, z) * f_exp(beta, s, z);
            }
            conv /= std::sqrt(t);
            const cplx want = rep.beta_constant * std::pow(t, alpha + beta - 0.5) *
                              std::pow(z, alpha + beta) * std::exp(-t * z);
            rep.convolution_defect = std::max(rep.convolution_defect, std::abs(conv - want));
        }
    }
    rep.pass = rep.isometry_defect < tol && rep.convolution_defect < tol;
    return rep;
}

void write_multiplier_csv(const ReprReport& rep, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_multiplier_csv: cannot open " + path);
    f << "t,re_m,im_m\n";
    f.precision(17);
    for (std::size_t j = 0; j < rep.multiplier.size(); ++j)
        f << rep.multiplier_nodes[j].real() << "," << rep.multiplier[j].real() << ","
          << rep.multiplier[j].imag() << "\n";
}

}  // namespace sqflab
