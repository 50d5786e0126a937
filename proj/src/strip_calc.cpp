#include "sqflab/strip_calc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqflab {

HolFn make_bounded(ScalarFn f, double strip_half_height) {
    return HolFn{std::move(f), strip_half_height, HolFn::Tag::bounded};
}

HolFn make_unchecked(ScalarFn f, double strip_half_height) {
    return HolFn{std::move(f), strip_half_height, HolFn::Tag::unchecked};
}

StripOperator StripOperator::from_matrix(const CMatrix& A, double resolvent_margin) {
    if (!A.square()) throw std::invalid_argument("StripOperator: square matrix required");
    if (!all_finite(A)) throw std::invalid_argument("StripOperator: entries must be finite");
    StripOperator op;
    op.A = A;
    op.resolvent_margin = resolvent_margin;
    op.spectrum = eigenvalues(A);
    for (const auto& l : op.spectrum) op.omega0 = std::max(op.omega0, std::abs(l.imag()));
    return op;
}

namespace {

double spectral_real_radius(const StripOperator& A) {
    double r = 0.0;
    for (const auto& l : A.spectrum) r = std::max(r, std::abs(l.real()));
    return r;
}

Contour build_contour(const StripOperator& A, double strip_half_height, const ContourOpts& in,
                      double min_half_width) {
    double omega = in.omega_prime;
    if (omega == 0.0) omega = A.omega0 + 0.5 * (strip_half_height - A.omega0);
    if (!(omega > A.omega0 + A.resolvent_margin))
        throw std::domain_error("calculus_apply: contour too close to spectrum");
    if (!(omega < strip_half_height))
        throw std::domain_error("calculus_apply: contour leaves the function's strip");
    double T = in.half_width;
    if (T == 0.0) T = min_half_width + spectral_real_radius(A);
    std::size_t n = in.n_per_line;
    if (n == 0) {
        const double gap = omega - A.omega0;
        const double h = std::min(0.05, gap / 5.0);
        n = static_cast<std::size_t>(std::ceil(2.0 * T / h)) + 1;
        n = std::min<std::size_t>(n, 200001);
    }
    return make_strip_contour(omega, T, n);
}

CMatrix contour_calculus(const StripOperator& A, const Contour& c, const ScalarFn& f) {
    const std::size_t n = A.dim();
    CMatrix acc(n, n);
    const CMatrix I = CMatrix::identity(n);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const cplx z = c.nodes[k];
        const cplx w = c.dz[k] * f(z);
        if (w == cplx{}) continue;
        CMatrix zIA = cplx{z} * I - A.A;
        const CMatrix R = inverse(zIA);
        for (std::size_t i = 0; i < acc.a.size(); ++i) acc.a[i] += w * R.a[i];
    }
    return cplx{1.0 / (2.0 * M_PI)} * (cplx{0.0, -1.0} * acc);
}

CMatrix gauss_cauchy_calculus(const StripOperator& A, const Contour& c, const ScalarFn& f) {
    const std::size_t n = A.dim();
    CMatrix acc(n, n);
    const CMatrix I = CMatrix::identity(n);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const cplx z = c.nodes[k];
        const cplx w = c.dz[k] * f(z);
        if (w == cplx{}) continue;
        CMatrix zIA = cplx{z} * I - A.A;
        const CMatrix E = expm(cplx{-1.0} * (zIA * zIA));
        const CMatrix R = lu_solve(lu_factor(zIA), E);
        for (std::size_t i = 0; i < acc.a.size(); ++i) acc.a[i] += w * R.a[i];
    }
    return cplx{1.0 / (2.0 * M_PI)} * (cplx{0.0, -1.0} * acc);
}

}  // namespace

Contour resolve_contour(const HolFn& f, const StripOperator& A, CalcMethod method,
                        const CalcOpts& opts) {
    if (method == CalcMethod::regularized) {
        // |e_n| ~ e^{-r^2/n} on the contour: push the truncation out with n.
        const double Tmin = std::sqrt(40.0 * static_cast<double>(opts.regularizer_n)) + 2.0;
        ContourOpts c = opts.contour;
        if (c.half_width == 0.0) c.half_width = Tmin + spectral_real_radius(A);
        if (c.n_per_line == 0) {
            double omega = c.omega_prime;
            if (omega == 0.0) omega = A.omega0 + 0.5 * (f.strip_half_height - A.omega0);
            const double gap = omega - A.omega0;
            const double h = std::min(0.1, gap / 5.0);
            c.n_per_line = static_cast<std::size_t>(std::ceil(2.0 * c.half_width / h)) + 1;
        }
        return build_contour(A, f.strip_half_height, c, Tmin);
    }
    return build_contour(A, f.strip_half_height, opts.contour, 12.0);
}

CMatrix calculus_apply(const HolFn& f, const StripOperator& A, CalcMethod method,
                       const CalcOpts& opts) {
    if (!f.eval) throw std::invalid_argument("calculus_apply: empty function");
    if (!(f.strip_half_height > A.omega0 + A.resolvent_margin))
        throw std::domain_error("calculus_apply: function strip does not clear the spectrum");
    switch (method) {
        case CalcMethod::elementary: {
            if (f.tag != HolFn::Tag::elementary)
                throw std::invalid_argument("calculus_apply: elementary method needs elementary f");
            const Contour c = resolve_contour(f, A, method, opts);
            return contour_calculus(A, c, f.eval);
        }
        case CalcMethod::regularized: {
            const double n = static_cast<double>(opts.regularizer_n);
            if (!(n > 0)) throw std::invalid_argument("calculus_apply: regularizer index");
            const Contour c = resolve_contour(f, A, method, opts);
            auto en = [n](cplx z) { return std::exp(-z * z / n); };
            const CMatrix enf_A = contour_calculus(A, c, [&](cplx z) { return en(z) * f.eval(z); });
            const CMatrix en_A = contour_calculus(A, c, en);
            return lu_solve(lu_factor(en_A), enf_A);
        }
        case CalcMethod::gauss_cauchy: {
            const Contour c = resolve_contour(f, A, method, opts);
            return gauss_cauchy_calculus(A, c, f.eval);
        }
    }
    throw std::logic_error("calculus_apply: unknown method");
}

std::vector<CVector> resolvent_sweep(const StripOperator& A, const Contour& c, const CVector& x) {
    std::vector<CVector> out(c.size());
    const CMatrix I = CMatrix::identity(A.dim());
    for (std::size_t k = 0; k < c.size(); ++k) {
        CMatrix zIA = cplx{c.nodes[k]} * I - A.A;
        CVector v = lu_solve(lu_factor(zIA), x);
        for (auto& e : v) e *= c.dz[k];
        out[k] = std::move(v);
    }
    return out;
}

std::vector<CVector> gauss_cauchy_sweep(const StripOperator& A, const Contour& c,
                                        const CVector& x) {
    std::vector<CVector> out(c.size());
    const CMatrix I = CMatrix::identity(A.dim());
    for (std::size_t k = 0; k < c.size(); ++k) {
        CMatrix zIA = cplx{c.nodes[k]} * I - A.A;
        const CMatrix E = expm(cplx{-1.0} * (zIA * zIA));
        CVector v = lu_solve(lu_factor(zIA), E * x);
        for (auto& e : v) e *= c.dz[k];
        out[k] = std::move(v);
    }
    return out;
}

LawReport check_multiplicative(const StripOperator& A, const HolFn& f, const HolFn& g,
                               CalcMethod method, const CalcOpts& opts, double tol) {
    HolFn fg;
    fg.strip_half_height = std::min(f.strip_half_height, g.strip_half_height);
    fg.tag = (f.tag == HolFn::Tag::elementary || g.tag == HolFn::Tag::elementary)
                 ? HolFn::Tag::elementary
                 : f.tag;
    const ScalarFn fe = f.eval, ge = g.eval;
    fg.eval = [fe, ge](cplx z) { return fe(z) * ge(z); };
    const CMatrix lhs = calculus_apply(fg, A, method, opts);
    const CMatrix rhs = calculus_apply(f, A, method, opts) * calculus_apply(g, A, method, opts);
    LawReport rep;
    rep.tol = tol;
    rep.residual = op_norm22(lhs - rhs);
    rep.pass = rep.residual < tol;
    return rep;
}

LawReport check_resolvent_consistency(const StripOperator& A, const HolFn& f, cplx lambda,
                                      CalcMethod method, const CalcOpts& opts, double tol) {
    if (!(std::abs(lambda.imag()) > A.omega0 + A.resolvent_margin))
        throw std::domain_error("check_resolvent_consistency: lambda inside the admissible strip");
    HolFn frl;
    frl.strip_half_height = std::min(f.strip_half_height, std::abs(lambda.imag()));
    frl.tag = f.tag;
    const ScalarFn fe = f.eval;
    frl.eval = [fe, lambda](cplx z) { return fe(z) / (lambda - z); };
    const CMatrix lhs = calculus_apply(frl, A, method, opts);
    const CMatrix R = inverse(cplx{lambda} * CMatrix::identity(A.dim()) - A.A);
    const CMatrix rhs = calculus_apply(f, A, method, opts) * R;
    LawReport rep;
    rep.tol = tol;
    rep.residual = op_norm22(lhs - rhs);
    rep.pass = rep.residual < tol;
    return rep;
}

CMatrix sector_calculus(const CMatrix& S, const ScalarFn& f, double sector_angle,
                        const CalcOpts& opts) {
    if (!(sector_angle > 0.0 && sector_angle <= M_PI))
        throw std::invalid_argument("sector_calculus: sector angle in (0, pi] required");
    const CVector ev = eigenvalues(S);
    for (const auto& l : ev) {
        if (l == cplx{} || (l.real() <= 0.0 && std::abs(l.imag()) <= 1e-14 * std::abs(l)))
            throw std::domain_error("sector_calculus: spectrum touches (-inf, 0]");
        if (std::abs(std::arg(l)) >= sector_angle)
            throw std::domain_error("sector_calculus: spectrum outside the sector");
    }
    const CMatrix logS = logm(S);
    const StripOperator B = StripOperator::from_matrix(logS);
    HolFn fexp;
    fexp.strip_half_height = sector_angle;
    fexp.tag = HolFn::Tag::bounded;
    fexp.eval = [f](cplx w) { return f(std::exp(w)); };
    return calculus_apply(fexp, B, CalcMethod::regularized, opts);
}

// ---------------------------------------------------------------------------
// Diagnostics

cplx cauchy_derivative(const ScalarFn& f, cplx w, double rho, int order,
                       std::size_t circle_nodes) {
    // f^(k)(w) = k!/(2 pi i) oint f(z)/(z-w)^{k+1} dz; uniform nodes on the
    // circle make the trapezoid rule spectrally accurate.
    cplx acc = 0.0;
    const double h = 2.0 * M_PI / static_cast<double>(circle_nodes);
    for (std::size_t j = 0; j < circle_nodes; ++j) {
        const double th = h * static_cast<double>(j);
        const cplx e = std::exp(cplx{0.0, th});
        acc += f(w + rho * e) * std::pow(rho * e, -order) ;
    }
    double fact = 1.0;
    for (int k = 2; k <= order; ++k) fact *= k;
    return acc * fact / static_cast<double>(circle_nodes);
}

double w12_profile(const ScalarFn& f, const DiscreteHilbert& line, const std::vector<cplx>& z_grid,
                   double rho) {
    double sup = 0.0;
    for (const cplx& z : z_grid) {
        double acc = 0.0;
        for (std::size_t j = 0; j < line.size(); ++j) {
            const cplx t = line.nodes[j] + z;
            const double a0 = std::abs(f(t));
            const double a1 = std::abs(cauchy_derivative(f, t, rho, 1));
            const double a2 = std::abs(cauchy_derivative(f, t, rho, 2));
            acc += line.weights[j] * (a0 + a1 + a2);
        }
        sup = std::max(sup, acc);
    }
    return sup;
}

ElementaryDiagnostics elementary_diagnostics(const ScalarFn& f, double omega,
                                             const DiagOpts& opts) {
    if (!(omega > 0.0)) throw std::invalid_argument("elementary_diagnostics: omega > 0 required");
    ElementaryDiagnostics out;
    const double alpha = opts.height_fraction * omega;
    const double T = opts.truncation;

    auto line_integral = [&](double s, double trunc) {
        const std::size_t n =
            static_cast<std::size_t>(2.0 * trunc * static_cast<double>(opts.nodes_per_unit)) + 1;
        const double h = 2.0 * trunc / static_cast<double>(n - 1);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double r = -trunc + h * static_cast<double>(j);
            const double v = std::abs(f(cplx{r, s}));
            acc += ((j == 0 || j + 1 == n) ? 0.5 : 1.0) * h * v;
        }
        return acc;
    };

    out.tails_flagged = false;
    for (std::size_t k = 0; k < opts.heights; ++k) {
        const double s =
            (opts.heights == 1)
                ? 0.0
                : -alpha + 2.0 * alpha * static_cast<double>(k) / static_cast<double>(opts.heights - 1);
        const double v1 = line_integral(s, T);
        const double v2 = line_integral(s, 2.0 * T);
        out.heights.push_back(s);
        out.line_integrals.push_back(v2);
        out.sup_line_integral = std::max(out.sup_line_integral, v2);
        if (std::abs(v2 - v1) > 0.01 * std::max(v1, 1e-300)) out.tails_flagged = true;
    }

    {
        const Contour c = make_strip_contour(alpha, 2.0 * T,
                                             static_cast<std::size_t>(2.0 * T * opts.nodes_per_unit));
        out.closed_contour_residual = std::abs(c.integrate(f));
    }

    {
        const double inner = opts.inner_fraction * omega;
        const double rho = 0.5 * (omega - inner);
        std::vector<cplx> zg;
        for (std::size_t k = 0; k < opts.z_grid; ++k) {
            const double frac =
                (opts.z_grid == 1)
                    ? 0.0
                    : -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(opts.z_grid - 1);
            zg.push_back(cplx{0.3 * frac, inner * frac});
        }
        const std::size_t n_w12 =
            std::max<std::size_t>(9, static_cast<std::size_t>(T * opts.w12_nodes_per_unit) | 1u);
        const DiscreteHilbert line = make_lebesgue_line(T, n_w12);
        out.w12_profile = w12_profile(f, line, zg, rho);
    }

    out.is_elementary = !out.tails_flagged;
    return out;
}

HolFn make_elementary(ScalarFn f, double strip_half_height, const DiagOpts& opts) {
    const ElementaryDiagnostics d = elementary_diagnostics(f, strip_half_height, opts);
    if (!d.is_elementary)
        throw std::domain_error("make_elementary: line integrals unstable under truncation doubling");
    return HolFn{std::move(f), strip_half_height, HolFn::Tag::elementary};
}

}  // namespace sqflab
