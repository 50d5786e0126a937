#include "sqflab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "sqflab/frames.hpp"
#include "sqflab/gauss_gamma.hpp"
#include "sqflab/grids.hpp"
#include "sqflab/representations.hpp"
#include "sqflab/sqfun.hpp"
#include "sqflab/strip_calc.hpp"

namespace sqflab {

namespace {

// Deterministic uniform stream independent of the standard library.
struct RandomStream {
    std::uint64_t state;
    explicit RandomStream(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1p-53; }
    double sym() { return 2.0 * unit() - 1.0; }
    cplx centry() { return cplx{sym(), sym()}; }
    CMatrix matrix(std::size_t r, std::size_t c) {
        CMatrix A(r, c);
        for (auto& v : A.a) v = centry();
        return A;
    }
    CVector vec(std::size_t n) {
        CVector v(n);
        for (auto& e : v) e = centry();
        return v;
    }
};

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    std::uint64_t z = master ^ (0x9E3779B97F4A7C15ULL * (salt + 0x2545F4914F6CDD1DULL));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void add_case(SuiteResult& out, std::string name, double value, std::optional<double> expected,
              std::optional<double> tol, bool pass, std::optional<double> se = {}) {
    CaseResult c;
    c.name = std::move(name);
    c.value = value;
    c.expected = expected;
    c.tol = tol;
    c.stderr_value = se;
    c.pass = pass;
    out.cases.push_back(std::move(c));
}

void add_max_case(SuiteResult& out, std::string name, double value, double tol) {
    add_case(out, std::move(name), value, 0.0, tol, value <= tol);
}

HolFn gaussian_fn(double strip, double rate = 1.0) {
    HolFn f;
    f.strip_half_height = strip;
    f.tag = HolFn::Tag::elementary;
    f.eval = [rate](cplx z) { return std::exp(-rate * z * z); };
    return f;
}

StripOperator planted_strip_op(RandomStream& rng, std::size_t n, double omega_max) {
    CVector lam(n);
    for (auto& l : lam) l = cplx{1.2 * rng.sym(), omega_max * rng.sym()};
    CMatrix P(n, n);
    for (;;) {
        P = rng.matrix(n, n) + cplx{2.0} * CMatrix::identity(n);
        const Svd f = jacobi_svd(P);
        if (f.s.back() > 0.25) break;
    }
    return StripOperator::from_matrix(P * CMatrix::diag(lam) * inverse(P));
}

CMatrix random_hermitian(RandomStream& rng, std::size_t n, double scale) {
    CMatrix A = rng.matrix(n, n);
    CMatrix H = cplx{0.5 * scale} * (A + adjoint(A));
    return H;
}

// ---------------------------------------------------------------------------

SuiteResult suite_gamma_cross_norm(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "gamma-cross-norm";
    RandomStream rng(cfg.seed * 7919 + 1);
    double worst_exact = 0.0, worst_z = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t m = 3 + rep % 7, n = 2 + rep % 5;
        FiniteRankOp T;
        double closed = 0.0;
        if (rep % 2 == 0) {
            const CVector g = rng.vec(m), x = rng.vec(n);
            T = rank_one(g, x, NormSpec::hilbert());
            closed = norm2(g) * norm2(x);
        } else {
            T = FiniteRankOp{rng.matrix(n, m), NormSpec::hilbert(), {}};
            double acc = 0.0;  // HS through the singular values, a second route
            for (double s : jacobi_svd(T.matrix).s) acc += s * s;
            closed = std::sqrt(acc);
        }
        const double exact = gamma_norm(T, GammaMethod::hilbert_exact).value;
        worst_exact = std::max(worst_exact,
                               std::abs(exact - closed) / std::max(1.0, closed));
        GaussianSampler sampler{derive_seed(cfg.seed, static_cast<std::uint64_t>(rep))};
        const auto mc = gamma_norm(T, GammaMethod::monte_carlo, sampler, cfg.samples);
        const double z = std::abs(mc.value - closed) / std::max(mc.stderr_value.value(), 1e-300);
        worst_z = std::max(worst_z, z);
    }
    add_max_case(out, "hilbert-exact-vs-closed-form", worst_exact, 1e-12);
    add_max_case(out, "monte-carlo-max-zscore", worst_z, 3.0);
    return out;
}

SuiteResult suite_contraction(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "contraction";
    RandomStream rng(cfg.seed * 6007 + 2);
    GaussianSampler sampler{cfg.seed ^ 0xC0FFEE};

    int fails = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t d = 1 + rep % 6, m = 1 + (rep / 3) % 5;
        CMatrix A = rng.matrix(d, d);
        std::vector<CVector> xs;
        for (std::size_t j = 0; j < d; ++j) xs.push_back(rng.vec(m));
        const auto rep1 = check_contraction_principle(A, xs, NormSpec::hilbert(), sampler);
        if (!rep1.pass || !rep1.exact) ++fails;
    }
    add_case(out, "hilbert-exact-failures", fails, 0.0, 0.0, fails == 0);

    double worst_eq = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t d = 2 + rep % 4;
        const CMatrix Q = jacobi_svd(rng.matrix(d, d)).U;
        std::vector<CVector> xs;
        for (std::size_t j = 0; j < d; ++j) xs.push_back(rng.vec(3));
        const auto r = check_contraction_principle(Q, xs, NormSpec::hilbert(), sampler);
        worst_eq = std::max(worst_eq, std::abs(r.lhs - r.rhs) / std::max(1.0, r.rhs));
    }
    add_max_case(out, "unitary-equality-defect", worst_eq, 1e-12);

    int mc_fails = 0;
    double worst_excess = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = 3;
        CMatrix A = rng.matrix(d, d);
        A = cplx{(0.2 + 0.75 * rng.unit()) / op_norm22(A)} * A;
        std::vector<CVector> xs;
        for (std::size_t j = 0; j < d; ++j) xs.push_back(rng.vec(4));
        GaussianSampler s{derive_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(rep))};
        const auto r = check_contraction_principle(A, xs, NormSpec::lp(4.0), s, cfg.samples);
        if (!r.pass) ++mc_fails;
        worst_excess = std::max(worst_excess,
                                (r.lhs - r.rhs) / std::max(r.stderr_combined, 1e-300));
    }
    add_case(out, "l4-monte-carlo-failures", mc_fails, 0.0, 0.0, mc_fails == 0);
    add_case(out, "l4-worst-excess-sigma", worst_excess, {}, 3.0, worst_excess <= 3.0);
    return out;
}

SuiteResult suite_isometry_decomposition(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "isometry-decomposition";
    RandomStream rng(cfg.seed * 104729 + 3);
    double worst_recon = 0.0, worst_unitary = 0.0, worst_wsum = 0.0, worst_wneg = 0.0;
    bool count_ok = true;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t d = 1 + rep % 6;
        CMatrix A = rng.matrix(d, d);
        const double nrm = op_norm22(A);
        if (nrm > 0.0) A = cplx{(0.05 + 0.95 * rng.unit()) / nrm} * A;
        const IsometryDecomposition dec = contraction_to_isometries(A);
        count_ok = count_ok && dec.terms.size() <= d + 1;
        worst_recon = std::max(worst_recon, fro_norm(dec.reconstruct() - A));
        double wsum = 0.0;
        for (const auto& [w, F] : dec.terms) {
            wsum += w;
            worst_wneg = std::min(worst_wneg, w);
            worst_unitary =
                std::max(worst_unitary, fro_norm(adjoint(F) * F - CMatrix::identity(d)));
        }
        worst_wsum = std::max(worst_wsum, std::abs(wsum - 1.0));
    }
    add_max_case(out, "reconstruction-residual", worst_recon, 1e-10);
    add_max_case(out, "unitarity-defect", worst_unitary, 1e-10);
    add_max_case(out, "weight-sum-defect", worst_wsum, 1e-12);
    add_case(out, "weight-negativity", worst_wneg, 0.0, 1e-14, worst_wneg >= -1e-14);
    add_case(out, "term-count-within-d-plus-1", count_ok ? 1.0 : 0.0, 1.0, {}, count_ok);
    return out;
}

SuiteResult suite_lattice_bracket(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "lattice-bracket";
    RandomStream rng(cfg.seed * 31337 + 4);
    double worst_p2 = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        FiniteRankOp T{rng.matrix(3 + rep % 4, 4 + rep % 5), NormSpec::lp(2.0), {}};
        const double lat = gamma_norm(T, GammaMethod::lattice_exact).value;
        const double hs = fro_norm(T.matrix);
        worst_p2 = std::max(worst_p2, std::abs(lat - hs) / std::max(1.0, hs));
    }
    add_max_case(out, "p2-coincides-with-hs", worst_p2, 1e-12);

    double ratio_min = 1e300, ratio_max = 0.0;
    int inst = 0;
    for (double p : {1.0, 4.0}) {
        for (int rep = 0; rep < 100; ++rep, ++inst) {
            FiniteRankOp T{rng.matrix(3 + rep % 5, 3 + rep % 6), NormSpec::lp(p), {}};
            const double lat = gamma_norm(T, GammaMethod::lattice_exact).value;
            GaussianSampler s{derive_seed(cfg.seed, 2000 + static_cast<std::uint64_t>(inst))};
            const double mc = gamma_norm(T, GammaMethod::monte_carlo, s, 4000).value;
            const double ratio = mc / lat;
            ratio_min = std::min(ratio_min, ratio);
            ratio_max = std::max(ratio_max, ratio);
        }
    }
    add_case(out, "mc-over-lattice-min", ratio_min, {}, {}, ratio_min > 1.0 / 3.0);
    add_case(out, "mc-over-lattice-max", ratio_max, {}, {}, ratio_max < 3.0);
    return out;
}

SuiteResult suite_calculus_laws(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "calculus-laws";
    RandomStream rng(cfg.seed * 48611 + 5);
    double worst_res = 0.0, worst_mult = 0.0, worst_contour = 0.0, worst_agree = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
        const StripOperator A = planted_strip_op(rng, 4, 0.18);
        const HolFn f = gaussian_fn(2.0, 1.0);
        const HolFn g = gaussian_fn(2.0, 2.0);
        worst_mult =
            std::max(worst_mult, check_multiplicative(A, f, g, CalcMethod::elementary).residual);
        worst_res = std::max(
            worst_res,
            check_resolvent_consistency(A, f, cplx{0.4 * rng.sym(), 3.0}, CalcMethod::elementary)
                .residual);
        CalcOpts o1, o2;
        o1.contour.omega_prime = 0.45;
        o2.contour.omega_prime = 1.25;
        worst_contour = std::max(worst_contour,
                                 op_norm22(calculus_apply(f, A, CalcMethod::elementary, o1) -
                                           calculus_apply(f, A, CalcMethod::elementary, o2)));
        HolFn u = make_bounded([](cplx z) { return 1.0 / (4.0 + z * z) + 0.25; }, 1.4);
        worst_agree = std::max(worst_agree, op_norm22(calculus_apply(u, A, CalcMethod::regularized) -
                                                      calculus_apply(u, A, CalcMethod::gauss_cauchy)));
    }
    add_max_case(out, "resolvent-consistency", worst_res, 1e-8);
    add_max_case(out, "multiplicativity", worst_mult, 1e-8);
    add_max_case(out, "contour-independence", worst_contour, 1e-9);
    add_max_case(out, "regularized-vs-gauss-cauchy", worst_agree, 1e-7);
    return out;
}

SuiteResult suite_cauchy_gauss(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "cauchy-gauss";
    std::vector<cplx> zs;
    for (int k = 0; k < 10; ++k) zs.push_back(cplx{-2.2 + 0.5 * k, 0.62 * std::sin(1.9 * k)});
    const auto r1 = reconstruct_gauss_cauchy([](cplx z) { return 1.0 / (4.0 + z * z); }, 1.0, zs);
    const auto r2 = reconstruct_gauss_cauchy([](cplx) { return cplx{1.0}; }, 1.0, zs);
    add_max_case(out, "scalar-reconstruction-rational", r1.max_abs_error, 1e-8);
    add_max_case(out, "scalar-reconstruction-constant", r2.max_abs_error, 1e-8);

    // operator-level factorization: the m,f,g composition against the
    // one-shot gauss-cauchy calculus
    RandomStream rng(cfg.seed * 24097 + 6);
    const StripOperator A = planted_strip_op(rng, 3, 0.15);
    const CVector x = rng.vec(3);
    HolFn u = make_bounded([](cplx z) { return 1.0 / (4.0 + z * z) + 0.3 * z / (9.0 + z * z); },
                           1.4);
    const CMatrix lhsM = calculus_apply(u, A, CalcMethod::gauss_cauchy);
    const CVector lhs = lhsM * x;
    HolFn probe;
    probe.strip_half_height = 1.4;
    probe.tag = HolFn::Tag::bounded;
    probe.eval = [](cplx) { return cplx{1.0}; };
    const Contour c = resolve_contour(probe, A, CalcMethod::gauss_cauchy);
    CVector rhs(x.size(), cplx{});
    const CMatrix I = CMatrix::identity(A.dim());
    for (std::size_t k = 0; k < c.size(); ++k) {
        const CMatrix zIA = cplx{c.nodes[k]} * I - A.A;
        const CMatrix half = expm(cplx{-0.5} * (zIA * zIA));  // g(w, A)
        const CMatrix ffac = lu_solve(lu_factor(zIA), half);  // f(w, A)
        const CVector v = ffac * (half * x);
        const cplx w = c.dz[k] * u.eval(c.nodes[k]);
        for (std::size_t i = 0; i < x.size(); ++i) rhs[i] += w * v[i];
    }
    const cplx scale = cplx{0.0, -1.0} / (2.0 * M_PI);
    double defect = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        defect = std::max(defect, std::abs(scale * rhs[i] - lhs[i]));
    add_max_case(out, "operator-factorization-identity", defect, 1e-9);
    return out;
}

SuiteResult suite_poisson(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "poisson";
    (void)cfg;
    const std::vector<cplx> zs{cplx{0.0}, cplx{0.5}, cplx{0.0, 0.3}, cplx{-1.2, -0.4},
                               cplx{2.0, 0.2}};
    const auto r = reconstruct_poisson([](cplx z) { return 1.0 / (4.0 + z * z); }, 1.0, zs);
    add_max_case(out, "reconstruction-rational", r.max_abs_error, 1e-6);
    const auto r2 = reconstruct_poisson([](cplx z) { return std::exp(cplx{0.0, 0.8} * z); }, 0.7,
                                        {cplx{0.3, 0.1}, cplx{-0.9, -0.3}});
    add_max_case(out, "reconstruction-oscillatory", r2.max_abs_error, 1e-6);

    // pointwise kernel factorization with alpha > omega
    const double w = 1.0, a = 1.6;
    double worst = 0.0;
    for (double s = -25.0; s <= 25.0; s += 0.11) {
        const cplx z{s, 0.4};
        const cplx kern = (M_PI / (2.0 * w)) / std::cosh(M_PI * z / (2.0 * w));
        const cplx f = std::cosh(M_PI * z / (2.0 * a)) / std::cosh(M_PI * z / (2.0 * w));
        const cplx g = (M_PI / (2.0 * w)) / std::cosh(M_PI * z / (2.0 * a));
        worst = std::max(worst, std::abs(kern - f * g));
    }
    add_max_case(out, "kernel-factorization", worst, 1e-10);
    return out;
}

SuiteResult suite_fourier_pair(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "fourier-pair";
    std::vector<double> omegas{0.5, 1.0, 2.0};
    if (cfg.omega != 1.0) omegas = {cfg.omega};
    const double tol = cfg.tol_override.value_or(1e-6);
    for (double omega : omegas) {
        DiscreteHilbert line = make_lebesgue_line(60.0 / omega, 6001);
        std::vector<double> ts;
        for (double t = -3.0; t <= 3.0; t += 0.2) ts.push_back(t);
        const auto rep = fourier_pair_check(omega, line, ts, tol);
        add_max_case(out, "max-error-omega-" + std::to_string(omega).substr(0, 4), rep.max_error,
                     tol);
    }
    return out;
}

SuiteResult suite_laplace(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "laplace";
    DiscreteHilbert haar = make_mult_haar(1e-4, 60.0, 301);
    LaplaceOpts opts;  // alpha = beta = 1
    auto one = [](cplx) { return cplx{1.0}; };
    const auto r1 = reconstruct_laplace(one, opts, haar, {cplx{0.5}, cplx{1.0}, cplx{2.0}});
    double worst_m = 0.0;
    for (const auto& m : r1.multiplier) worst_m = std::max(worst_m, std::abs(m - 4.0));
    add_max_case(out, "constant-multiplier-vs-4", worst_m, 1e-4);
    add_max_case(out, "constant-reconstruction", r1.max_abs_error, 1e-3);
    add_case(out, "constant-multiplier-sup-vs-bound", r1.multiplier_sup, {}, r1.multiplier_bound,
             r1.multiplier_sup <= r1.multiplier_bound * (1.0 + 1e-9));

    LaplaceOpts o2 = opts;
    o2.sup_u = 1.0 / std::sin(M_PI / 3.0);
    auto u = [](cplx z) { return 1.0 / (1.0 + z); };
    const auto r2 = reconstruct_laplace(
        u, o2, haar, {cplx{0.5}, cplx{1.0}, 2.0 * std::exp(cplx{0.0, M_PI / 6.0})});
    add_max_case(out, "rational-reconstruction", r2.max_abs_error, 1e-3);
    add_case(out, "rational-multiplier-sup-vs-bound", r2.multiplier_sup, {}, r2.multiplier_bound,
             r2.multiplier_sup <= r2.multiplier_bound * (1.0 + 1e-9));
    if (!cfg.out_dir.empty()) write_multiplier_csv(r2, cfg.out_dir + "/laplace_multiplier.csv");
    return out;
}

SuiteResult suite_singular_cauchy(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "singular-cauchy";
    const double tol = cfg.tol_override.value_or(1e-3);
    const std::vector<cplx> zs{cplx{0.2, 0.0}, cplx{-1.0, 0.1}, cplx{0.9, -0.1}, cplx{0.0, 0.05},
                               cplx{1.7, 0.0}};
    HolFn one = make_bounded([](cplx) { return cplx{1.0}; }, 2.0);
    HolFn gauss = make_bounded([](cplx z) { return std::exp(-z * z); }, 2.0);
    SingularCauchyOpts opts;
    opts.tol = tol;
    const auto r1 = singular_cauchy(one, 1.0, zs, opts);
    const auto r2 = singular_cauchy(gauss, 1.0, zs, opts);
    add_max_case(out, "identity-residual-constant", r1.max_identity_residual, tol);
    add_max_case(out, "identity-residual-gaussian", r2.max_identity_residual, tol);

    SingularCauchyOpts a = opts, b = opts;
    a.n_per_line = b.n_per_line = 2001;  // identity part not needed here
    a.norm_n_per_line = 1001;
    b.norm_n_per_line = 2001;
    a.tol = b.tol = 1.0;
    for (const auto& [label, f] :
         std::vector<std::pair<std::string, const HolFn*>>{{"constant", &one}, {"gaussian", &gauss}}) {
        const auto ra = singular_cauchy(*f, 1.0, {cplx{0.0}}, a);
        const auto rb = singular_cauchy(*f, 1.0, {cplx{0.0}}, b);
        const double drift = std::abs(ra.norm_ratio - rb.norm_ratio) / ra.norm_ratio;
        add_case(out, "norm-ratio-doubling-drift-" + label, drift, {}, 0.2, drift < 0.2);
    }
    return out;
}

SuiteResult suite_exponent_improvement(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "exponent-improvement";
    const double tol = cfg.tol_override.value_or(1e-6);
    const auto r1 = exponent_improvement_check(0.5, 0.5, {cplx{1.0}}, tol);
    add_max_case(out, "isometry-defect", r1.isometry_defect, tol);
    add_max_case(out, "half-half-convolution-vs-f1", r1.convolution_defect, tol);
    add_case(out, "half-half-beta-constant", r1.beta_constant, 1.0, tol,
             std::abs(r1.beta_constant - 1.0) < tol);

    const auto r2 = exponent_improvement_check(1.0, 0.5, {cplx{1.0}, cplx{0.8, 0.3}}, tol);
    add_max_case(out, "one-half-convolution-defect", r2.convolution_defect, tol);
    add_case(out, "one-half-beta-constant", r2.beta_constant, 2.0 / 3.0, tol,
             std::abs(r2.beta_constant - 2.0 / 3.0) < tol && r2.pass);
    return out;
}

SuiteResult suite_sqfun_closed_forms(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "sqfun-closed-forms";
    RandomStream rng(cfg.seed * 11213 + 7);
    const NormSpec h = NormSpec::hilbert();

    double worst_shift = 0.0;
    {
        DiscreteHilbert line = make_lebesgue_line(16.0, 1601);
        KernelFn k = shift_kernel(gaussian_fn(1.0), line);
        for (double a : {0.0, -1.5, 2.0}) {
            const StripOperator A = StripOperator::from_matrix(CMatrix::diag({a}));
            const SqfOutput S = sqfun_matrix(k, A, {cplx{1.0}}, SqfSide::primal, h);
            worst_shift = std::max(worst_shift,
                                   std::abs(sqfun_norm(S, GammaMethod::hilbert_exact).value -
                                            std::pow(0.5 * M_PI, 0.25)));
        }
    }
    add_max_case(out, "shift-gaussian-value", worst_shift, 1e-6);

    double worst_orbit = 0.0;
    for (double omega : {0.5, 1.0}) {
        DiscreteHilbert line = make_lebesgue_line(45.0 / omega, 4001);
        KernelFn k = group_orbit_kernel(omega, line);
        const CMatrix A = random_hermitian(rng, 2, 0.5);
        const CVector x = rng.vec(2);
        const SqfOutput S =
            sqfun_matrix(k, StripOperator::from_matrix(A), x, SqfSide::primal, h);
        worst_orbit = std::max(worst_orbit,
                               std::abs(sqfun_norm(S, GammaMethod::hilbert_exact).value -
                                        std::sqrt(2.0 / omega) * norm2(x)));
    }
    add_max_case(out, "group-orbit-value", worst_orbit, 1e-6);

    double worst_res = 0.0;
    for (double omega : {0.5, 1.0}) {
        DiscreteHilbert grid = make_boundary_strip_sinh(omega, 20.0, 9001);
        KernelFn k = resolvent_boundary_kernel(grid);
        const CMatrix A = CMatrix::diag({0.3, -0.8});
        const CVector x = rng.vec(2);
        const SqfOutput S =
            sqfun_matrix(k, StripOperator::from_matrix(A), x, SqfSide::primal, h);
        worst_res = std::max(worst_res, std::abs(sqfun_norm(S, GammaMethod::hilbert_exact).value -
                                                 std::sqrt(2.0 * M_PI / omega) * norm2(x)));
    }
    add_max_case(out, "boundary-resolvent-value", worst_res, 1e-6);
    return out;
}

SuiteResult suite_equivalences(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "equivalences";
    RandomStream rng(cfg.seed * 20011 + 8);
    const NormSpec h = NormSpec::hilbert();

    {
        const double omega = 1.0;
        HolFn psi;
        psi.strip_half_height = 0.8;
        psi.tag = HolFn::Tag::elementary;
        psi.eval = [omega](cplx z) { return (M_PI / omega) / std::cosh(M_PI * z / (2.0 * omega)); };
        DiscreteHilbert sline = make_lebesgue_line(30.0, 3001);
        DiscreteHilbert oline = make_lebesgue_line(42.0, 3001);
        const CMatrix A = random_hermitian(rng, 2, 0.4);
        const CVector x = rng.vec(2);
        const auto rep = check_fourier_equivalence(shift_kernel(psi, sline),
                                                   group_orbit_kernel(omega, oline),
                                                   StripOperator::from_matrix(A), x);
        add_max_case(out, "fourier-cosh-pair-defect", rep.defect, 1e-5);
    }

    {
        const StripOperator A = planted_strip_op(rng, 2, 0.1);
        DiscreteHilbert line = make_lebesgue_line(10.0, 161);
        KernelFn k = shift_kernel(gaussian_fn(0.9), line);
        const CVector x = rng.vec(2);
        DiscreteHilbert sub = make_lebesgue_line(5.0, 41);
        CMatrix T(line.size(), sub.size());
        for (auto& v : T.a) v = 0.4 * rng.centry();
        const auto rep = check_subordination(k, A, x, T, sub, h);
        add_max_case(out, "subordination-column-identity", rep.max_column_residual, 1e-9);
        add_case(out, "subordination-norm-ratio", rep.norm_ratio, {}, rep.norm_T,
                 rep.norm_ratio <= rep.norm_T * (1.0 + 1e-9) + 1e-9);
    }

    {
        const double omega = 1.0;
        DiscreteHilbert line = make_lebesgue_line(40.0, 2001);
        KernelFn g = group_orbit_kernel(omega, line);
        KernelFn f = custom_kernel(
            [omega](cplx t, cplx z) {
                return 0.5 * omega * std::exp(cplx{0.0, 1.0} * t * z) / std::cosh(omega * t);
            },
            omega, line, "conjugate-orbit");
        const CMatrix A = random_hermitian(rng, 2, 0.5);
        const CVector x = rng.vec(2);
        CVector xc(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) xc[i] = std::conj(x[i]);
        const auto rep = check_pairing_identity(f, g, StripOperator::from_matrix(A), x, xc);
        add_max_case(out, "pairing-identity-residual", rep.residual, 1e-8);
        add_case(out, "pairing-norm-recovery", rep.norm_recovery_residual, 0.0, 1e-6,
                 rep.contracted_is_one && rep.norm_recovery_residual < 1e-6 * norm2(x) * norm2(x));
    }

    {
        auto phi = [](cplx z) { return std::sqrt(z) * std::exp(-z); };
        DiscreteHilbert haar = make_mult_haar(1e-8, 2e3, 401);
        const CMatrix S = CMatrix::diag({1.0, 3.0});
        const CVector x{cplx{1.0}, cplx{1.0}};
        const auto r = mcintosh_reconstruct(phi, phi, 1.2, S, x, haar);
        add_case(out, "mcintosh-normalizer", r.constant, 0.5, 1e-6,
                 std::abs(r.constant - 0.5) < 1e-6);
        double defect = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            defect = std::max(defect, std::abs(r.reconstructed[i] - 0.5 * x[i]));
        add_max_case(out, "mcintosh-reconstruction", defect, 1e-6);
    }
    return out;
}

SuiteResult suite_frames(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "frames";
    RandomStream rng(cfg.seed * 37199 + 9);

    double worst_hs = 0.0, worst_sup_excess = -1e300;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rep % 4;
        const CMatrix T = rng.matrix(n, n);
        const auto cert = l1_bound_operator_hs(T);
        worst_hs = std::max(worst_hs, std::abs(cert.bound - fro_norm(T)));
        for (int s = 0; s < 100; ++s) {
            CVector f = rng.vec(n);
            const double nf = norm2(f);
            for (auto& v : f) v /= nf;
            worst_sup_excess = std::max(worst_sup_excess, cert.coefficient_sum(T, f) - cert.bound);
        }
    }
    add_max_case(out, "hs-l1-bound-vs-tau", worst_hs, 1e-10);
    add_case(out, "hs-sampled-sup-excess", worst_sup_excess, 0.0, 1e-9,
             worst_sup_excess <= 1e-9);

    const GaborFrame frame = gabor_frame_build({});
    add_max_case(out, "gabor-partition-residual", frame.partition_residual(-12.0, 12.0), 1e-12);

    auto g = [](cplx t) { return std::exp(-t * t); };
    auto dg = [](cplx t) { return -2.0 * t * std::exp(-t * t); };
    auto d2g = [](cplx t) { return (4.0 * t * t - 2.0) * std::exp(-t * t); };
    const double base = frame.coefficient_sum(g, dg, d2g);
    GaborParams big;
    big.translates = 60;
    big.max_frequency = 64;
    const double refined = gabor_frame_build(big).coefficient_sum(g, dg, d2g);
    const double drift = std::abs(refined - base) / base;
    add_max_case(out, "gabor-coefficient-sum-drift", drift, 0.01);

    DiscreteHilbert line = make_lebesgue_line(25.0, 2001);
    const auto c1 = w12_control_constant(frame, line);
    GaborParams ref2;
    ref2.translates = 60;
    ref2.max_frequency = 64;
    ref2.window_nodes = 1601;
    DiscreteHilbert line2 = make_lebesgue_line(25.0, 4001);
    const auto c2 = w12_control_constant(gabor_frame_build(ref2), line2);
    const double cdrift = std::abs(c2.constant - c1.constant) / c1.constant;
    add_case(out, "w12-ratio-constant", c1.constant, {}, {}, c1.constant > 0.0);
    add_max_case(out, "w12-ratio-refinement-drift", cdrift, 0.2);
    return out;
}

SuiteResult suite_l1_sqfe(const SuiteConfig& cfg) {
    SuiteResult out;
    out.suite = "l1-sqfe";
    RandomStream rng(cfg.seed * 92867 + 10);
    const NormSpec h = NormSpec::hilbert();
    DiscreteHilbert line = make_lebesgue_line(18.0, 1201);

    double worst_margin = -1e300;
    int idx = 0;
    for (double rate : {1.0, 2.0}) {
        HolFn psi = gaussian_fn(1.0, rate);
        const double b = l1_bound_shift_range(psi, 0.5, line);
        KernelFn k = shift_kernel(psi, line);
        for (int rep = 0; rep < 3; ++rep, ++idx) {
            const CMatrix A = random_hermitian(rng, 2 + rep % 2, 0.5);
            const CVector x = rng.vec(A.rows);
            const SqfOutput S =
                sqfun_matrix(k, StripOperator::from_matrix(A), x, SqfSide::primal, h);
            const double nrm = sqfun_norm(S, GammaMethod::hilbert_exact).value;
            // pure inequality: nrm <= 2 b ||x||
            worst_margin = std::max(worst_margin, nrm - 2.0 * b * norm2(x));
        }
    }
    add_case(out, "sqfe-minus-2b-norm", worst_margin, {}, 0.0, worst_margin <= 0.0);
    return out;
}

using SuiteFn = SuiteResult (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, std::pair<SuiteFn, std::string>>>& registry() {
    static const std::vector<std::pair<std::string, std::pair<SuiteFn, std::string>>> reg = {
        {"gamma-cross-norm",
         {suite_gamma_cross_norm,
          "gamma-norms of rank-one and finite-rank operators against closed forms, plus the "
          "Monte Carlo estimator"}},
        {"contraction",
         {suite_contraction,
          "Gaussian-sum contraction principle: exact Hilbert form and Monte Carlo l4 form"}},
        {"isometry-decomposition",
         {suite_isometry_decomposition,
          "convex decompositions of contractions into unitaries: reconstruction, unitarity, "
          "weights"}},
        {"lattice-bracket",
         {suite_lattice_bracket,
          "square-bracket lattice norms: p=2 coincidence and the Monte Carlo equivalence band"}},
        {"calculus-laws",
         {suite_calculus_laws,
          "functional calculus laws: multiplicativity, resolvent consistency, contour "
          "independence, method agreement"}},
        {"cauchy-gauss",
         {suite_cauchy_gauss,
          "Gaussian-regularized Cauchy reconstruction on strips, scalar and operator level"}},
        {"poisson",
         {suite_poisson, "Poisson boundary reconstruction on strips with kernel factorization"}},
        {"fourier-pair",
         {suite_fourier_pair, "sech/cosh Fourier transform pair across weight parameters"}},
        {"laplace",
         {suite_laplace,
          "inverse-Laplace multiplier representation over keyhole contours with sup bound"}},
        {"singular-cauchy",
         {suite_singular_cauchy,
          "principal-value singular kernel: pointwise identity and operator norm stability"}},
        {"exponent-improvement",
         {suite_exponent_improvement,
          "the (t+s)^(-1/2) substitution isometry and the Beta-function convolution identity"}},
        {"sqfun-closed-forms",
         {suite_sqfun_closed_forms,
          "square-function norms against closed forms: shift, group orbit, boundary resolvent"}},
        {"equivalences",
         {suite_equivalences,
          "Fourier/subordination equivalences, the pairing identity, and the reconstruction "
          "formula"}},
        {"frames",
         {suite_frames,
          "frame bounds, the Hilbert-Schmidt l1 certificate, and the bump-window Gabor frame"}},
        {"l1-sqfe",
         {suite_l1_sqfe,
          "square-function estimates dominated by twice the computed frame bound"}},
    };
    return reg;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, entry] : registry()) names.push_back(name);
    return names;
}

std::string suite_description(const std::string& name) {
    for (const auto& [n, entry] : registry())
        if (n == name) return entry.second;
    throw std::invalid_argument("unknown suite: " + name);
}

SuiteResult run_suite(const SuiteConfig& config) {
    if (config.suite == "all") {
        SuiteResult agg;
        agg.suite = "all";
        agg.seed = config.seed;
        agg.pass = true;
        for (const auto& [name, entry] : registry()) {
            SuiteConfig sub = config;
            sub.suite = name;
            SuiteResult r = entry.first(sub);
            for (auto& c : r.cases) {
                c.name = name + "/" + c.name;
                agg.pass = agg.pass && c.pass;
                agg.cases.push_back(std::move(c));
            }
        }
        std::stable_sort(agg.cases.begin(), agg.cases.end(),
                         [](const CaseResult& a, const CaseResult& b) { return a.name < b.name; });
        return agg;
    }
    for (const auto& [name, entry] : registry()) {
        if (name != config.suite) continue;
        SuiteResult r = entry.first(config);
        r.seed = config.seed;
        std::stable_sort(r.cases.begin(), r.cases.end(),
                         [](const CaseResult& a, const CaseResult& b) { return a.name < b.name; });
        r.pass = true;
        for (const auto& c : r.cases) r.pass = r.pass && c.pass;
        return r;
    }
    throw std::invalid_argument("unknown suite: " + config.suite);
}

std::string suite_result_to_json(const SuiteResult& result, const std::string& timestamp) {
    nlohmann::ordered_json j;
    j["suite"] = result.suite;
    j["seed"] = result.seed;
    if (!timestamp.empty()) j["generated_at"] = timestamp;
    j["pass"] = result.pass;
    j["cases"] = nlohmann::ordered_json::array();
    for (const auto& c : result.cases) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["value"] = c.value;
        if (c.expected) cj["expected"] = *c.expected;
        if (c.tol) cj["tol"] = *c.tol;
        if (c.stderr_value) cj["stderr"] = *c.stderr_value;
        cj["pass"] = c.pass;
        j["cases"].push_back(std::move(cj));
    }
    return j.dump(2) + "\n";
}

}  // namespace sqflab
