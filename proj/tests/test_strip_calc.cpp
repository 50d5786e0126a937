#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sqflab/strip_calc.hpp"

using namespace sqflab;

namespace {

// Diagonalizable strip operator P D P^{-1} with given eigenvalues.
struct Planted {
    StripOperator op;
    CMatrix P, Pinv;
    CVector lambda;
};

Planted planted_operator(std::mt19937_64& rng, const CVector& lambda) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = lambda.size();
    CMatrix P(n, n);
    for (;;) {
        for (auto& v : P.a) v = cplx{u(rng), u(rng)};
        P = P + cplx{2.0} * CMatrix::identity(n);  // keep it well conditioned
        Svd f = jacobi_svd(P);
        if (f.s.back() > 0.2) break;
    }
    Planted out;
    out.P = P;
    out.Pinv = inverse(P);
    out.lambda = lambda;
    out.op = StripOperator::from_matrix(P * CMatrix::diag(lambda) * out.Pinv);
    return out;
}

CMatrix scalar_oracle(const Planted& p, const ScalarFn& f) {
    CVector fv(p.lambda.size());
    for (std::size_t i = 0; i < p.lambda.size(); ++i) fv[i] = f(p.lambda[i]);
    return p.P * CMatrix::diag(fv) * p.Pinv;
}

const ScalarFn gauss2 = [](cplx z) { return std::exp(-z * z); };

}  // namespace

TEST_CASE("strip type certificate from the spectrum") {
    std::mt19937_64 rng(1);
    Planted p = planted_operator(rng, {cplx{0.4, 0.2}, cplx{-1.0, -0.3}, cplx{0.0, 0.1}});
    CHECK(p.op.omega0 == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("calculus_apply: scalar evaluation at zero") {
    // f(z) = e^{-z^2}, A = [0] -> [1]
    StripOperator A = StripOperator::from_matrix(CMatrix::diag({0.0}));
    HolFn f{gauss2, 1.0, HolFn::Tag::elementary};
    const CMatrix r = calculus_apply(f, A, CalcMethod::elementary);
    CHECK(std::abs(r(0, 0) - cplx{1.0}) < 1e-10);
}

TEST_CASE("calculus_apply: elementary method on a rational function") {
    // f(z) = (2i - z)^{-2}, A = diag(0.3, -0.1): diagonal scalar oracle.
    StripOperator A = StripOperator::from_matrix(CMatrix::diag({0.3, -0.1}));
    HolFn f;
    f.strip_half_height = 1.9;
    f.tag = HolFn::Tag::elementary;
    f.eval = [](cplx z) { cplx d = cplx{0.0, 2.0} - z; return 1.0 / (d * d); };
    CalcOpts opts;
    opts.contour.half_width = 2000.0;  // algebraic tails: ~1/(pi T^2)
    const CMatrix r = calculus_apply(f, A, CalcMethod::elementary, opts);
    CHECK(std::abs(r(0, 0) - f.eval(0.3)) < 5e-7);
    CHECK(std::abs(r(1, 1) - f.eval(-0.1)) < 5e-7);
    CHECK(std::abs(r(0, 1)) < 5e-7);

    // elementary method refuses non-elementary tags
    HolFn g = make_bounded([](cplx) { return cplx{1.0}; }, 1.0);
    CHECK_THROWS_AS(calculus_apply(g, A, CalcMethod::elementary), std::invalid_argument);
}

TEST_CASE("calculus_apply: gauss-cauchy reproduces constants") {
    std::mt19937_64 rng(2);
    Planted p = planted_operator(rng, {cplx{0.5, 0.15}, cplx{-0.8, -0.2}, cplx{0.1, 0.0}});
    HolFn one = make_bounded([](cplx) { return cplx{1.0}; }, 1.0);
    const CMatrix r = calculus_apply(one, p.op, CalcMethod::gauss_cauchy);
    CHECK(op_norm22(r - CMatrix::identity(3)) < 1e-8);
}

TEST_CASE("calculus_apply: contour too close to the spectrum is rejected") {
    StripOperator A = StripOperator::from_matrix(CMatrix::diag({cplx{0.0, 0.5}}), 0.05);
    HolFn f{gauss2, 1.0, HolFn::Tag::elementary};
    CalcOpts opts;
    opts.contour.omega_prime = 0.52;  // inside the margin
    CHECK_THROWS_AS(calculus_apply(f, A, CalcMethod::elementary, opts), std::domain_error);
}

TEST_CASE("contour independence") {
    std::mt19937_64 rng(3);
    Planted p = planted_operator(rng, {cplx{0.3, 0.1}, cplx{-0.6, -0.05}});
    HolFn f{gauss2, 2.0, HolFn::Tag::elementary};
    CalcOpts o1, o2;
    o1.contour.omega_prime = 0.5;
    o2.contour.omega_prime = 1.2;
    const CMatrix r1 = calculus_apply(f, p.op, CalcMethod::elementary, o1);
    const CMatrix r2 = calculus_apply(f, p.op, CalcMethod::elementary, o2);
    CHECK(op_norm22(r1 - r2) < 1e-9);

    // gauss-cauchy as well
    HolFn u = make_bounded([](cplx z) { return 1.0 / (4.0 + z * z); }, 1.5);
    const CMatrix g1 = calculus_apply(u, p.op, CalcMethod::gauss_cauchy, o1);
    const CMatrix g2 = calculus_apply(u, p.op, CalcMethod::gauss_cauchy, o2);
    CHECK(op_norm22(g1 - g2) < 1e-9);
}

TEST_CASE("calculus laws: multiplicativity and resolvent consistency") {
    std::mt19937_64 rng(4);
    Planted p = planted_operator(rng, {cplx{0.4, 0.12}, cplx{-0.3, -0.07}, cplx{0.9, 0.02},
                                       cplx{-1.1, -0.15}});
    HolFn f{gauss2, 2.0, HolFn::Tag::elementary};
    HolFn g{[](cplx z) { return std::exp(-2.0 * z * z); }, 2.0, HolFn::Tag::elementary};

    auto mult = check_multiplicative(p.op, f, g, CalcMethod::elementary);
    CHECK(mult.pass);
    CHECK(mult.residual < 1e-8);

    // f = 1: multiplicativity is trivial under gauss-cauchy
    HolFn one = make_bounded([](cplx) { return cplx{1.0}; }, 2.0);
    auto triv = check_multiplicative(p.op, one, g, CalcMethod::gauss_cauchy);
    CHECK(triv.pass);

    auto res = check_resolvent_consistency(p.op, f, cplx{0.7, 3.0}, CalcMethod::elementary);
    CHECK(res.pass);
    CHECK(res.residual < 1e-8);

    // r_lambda through the regularized method against the direct inverse
    const cplx lambda{-0.2, 3.0};
    HolFn rl = make_bounded([lambda](cplx z) { return 1.0 / (lambda - z); }, 2.0);
    const CMatrix via_calc = calculus_apply(rl, p.op, CalcMethod::regularized);
    const CMatrix direct = inverse(cplx{lambda} * CMatrix::identity(4) - p.op.A);
    CHECK(op_norm22(via_calc - direct) < 1e-8);

    CHECK_THROWS_AS(check_resolvent_consistency(p.op, f, cplx{0.0, 0.1}, CalcMethod::elementary),
                    std::domain_error);
}

TEST_CASE("method agreement: regularized vs gauss-cauchy on bounded functions") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 3; ++rep) {
        Planted p = planted_operator(
            rng, {cplx{0.2, 0.1}, cplx{-0.5, -0.2}, cplx{1.0, 0.05}, cplx{-0.9, 0.15}});
        HolFn u = make_bounded([](cplx z) { return 1.0 / (4.0 + z * z) + 0.3; }, 1.4);
        const CMatrix a = calculus_apply(u, p.op, CalcMethod::regularized);
        const CMatrix b = calculus_apply(u, p.op, CalcMethod::gauss_cauchy);
        CHECK(op_norm22(a - b) < 1e-7);
    }
}

TEST_CASE("diagonalizable oracle on random strip operators") {
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 4; ++rep) {
        std::uniform_real_distribution<double> ur(-1.2, 1.2), ui(-0.25, 0.25);
        CVector lam(4);
        for (auto& l : lam) l = cplx{ur(rng), ui(rng)};
        Planted p = planted_operator(rng, lam);
        HolFn f{gauss2, 2.0, HolFn::Tag::elementary};
        const CMatrix got = calculus_apply(f, p.op, CalcMethod::elementary);
        const CMatrix want = scalar_oracle(p, f.eval);
        const double cond = jacobi_svd(p.P).s.front() / jacobi_svd(p.P).s.back();
        CHECK(op_norm22(got - want) < 1e-7 * cond);
    }
}

TEST_CASE("regularizer convergence: e_n f -> f monotonically") {
    // Small spectrum so |e^{-lambda^2/n} - 1| |f| < 1e-6 at n = 1e4.
    std::mt19937_64 rng(7);
    Planted p = planted_operator(rng, {cplx{0.03, 0.01}, cplx{-0.02, -0.015}});
    HolFn u = make_bounded([](cplx z) { return 1.0 / (4.0 + z * z); }, 1.4);
    const CMatrix ref = calculus_apply(u, p.op, CalcMethod::gauss_cauchy);
    double prev = 1e300;
    for (int n : {16, 64, 256, 1024, 10000}) {
        CalcOpts opts;
        opts.regularizer_n = n;
        // (e_n u)(A) without the e_n(A)^{-1} correction: the raw approximant
        HolFn enu;
        enu.strip_half_height = u.strip_half_height;
        enu.tag = HolFn::Tag::elementary;
        const double nn = n;
        const ScalarFn ue = u.eval;
        enu.eval = [nn, ue](cplx z) { return std::exp(-z * z / nn) * ue(z); };
        CalcOpts copts;
        copts.contour.half_width = std::sqrt(40.0 * nn) + 2.0;
        const CMatrix approx = calculus_apply(enu, p.op, CalcMethod::elementary, copts);
        const double err = op_norm22(approx - ref);
        CHECK(err <= prev * (1.0 + 1e-12));
        prev = err;
        if (n == 10000) CHECK(err < 1e-6);
    }
}

TEST_CASE("sector calculus through exp/log") {
    // S = diag(1), f = z/(1+z)^2 -> 1/4
    const CMatrix S1 = CMatrix::diag({1.0});
    const CMatrix r1 = sector_calculus(S1, [](cplx z) { return z / ((1.0 + z) * (1.0 + z)); }, 2.8);
    CHECK(std::abs(r1(0, 0) - cplx{0.25}) < 1e-8);

    // f = 1 -> I
    std::mt19937_64 rng(8);
    Planted p = planted_operator(rng, {cplx{0.9, 0.3}, cplx{2.0, -0.4}});
    // p.op.A has spectrum with positive real part away from the cut
    const CMatrix r2 = sector_calculus(p.op.A, [](cplx) { return cplx{1.0}; }, 1.0);
    CHECK(op_norm22(r2 - CMatrix::identity(2)) < 1e-8);

    // S = diag(2, 5), f = e^{-z} -> diag(e^{-2}, e^{-5})
    const CMatrix S3 = CMatrix::diag({2.0, 5.0});
    const CMatrix r3 = sector_calculus(S3, [](cplx z) { return std::exp(-z); }, 1.3);
    CHECK(std::abs(r3(0, 0) - std::exp(-2.0)) < 1e-8);
    CHECK(std::abs(r3(1, 1) - std::exp(-5.0)) < 1e-8);
    CHECK(std::abs(r3(0, 1)) < 1e-8);

    // spectrum touching the cut is rejected
    CHECK_THROWS_AS(sector_calculus(CMatrix::diag({cplx{-1.0}, cplx{2.0}}),
                                    [](cplx) { return cplx{1.0}; }, 3.0),
                    std::domain_error);
}

TEST_CASE("elementary diagnostics") {
    // Gaussian: integral sqrt(pi) at height 0, vanishing boundary integral
    DiagOpts opts;
    opts.truncation = 30.0;  // plenty for gaussian decay
    ElementaryDiagnostics d = elementary_diagnostics(gauss2, 1.0, opts);
    CHECK(d.is_elementary);
    CHECK_FALSE(d.tails_flagged);
    bool found_zero_height = false;
    for (std::size_t k = 0; k < d.heights.size(); ++k) {
        if (std::abs(d.heights[k]) < 1e-12) {
            found_zero_height = true;
            CHECK(d.line_integrals[k] == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-8));
        }
    }
    CHECK(found_zero_height);
    CHECK(d.closed_contour_residual < 1e-8);
    CHECK(d.w12_profile > 0.0);

    // 1/(2i - z): log-divergent line integrals get flagged
    ElementaryDiagnostics bad =
        elementary_diagnostics([](cplx z) { return 1.0 / (cplx{0.0, 2.0} - z); }, 1.0);
    CHECK_FALSE(bad.is_elementary);
    CHECK(bad.tails_flagged);
    CHECK_THROWS_AS(make_elementary([](cplx z) { return 1.0 / (cplx{0.0, 2.0} - z); }, 1.0),
                    std::domain_error);

    // make_elementary accepts the gaussian
    HolFn f = make_elementary(gauss2, 1.0, opts);
    CHECK(f.tag == HolFn::Tag::elementary);
}

TEST_CASE("cauchy derivatives") {
    // f = e^{-z^2}: f'(w) = -2w f(w), f''(w) = (4w^2 - 2) f(w)
    const cplx w{0.4, 0.2};
    const cplx f1 = cauchy_derivative(gauss2, w, 0.3, 1);
    const cplx f2 = cauchy_derivative(gauss2, w, 0.3, 2);
    CHECK(std::abs(f1 - (-2.0 * w * gauss2(w))) < 1e-12);
    CHECK(std::abs(f2 - ((4.0 * w * w - 2.0) * gauss2(w))) < 1e-12);
}
