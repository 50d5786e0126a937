#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sqflab/gauss_gamma.hpp"

using namespace sqflab;

namespace {

CVector random_cvector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVector v(n);
    for (auto& x : v) x = cplx{u(rng), u(rng)};
    return v;
}

CMatrix random_cmatrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix A(r, c);
    for (auto& x : A.a) x = cplx{u(rng), u(rng)};
    return A;
}

}  // namespace

TEST_CASE("gaussian sampler: normalization and reproducibility") {
    GaussianSampler s{42};
    // E|gamma|^2 = 1 under the unit-variance convention
    double acc = 0.0;
    const std::size_t N = 200000;
    for (std::size_t i = 0; i < N; ++i) acc += std::norm(s.gamma(i, 0));
    CHECK(std::abs(acc / N - 1.0) < 0.01);
    // streams depend only on (seed, sample, index)
    GaussianSampler t{42};
    CHECK(s.gamma(17, 3) == t.gamma(17, 3));
    GaussianSampler u{43};
    CHECK(s.gamma(17, 3) != u.gamma(17, 3));
}

TEST_CASE("gamma_norm: cross-norm on rank-one operators") {
    std::mt19937_64 rng(1);
    GaussianSampler sampler{7};
    for (int rep = 0; rep < 5; ++rep) {
        CVector g = random_cvector(rng, 6);
        CVector x = random_cvector(rng, 4);
        const double expect = norm2(g) * norm2(x);
        FiniteRankOp T = rank_one(g, x, NormSpec::hilbert());
        CHECK(gamma_norm(T, GammaMethod::hilbert_exact).value ==
              doctest::Approx(expect).epsilon(1e-13));
        CHECK(gamma_norm(T, GammaMethod::lattice_exact).value ==
              doctest::Approx(expect).epsilon(1e-13));
        auto mc = gamma_norm(T, GammaMethod::monte_carlo, sampler, 20000);
        CHECK(std::abs(mc.value - expect) <= 3.0 * mc.stderr_value.value());
    }
    // lattice cross-norm on l1 as well: ||conj(g) (x) x|| = ||g||_2 ||x||_1
    CVector g{1.0, cplx{0.0, 1.0}};
    CVector x{cplx{1.0, 0.0}, cplx{0.0, -2.0}};
    FiniteRankOp T1 = rank_one(g, x, NormSpec::lp(1.0));
    CHECK(gamma_norm(T1, GammaMethod::lattice_exact).value ==
          doctest::Approx(std::sqrt(2.0) * 3.0).epsilon(1e-13));
}

TEST_CASE("gamma_norm: frozen small cases") {
    // identity 2x2, Hilbert codomain -> sqrt(2)
    FiniteRankOp I2{CMatrix::identity(2), NormSpec::hilbert(), {}};
    CHECK(gamma_norm(I2, GammaMethod::hilbert_exact).value ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    // columns (1,0) and (0,1), codomain l1: square bracket is (1,1), norm 2
    FiniteRankOp E{CMatrix::identity(2), NormSpec::lp(1.0), {}};
    CHECK(gamma_norm(E, GammaMethod::lattice_exact).value == doctest::Approx(2.0).epsilon(1e-14));

    // method/norm mismatch is an error
    CHECK_THROWS_AS(gamma_norm(E, GammaMethod::hilbert_exact), std::invalid_argument);
}

TEST_CASE("gamma_norm: p=2 lattice coincides with Hilbert-Schmidt") {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 20; ++rep) {
        FiniteRankOp T{random_cmatrix(rng, 5, 7), NormSpec::lp(2.0), {}};
        const double lat = gamma_norm(T, GammaMethod::lattice_exact).value;
        CHECK(lat == doctest::Approx(fro_norm(T.matrix)).epsilon(1e-12));
    }
}

TEST_CASE("gamma_norm: monte carlo matches Hilbert-Schmidt within 3 sigma") {
    std::mt19937_64 rng(3);
    for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
        GaussianSampler sampler{seed};
        FiniteRankOp T{random_cmatrix(rng, 4, 9), NormSpec::hilbert(), {}};
        const double hs = fro_norm(T.matrix);
        auto mc = gamma_norm(T, GammaMethod::monte_carlo, sampler, 20000);
        CHECK(std::abs(mc.value - hs) <= 3.0 * mc.stderr_value.value());
    }
}

TEST_CASE("gamma_norm: monotone in the orthonormal system") {
    // MC estimate over the first k basis vectors never exceeds the full one
    // beyond noise; this backs evaluating the supremum at the full grid basis.
    std::mt19937_64 rng(4);
    GaussianSampler sampler{11};
    CMatrix M = random_cmatrix(rng, 4, 10);
    FiniteRankOp full{M, NormSpec::lp(4.0), {}};
    auto full_mc = gamma_norm(full, GammaMethod::monte_carlo, sampler, 20000);
    for (std::size_t k : {2, 5, 8}) {
        CMatrix sub(4, k);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = M(i, j);
        FiniteRankOp part{sub, NormSpec::lp(4.0), {}};
        auto part_mc = gamma_norm(part, GammaMethod::monte_carlo, sampler, 20000);
        const double band =
            3.0 * std::hypot(full_mc.stderr_value.value(), part_mc.stderr_value.value());
        CHECK(part_mc.value <= full_mc.value + band);
    }
}

TEST_CASE("lattice equivalence band for p in {1,4}") {
    std::mt19937_64 rng(5);
    GaussianSampler sampler{13};
    for (double p : {1.0, 4.0}) {
        for (int rep = 0; rep < 10; ++rep) {
            FiniteRankOp T{random_cmatrix(rng, 5, 6), NormSpec::lp(p), {}};
            const double lat = gamma_norm(T, GammaMethod::lattice_exact).value;
            auto mc = gamma_norm(T, GammaMethod::monte_carlo, sampler, 4000);
            const double ratio = mc.value / lat;
            CHECK(ratio > 1.0 / 3.0);
            CHECK(ratio < 3.0);
        }
    }
}

TEST_CASE("contraction principle") {
    std::mt19937_64 rng(6);
    GaussianSampler sampler{17};

    // unitary A, Hilbert norm: equality
    CMatrix Q = jacobi_svd(random_cmatrix(rng, 4, 4)).U;
    std::vector<CVector> xs;
    for (int j = 0; j < 4; ++j) xs.push_back(random_cvector(rng, 3));
    auto req = check_contraction_principle(Q, xs, NormSpec::hilbert(), sampler);
    CHECK(req.exact);
    CHECK(req.pass);
    CHECK(req.lhs == doctest::Approx(req.rhs).epsilon(1e-10));

    // A = 0
    auto rz = check_contraction_principle(CMatrix::zero(4, 4), xs, NormSpec::hilbert(), sampler);
    CHECK(rz.pass);
    CHECK(rz.lhs == doctest::Approx(0.0));

    // exact Hilbert inequality on random instances
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 2 + rep % 4;
        CMatrix A = random_cmatrix(rng, n, n);
        std::vector<CVector> v;
        for (std::size_t j = 0; j < n; ++j) v.push_back(random_cvector(rng, 1 + rep % 5));
        auto r = check_contraction_principle(A, v, NormSpec::hilbert(), sampler);
        CHECK(r.exact);
        CHECK(r.pass);
    }

    // Monte Carlo form in l4 on a random contraction
    CMatrix A = random_cmatrix(rng, 3, 3);
    A = cplx{0.9 / op_norm22(A)} * A;
    std::vector<CVector> v3;
    for (int j = 0; j < 3; ++j) v3.push_back(random_cvector(rng, 4));
    auto rmc = check_contraction_principle(A, v3, NormSpec::lp(4.0), sampler, 20000);
    CHECK_FALSE(rmc.exact);
    CHECK(rmc.pass);

    CHECK_THROWS_AS(check_contraction_principle(A, xs, NormSpec::hilbert(), sampler),
                    std::invalid_argument);
}

TEST_CASE("ideal property") {
    std::mt19937_64 rng(7);
    GaussianSampler sampler{19};

    // L = R = I: equality (Hilbert)
    FiniteRankOp T{random_cmatrix(rng, 4, 5), NormSpec::hilbert(), {}};
    auto r1 = check_ideal_property(CMatrix::identity(4), NormSpec::hilbert(), T,
                                   CMatrix::identity(5), sampler);
    CHECK(r1.exact);
    CHECK(r1.pass);
    CHECK(r1.lhs == doctest::Approx(r1.rhs).epsilon(1e-12));

    // HS submultiplicativity, exact, random L and R
    for (int rep = 0; rep < 20; ++rep) {
        CMatrix L = random_cmatrix(rng, 3, 4), R = random_cmatrix(rng, 5, 6);
        auto r = check_ideal_property(L, NormSpec::hilbert(), T, R, sampler);
        CHECK(r.exact);
        CHECK(r.pass);
    }

    // l3 codomain with unitary R and diagonal-phase L (norm 1 in every l^p)
    FiniteRankOp T3{random_cmatrix(rng, 4, 5), NormSpec::lp(3.0), {}};
    CMatrix L = CMatrix::diag({std::exp(cplx{0.0, 0.3}), std::exp(cplx{0.0, -1.0}),
                               std::exp(cplx{0.0, 2.2}), std::exp(cplx{0.0, 0.9})});
    CMatrix R = jacobi_svd(random_cmatrix(rng, 5, 5)).U;
    auto r3 = check_ideal_property(L, NormSpec::lp(3.0), T3, R, sampler, 20000);
    CHECK_FALSE(r3.exact);
    CHECK(r3.pass);

    CHECK_THROWS_AS(
        check_ideal_property(random_cmatrix(rng, 3, 3), NormSpec::hilbert(), T, R, sampler),
        std::invalid_argument);
}

TEST_CASE("trace pairing") {
    std::mt19937_64 rng(8);
    // rank-one pairing: U = conj(e) (x) x, V = conj(e) (x) x' -> <x, x'> bilinear
    CVector e{1.0, 0.0, 0.0};
    CVector x = random_cvector(rng, 4), xp = random_cvector(rng, 4);
    FiniteRankOp U = rank_one(e, x, NormSpec::hilbert());
    FiniteRankOp V = rank_one(e, xp, NormSpec::hilbert());
    cplx expect = 0.0;
    for (int i = 0; i < 4; ++i) expect += x[i] * xp[i];
    CHECK(std::abs(trace_pairing(U, V) - expect) < 1e-13);

    // sampled functions: tr(V'U) = sum_j w_j <f(t_j), g(t_j)> (bilinear)
    DiscreteHilbert grid = make_lebesgue_line(8.0, 400);
    std::vector<CVector> fv(grid.size()), gv(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = grid.nodes[j].real();
        fv[j] = {std::exp(-t * t) * cplx{1.0, 0.2}, cplx{std::sin(t), 0.0}};
        gv[j] = {cplx{std::cos(t), -0.1}, std::exp(-0.5 * t * t)};
    }
    FiniteRankOp Uf = make_sampled_operator(grid, fv, NormSpec::hilbert());
    FiniteRankOp Vg = make_sampled_operator(grid, gv, NormSpec::hilbert());
    cplx direct = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        direct += grid.weights[j] * (fv[j][0] * gv[j][0] + fv[j][1] * gv[j][1]);
    CHECK(std::abs(trace_pairing(Uf, Vg) - direct) < 1e-12);

    // |tr(V'U)| <= ||U||_HS ||V||_HS on random instances
    for (int rep = 0; rep < 30; ++rep) {
        FiniteRankOp A{random_cmatrix(rng, 3, 6), NormSpec::hilbert(), {}};
        FiniteRankOp B{random_cmatrix(rng, 3, 6), NormSpec::hilbert(), {}};
        CHECK(std::abs(trace_pairing(A, B)) <=
              fro_norm(A.matrix) * fro_norm(B.matrix) * (1.0 + 1e-12));
    }
}

TEST_CASE("nuclear bound") {
    std::mt19937_64 rng(9);
    GaussianSampler sampler{23};

    // single term: equality with the cross-norm
    CVector g = random_cvector(rng, 5), x = random_cvector(rng, 3);
    auto r1 = nuclear_bound({{g, x}}, NormSpec::hilbert());
    CHECK(r1.pass);
    CHECK(r1.gamma_value == doctest::Approx(r1.bound).epsilon(1e-12));

    // two orthogonal rank-ones into Hilbert: sqrt(a^2+b^2) <= a+b
    CVector e1{1.0, 0.0}, e2{0.0, 1.0};
    CVector u1{2.0, 0.0, 0.0}, u2{0.0, 3.0, 0.0};
    auto r2 = nuclear_bound({{e1, u1}, {e2, u2}}, NormSpec::hilbert());
    CHECK(r2.bound == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(r2.gamma_value == doctest::Approx(std::sqrt(13.0)).epsilon(1e-13));
    CHECK(r2.pass);

    // sampled kernel: bound = sum_j w_j ||f(t_j)|| ||g(t_j)|| >= HS value
    DiscreteHilbert grid = make_lebesgue_line(6.0, 200);
    std::vector<std::pair<CVector, CVector>> rep;
    double expect_bound = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = grid.nodes[j].real();
        // f(t_j) in scaled grid coordinates: w_j * (basis vector at node j)
        CVector fj(grid.size(), cplx{});
        fj[j] = grid.weights[j] / std::sqrt(grid.weights[j]);  // sqrt(w_j)
        fj[j] *= std::exp(-t * t);
        CVector xj{std::exp(cplx{0.0, t}), cplx{0.5, 0.0}};
        rep.emplace_back(fj, xj);
        expect_bound += std::sqrt(grid.weights[j]) * std::exp(-t * t) * norm2(xj);
    }
    auto r3 = nuclear_bound(rep, NormSpec::hilbert());
    CHECK(r3.bound == doctest::Approx(expect_bound).epsilon(1e-12));
    CHECK(r3.pass);
    CHECK(r3.gamma_value <= r3.bound);

    CHECK_THROWS_AS(nuclear_bound({}, NormSpec::hilbert()), std::invalid_argument);
}

TEST_CASE("gamma prime norm") {
    std::mt19937_64 rng(10);
    GaussianSampler sampler{29};
    // Hilbert: exact, equals HS
    FiniteRankOp V{random_cmatrix(rng, 4, 6), NormSpec::hilbert(), {}};
    auto r = gamma_prime_norm(V);
    CHECK(r.exact);
    CHECK(r.value == doctest::Approx(fro_norm(V.matrix)).epsilon(1e-14));
    // non-Hilbert: a sampled lower estimate, positive for nonzero V
    FiniteRankOp W{random_cmatrix(rng, 4, 6), NormSpec::lp(3.0), {}};
    auto rw = gamma_prime_norm(W, sampler, 32);
    CHECK_FALSE(rw.exact);
    CHECK(rw.value > 0.0);
}

#include "sqflab/report.hpp"

TEST_CASE("report records serialize to JSON") {
    std::mt19937_64 rng(77);
    GaussianSampler sampler{31};
    FiniteRankOp T{random_cmatrix(rng, 3, 4), NormSpec::hilbert(), {}};
    const auto digest = inputs_digest(T.matrix);
    const auto g = gamma_norm(T, GammaMethod::monte_carlo, sampler, 2000);
    const std::string j1 = report_json(g, digest);
    CHECK(j1.find("\"op\":\"gamma_norm\"") != std::string::npos);
    CHECK(j1.find("inputs-digest") != std::string::npos);
    CHECK(j1.find("stderr") != std::string::npos);

    std::vector<CVector> xs{random_cvector(rng, 2), random_cvector(rng, 2),
                            random_cvector(rng, 2)};
    const auto cr = check_contraction_principle(random_cmatrix(rng, 3, 3), xs,
                                                NormSpec::hilbert(), sampler);
    const std::string j2 = report_json(cr, digest);
    CHECK(j2.find("\"bound\":") != std::string::npos);
    CHECK(j2.find("\"pass\":true") != std::string::npos);

    const auto nr = nuclear_bound({{random_cvector(rng, 3), random_cvector(rng, 2)}},
                                  NormSpec::hilbert());
    const std::string j3 = report_json(nr, digest);
    CHECK(j3.find("nuclear_bound") != std::string::npos);

    // digest is content sensitive
    CMatrix other = T.matrix;
    other(0, 0) += 1.0;
    CHECK(inputs_digest(other) != digest);
}
