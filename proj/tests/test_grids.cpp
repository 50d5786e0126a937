#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sqflab/grids.hpp"

using namespace sqflab;

namespace {

// Straight real segment [-T, T] as an oriented contour (left to right).
Contour real_line_contour(double T, std::size_t n) {
    Contour c;
    c.descriptor = "real-line";
    const double h = 2.0 * T / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        c.nodes.push_back(cplx{-T + h * static_cast<double>(j), 0.0});
        c.dz.push_back(cplx{(j == 0 || j + 1 == n) ? 0.5 * h : h, 0.0});
    }
    return c;
}

}  // namespace

TEST_CASE("weight sums") {
    // lebesgue-line, T=10, N=2001 -> total length 20
    DiscreteHilbert line = make_lebesgue_line(10.0, 2001);
    CHECK(line.weight_sum() == doctest::Approx(20.0).epsilon(1e-13));

    // mult-haar on [1e-4, 1e4] -> Haar measure log(1e8)
    DiscreteHilbert haar = make_mult_haar(1e-4, 1e4, 1601);
    CHECK(haar.weight_sum() == doctest::Approx(std::log(1e8)).epsilon(1e-10));

    CHECK_THROWS_AS(make_lebesgue_line(10.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_mult_haar(2.0, 1.0, 100), std::invalid_argument);
}

TEST_CASE("strip contour: closed-contour integral of an entire decaying function") {
    // f = e^{-z^2} decays on both lines; with far caps negligible the oriented
    // boundary integral must vanish.
    Contour c = make_strip_contour(1.0, 12.0, 1600);
    const cplx v = c.integrate([](cplx z) { return std::exp(-z * z); });
    CHECK(std::abs(v) < 1e-8);
    // nodes lie on the declared curve
    for (std::size_t j = 0; j < c.size(); ++j)
        CHECK(std::abs(std::abs(c.nodes[j].imag()) - 1.0) < 1e-14);
}

TEST_CASE("cauchy formula on the strip boundary") {
    // (1/2 pi i) int f(w)/(w - z) dw = f(z) for z inside the strip.
    Contour c = make_strip_contour(0.8, 14.0, 3000);
    auto f = [](cplx z) { return std::exp(-z * z) * (2.0 + z); };
    for (cplx z : {cplx{0.0, 0.0}, cplx{1.3, 0.4}, cplx{-2.0, -0.5}}) {
        const cplx v =
            c.integrate([&](cplx w) { return f(w) / (w - z); }) / (2.0 * M_PI * iunit);
        CHECK(std::abs(v - f(z)) < 1e-9);
    }
}

TEST_CASE("keyhole contour: Hankel integral 1/Gamma(nu)") {
    Contour c = make_keyhole_contour(0.75 * M_PI, 1.0, 60.0, 4000, 2000);
    for (double nu : {1.0, 1.5, 2.0, 2.5}) {
        const cplx v = c.integrate([&](cplx z) { return std::exp(z) * std::pow(z, -nu); }) /
                       (2.0 * M_PI * iunit);
        CHECK(std::abs(v - 1.0 / std::tgamma(nu)) < 1e-6);
    }
    CHECK_THROWS_AS(make_keyhole_contour(0.3 * M_PI, 1.0, 10.0, 100, 100), std::invalid_argument);
}

TEST_CASE("discrete fourier: gaussian self-transform") {
    DiscreteHilbert line = make_lebesgue_line(12.0, 2401);
    CVector g = sample(line, [](cplx s) { return std::exp(-0.5 * s * s); });
    std::vector<double> ts;
    for (double t = -3.0; t <= 3.0; t += 0.5) ts.push_back(t);
    FourierResult r = discrete_fourier(line, g, ts);
    CHECK(r.edge_decay_ok);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double expect = std::sqrt(2.0 * M_PI) * std::exp(-0.5 * ts[k] * ts[k]);
        CHECK(std::abs(r.values[k] - expect) < 1e-8);
    }
}

TEST_CASE("discrete fourier: sech pair") {
    // (1/2pi) int (pi/omega) sech(pi s/(2 omega)) e^{ist} ds = sech(omega t).
    for (double omega : {0.5, 1.0, 2.0}) {
        const double T = 60.0 / omega;  // sech tail ~ 2 e^{-pi T/(2 omega)}
        DiscreteHilbert line = make_lebesgue_line(T, 6001);
        CVector g = sample(line, [omega](cplx s) {
            return (M_PI / omega) / std::cosh(M_PI * s / (2.0 * omega));
        });
        std::vector<double> ts{0.0, 0.5, 1.0, 2.0, -1.5};
        FourierResult r = discrete_fourier(line, g, ts, /*inverse=*/true);
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const double expect = 1.0 / std::cosh(omega * ts[k]);
            CHECK(std::abs(r.values[k] - expect) < 1e-6);
        }
        // t = 0 reproduces sech(0) = 1
        CHECK(std::abs(r.values[0] - 1.0) < 1e-6);
    }
}

TEST_CASE("plancherel on the grid") {
    // ||g_hat||^2 = 2 pi ||g||^2 under the stated convention.
    DiscreteHilbert line = make_lebesgue_line(12.0, 2001);
    CVector g = sample(line, [](cplx s) { return std::exp(-0.5 * s * s) * (1.0 + 0.3 * s); });
    DiscreteHilbert dual = make_lebesgue_line(14.0, 2801);
    std::vector<double> ts(dual.size());
    for (std::size_t j = 0; j < dual.size(); ++j) ts[j] = dual.nodes[j].real();
    FourierResult r = discrete_fourier(line, g, ts);
    const double lhs = grid_norm(dual, r.values);
    const double rhs = std::sqrt(2.0 * M_PI) * grid_norm(line, g);
    CHECK(std::abs(lhs * lhs - rhs * rhs) < 1e-6 * rhs * rhs);
}

TEST_CASE("grid inner products match analytic values") {
    DiscreteHilbert line = make_lebesgue_line(14.0, 2001);
    CVector f = sample(line, [](cplx t) { return std::exp(-0.5 * t * t); });
    CVector g = sample(line, [](cplx t) { return std::exp(-0.5 * (t - 1.0) * (t - 1.0)); });
    // int e^{-t^2/2} e^{-(t-1)^2/2} dt = sqrt(pi) e^{-1/4}
    const double expect = std::sqrt(M_PI) * std::exp(-0.25);
    CHECK(std::abs(grid_inner(line, f, g) - expect) < 1e-8);
}

TEST_CASE("pv convolution: odd symmetry and constant integrand") {
    Contour c = real_line_contour(5.0, 1001);
    const std::size_t center = 500;  // node at 0
    REQUIRE(std::abs(c.nodes[center]) < 1e-14);

    // h = 1, lambda at the center: odd symmetry cancels exactly
    CVector ones(c.size(), cplx{1.0});
    CHECK(std::abs(pv_convolution_at(c, ones, center)) < 1e-12);

    // h(w) = w - lambda0: integrand is -1, value -(interval length) up to the
    // skipped node (first order in h)
    const cplx l0 = c.nodes[center];
    CVector h(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) h[j] = c.nodes[j] - l0;
    const double spacing = 10.0 / 1000.0;
    CHECK(std::abs(pv_convolution_at(c, h, center) - cplx{-10.0}) < 1.5 * spacing);
}

TEST_CASE("pv convolution: rational integrand against partial fractions") {
    // h(w) = 1/(w - mu) with mu off the contour; closed form by partial
    // fractions, branch-safe segment by segment.
    const double omega = 1.0, T = 20.0;
    const std::size_t n = 16001;
    Contour c = make_strip_contour(omega, T, n);
    const cplx mu{0.3, 0.2};
    CVector h(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) h[j] = 1.0 / (c.nodes[j] - mu);

    const std::size_t at = 8000 + 692;  // a bottom-line node away from the edges
    const cplx lambda = c.nodes[at];
    REQUIRE(lambda.imag() == -omega);

    auto seg_int_wmu = [&](cplx a, cplx b) { return std::log((b - mu) / (a - mu)); };
    auto seg_int_lmw = [&](cplx a, cplx b) { return std::log((lambda - a) / (lambda - b)); };
    const cplx bot_a{-T, -omega}, bot_b{T, -omega}, top_a{-T, omega}, top_b{T, omega};
    // bottom traversed a->b, top traversed b->a
    cplx int_wmu = seg_int_wmu(bot_a, bot_b) - seg_int_wmu(top_a, top_b);
    // pv of 1/(lambda - w): singular on the bottom segment, regular on top
    const double u = std::abs(lambda - bot_a), v = std::abs(bot_b - lambda);
    cplx int_lmw = std::log(u / v) - seg_int_lmw(top_a, top_b);
    const cplx expect = (int_wmu + int_lmw) / (lambda - mu);

    const cplx got = pv_convolution_at(c, h, at);
    CHECK(std::abs(got - expect) < 1e-3);

    CHECK_THROWS_AS(pv_convolution_at(c, h, c.size() + 5), std::invalid_argument);
}

TEST_CASE("sinh-graded boundary grid reaches far tails") {
    // truncation tail of the resolvent-type integrand is ~ 4/sinh(u_max)
    DiscreteHilbert g = make_boundary_strip_sinh(1.0, 20.0, 9001);
    // resolvent-type weight integral: sum w / |node - a|^2 = 2 pi / omega
    const double a = 0.7;
    double s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) s += g.weights[j] / std::norm(g.nodes[j] - a);
    CHECK(s == doctest::Approx(2.0 * M_PI).epsilon(1e-8));
}

#include <cstdio>
#include <fstream>

TEST_CASE("grid csv dump") {
    DiscreteHilbert g = make_lebesgue_line(2.0, 9);
    const std::string path = "/tmp/sqflab_test_grid.csv";
    write_grid_csv(g, path);
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "re_node,im_node,weight");
    std::size_t rows = 0;
    for (std::string line; std::getline(f, line);) ++rows;
    CHECK(rows == g.size());
    std::remove(path.c_str());
}
