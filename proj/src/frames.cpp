#include "sqflab/frames.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace sqflab {

FrameSpec make_frame(const CMatrix& vectors) {
    if (vectors.empty()) throw std::invalid_argument("make_frame: empty frame");
    FrameSpec F;
    F.vectors = vectors;
    F.analysis = adjoint(vectors);  // row alpha = f_alpha^*
    const CMatrix RhR = adjoint(F.analysis) * F.analysis;
    const Svd s = jacobi_svd(F.analysis);
    if (s.s.back() <= 1e-12 * std::max(s.s.front(), 1.0))
        throw std::invalid_argument("make_frame: columns do not span the space");
    F.synthesis = lu_solve(lu_factor(RhR), adjoint(F.analysis));
    const double defect = fro_norm(F.synthesis * F.analysis - CMatrix::identity(vectors.rows));
    if (defect > 1e-10)
        throw std::runtime_error("make_frame: synthesis/analysis pair failed the L R = I check");
    return F;
}

FrameSpec push_forward(const FrameSpec& F, const CMatrix& S) {
    FrameSpec out;
    const CMatrix Sinv = inverse(S);
    out.analysis = F.analysis * Sinv;
    out.synthesis = S * F.synthesis;
    out.vectors = adjoint(out.analysis);
    return out;
}

FrameBounds frame_bounds(const FrameSpec& F, std::size_t trials, std::uint64_t seed) {
    FrameBounds out;
    const Svd s = jacobi_svd(F.analysis);
    out.upper = s.s.front();
    out.lower = s.s.back();
    out.rank_deficient = out.lower <= 1e-12 * std::max(out.upper, 1.0);
    // random unit vectors cannot beat the singular values, but fold them in
    // as the operational definition asks
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t d = F.analysis.cols;
    for (std::size_t t = 0; t < trials; ++t) {
        CVector h(d);
        for (auto& v : h) v = cplx{u(rng), u(rng)};
        const double nh = norm2(h);
        if (nh == 0.0) continue;
        const double r = norm2(F.analysis * h) / nh;
        out.lower = std::min(out.lower, r);
        out.upper = std::max(out.upper, r);
    }
    return out;
}

double HsCertificate::coefficient_sum(const CMatrix& T, const CVector& f) const {
    const CVector Tf = T * f;
    double acc = 0.0;
    for (std::size_t n = 0; n < frame.cols; ++n) {
        cplx c = 0.0;
        for (std::size_t i = 0; i < frame.rows; ++i) c += std::conj(frame(i, n)) * Tf[i];
        acc += std::abs(c);
    }
    return acc;
}

HsCertificate l1_bound_operator_hs(const CMatrix& T) {
    const Svd s = jacobi_svd(T);
    HsCertificate cert;
    cert.tau = s.s;
    double acc = 0.0;
    for (double t : s.s) acc += t * t;
    cert.bound = std::sqrt(acc);
    cert.frame = s.U;  // jacobi_svd always completes U to a unitary
    return cert;
}

double l1_bound_set(const std::vector<CVector>& samples, const FrameSpec& F) {
    if (samples.empty()) throw std::invalid_argument("l1_bound_set: no samples");
    double sup = 0.0;
    for (const auto& x : samples) {
        const CVector Rx = F.analysis * x;
        double s = 0.0;
        for (const auto& v : Rx) s += std::abs(v);
        sup = std::max(sup, s);
    }
    return op_norm22(F.synthesis) * sup;
}

double l1_bound_shift_range(const HolFn& psi, double omega, const DiscreteHilbert& line,
                            std::size_t z_grid) {
    if (psi.tag != HolFn::Tag::elementary)
        throw std::invalid_argument("l1_bound_shift_range: psi must be elementary");
    if (!(psi.strip_half_height > omega))
        throw std::invalid_argument("l1_bound_shift_range: need omega < strip of psi");
    const double rho = 0.5 * (psi.strip_half_height - omega);
    std::vector<cplx> zg;
    for (std::size_t k = 0; k < z_grid; ++k) {
        const double frac =
            (z_grid == 1) ? 0.0
                          : -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(z_grid - 1);
        zg.push_back(cplx{0.5 * frac, omega * frac});
    }
    return w12_profile(psi.eval, line, zg, rho);
}

// ---------------------------------------------------------------------------
// Gabor frame

namespace {
constexpr double kPi = M_PI;
}

GaborFrame::GaborFrame(GaborParams p) : params_(p) {
    if (p.translates < 1 || p.max_frequency < 0 || p.window_nodes < 64)
        throw std::invalid_argument("GaborFrame: degenerate parameters");
}

GaborFrame gabor_frame_build(const GaborParams& p) { return GaborFrame(p); }

double GaborFrame::bump(double t) const {
    const double r = t / kPi;
    const double u = 1.0 - r * r;
    if (u <= 1e-14) return 0.0;
    return std::exp(-1.0 / u);
}

double GaborFrame::bump_d1(double t) const {
    const double r = t / kPi;
    const double u = 1.0 - r * r;
    if (u <= 1e-10) return 0.0;
    const double du = -2.0 * t / (kPi * kPi);
    // d/dt exp(-1/u) = exp(-1/u) * u' / u^2
    return bump(t) * du / (u * u);
}

double GaborFrame::bump_d2(double t) const {
    const double r = t / kPi;
    const double u = 1.0 - r * r;
    if (u <= 1e-10) return 0.0;
    const double du = -2.0 * t / (kPi * kPi);
    const double ddu = -2.0 / (kPi * kPi);
    // phi = exp(-1/u): phi'' = phi ((u'/u^2)^2 + u''/u^2 - 2 u'^2/u^3)
    const double q = du / (u * u);
    return bump(t) * (q * q + ddu / (u * u) - 2.0 * du * du / (u * u * u));
}

double GaborFrame::cover(double t) const {
    double s = 0.0;
    const long k0 = static_cast<long>(std::floor(t));
    for (long k = k0 - 4; k <= k0 + 4; ++k) s += bump(t - static_cast<double>(k));
    return s;
}

double GaborFrame::cover_d1(double t) const {
    double s = 0.0;
    const long k0 = static_cast<long>(std::floor(t));
    for (long k = k0 - 4; k <= k0 + 4; ++k) s += bump_d1(t - static_cast<double>(k));
    return s;
}

double GaborFrame::cover_d2(double t) const {
    double s = 0.0;
    const long k0 = static_cast<long>(std::floor(t));
    for (long k = k0 - 4; k <= k0 + 4; ++k) s += bump_d2(t - static_cast<double>(k));
    return s;
}

double GaborFrame::window(double t) const {
    const double b = bump(t);
    if (b == 0.0) return 0.0;
    return b / cover(t);
}

double GaborFrame::window_d1(double t) const {
    const double b = bump(t);
    if (b == 0.0) return 0.0;
    const double S = cover(t), S1 = cover_d1(t);
    return (bump_d1(t) * S - b * S1) / (S * S);
}

double GaborFrame::window_d2(double t) const {
    const double b = bump(t);
    if (b == 0.0) return 0.0;
    const double S = cover(t), S1 = cover_d1(t), S2 = cover_d2(t);
    const double b1 = bump_d1(t), b2 = bump_d2(t);
    return b2 / S - (2.0 * b1 * S1 + b * S2) / (S * S) + 2.0 * b * S1 * S1 / (S * S * S);
}

double GaborFrame::partition_residual(double lo, double hi, std::size_t probes) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < probes; ++i) {
        const double t =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(probes - 1);
        double s = 0.0;
        const long k0 = static_cast<long>(std::floor(t));
        for (long k = k0 - 4; k <= k0 + 4; ++k) s += window(t - static_cast<double>(k));
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

cplx GaborFrame::coefficient(long n, long k, const ScalarFn& g) const {
    // int over supp(eta_k) = (k - pi, k + pi); the integrand vanishes to all
    // orders at the endpoints, so the trapezoid rule is spectrally accurate.
    const std::size_t M = params_.window_nodes;
    const double h = 2.0 * kPi / static_cast<double>(M - 1);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const double s = static_cast<double>(k) - kPi + h * static_cast<double>(i);
        const double eta = window(s - static_cast<double>(k));
        if (eta == 0.0) continue;
        const double wq = (i == 0 || i + 1 == M) ? 0.5 * h : h;
        acc += wq * g(cplx{s, 0.0}) * eta * std::exp(cplx{0.0, -static_cast<double>(n) * s});
    }
    return acc;
}

cplx GaborFrame::coefficient_ibp(long n, long k, const ScalarFn& g, const ScalarFn& dg,
                                 const ScalarFn& d2g) const {
    if (n == 0) throw std::invalid_argument("coefficient_ibp: n = 0 has no 1/n^2 form");
    const std::size_t M = params_.window_nodes;
    const double h = 2.0 * kPi / static_cast<double>(M - 1);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const double s = static_cast<double>(k) - kPi + h * static_cast<double>(i);
        const double t = s - static_cast<double>(k);
        const double eta = window(t);
        const double e1 = window_d1(t);
        const double e2 = window_d2(t);
        if (eta == 0.0 && e1 == 0.0 && e2 == 0.0) continue;
        const double wq = (i == 0 || i + 1 == M) ? 0.5 * h : h;
        const cplx second =
            e2 * g(cplx{s, 0.0}) + 2.0 * e1 * dg(cplx{s, 0.0}) + eta * d2g(cplx{s, 0.0});
        acc += wq * second * std::exp(cplx{0.0, -static_cast<double>(n) * s});
    }
    const double nn = static_cast<double>(n);
    return -acc / (nn * nn);
}

double GaborFrame::coefficient_sum(const ScalarFn& g, const ScalarFn& dg,
                                   const ScalarFn& d2g) const {
    // Window tables are translation invariant, so per translate k only the
    // function values are fresh; the frequency sweep reuses them through a
    // phase recurrence e^{-i n s} = e^{-i (n-1) s} e^{-i s}.
    const std::size_t M = params_.window_nodes;
    const double h = 2.0 * kPi / static_cast<double>(M - 1);
    std::vector<double> off(M), eta(M), eta1(M), eta2(M), wq(M);
    for (std::size_t i = 0; i < M; ++i) {
        off[i] = -kPi + h * static_cast<double>(i);
        eta[i] = window(off[i]);
        eta1[i] = window_d1(off[i]);
        eta2[i] = window_d2(off[i]);
        wq[i] = (i == 0 || i + 1 == M) ? 0.5 * h : h;
    }

    // coverage check: the translates must reach past the support of g
    {
        double peak = 0.0;
        for (double t = -3.0; t <= 3.0; t += 0.37) peak = std::max(peak, std::abs(g(cplx{t, 0.0})));
        const double edge = static_cast<double>(params_.translates) + kPi;
        const double tail = std::max(std::abs(g(cplx{edge, 0.0})), std::abs(g(cplx{-edge, 0.0})));
        if (tail > 1e-9 * std::max(peak, 1e-300))
            throw std::domain_error("GaborFrame: support not covered by the translates");
    }

    double total = 0.0;
    CVector direct(M), second(M), ph_pos(M), ph_neg(M), step_pos(M), step_neg(M);
    for (long k = -params_.translates; k <= params_.translates; ++k) {
        for (std::size_t i = 0; i < M; ++i) {
            const double s = static_cast<double>(k) + off[i];
            const cplx gv = g(cplx{s, 0.0});
            const cplx g1 = dg(cplx{s, 0.0});
            const cplx g2 = d2g(cplx{s, 0.0});
            direct[i] = wq[i] * eta[i] * gv;
            second[i] = wq[i] * (eta2[i] * gv + 2.0 * eta1[i] * g1 + eta[i] * g2);
            step_pos[i] = std::exp(cplx{0.0, -s});
            step_neg[i] = std::conj(step_pos[i]);
            ph_pos[i] = step_pos[i];
            ph_neg[i] = step_neg[i];
        }
        cplx zero_term = 0.0;
        for (std::size_t i = 0; i < M; ++i) zero_term += direct[i];
        total += std::abs(zero_term);
        for (long n = 1; n <= params_.max_frequency; ++n) {
            cplx acc_p = 0.0, acc_n = 0.0;
            for (std::size_t i = 0; i < M; ++i) {
                acc_p += second[i] * ph_pos[i];
                acc_n += second[i] * ph_neg[i];
                ph_pos[i] *= step_pos[i];
                ph_neg[i] *= step_neg[i];
            }
            const double nn = static_cast<double>(n) * static_cast<double>(n);
            total += std::abs(acc_p) / nn + std::abs(acc_n) / nn;
        }
    }
    return total;
}

W12Control w12_control_constant(const GaborFrame& frame, const DiscreteHilbert& line) {
    // dictionary of smooth decaying functions with closed-form derivatives
    struct Entry {
        ScalarFn g, dg, d2g;
    };
    std::vector<Entry> dict;
    for (const auto& [sig, mu] : std::vector<std::pair<double, double>>{
             {1.0, 0.0}, {0.5, 0.0}, {2.0, 0.0}, {1.0, 1.5}, {0.7, -2.0},
             {1.5, 0.7}, {0.3, 0.0}, {1.0, -4.0}, {2.5, 2.5}}) {
        const double s = sig, m = mu;
        dict.push_back(Entry{
            [s, m](cplx t) { return std::exp(-s * (t - m) * (t - m)); },
            [s, m](cplx t) { return -2.0 * s * (t - m) * std::exp(-s * (t - m) * (t - m)); },
            [s, m](cplx t) {
                const cplx d = t - m;
                return (4.0 * s * s * d * d - 2.0 * s) * std::exp(-s * d * d);
            }});
    }
    dict.push_back(Entry{[](cplx t) { return 1.0 / std::cosh(t); },
                         [](cplx t) { return -std::tanh(t) / std::cosh(t); },
                         [](cplx t) {
                             const cplx s = 1.0 / std::cosh(t);
                             return s - 2.0 * s * s * s;
                         }});

    W12Control out;
    for (const auto& e : dict) {
        double w12 = 0.0;
        for (std::size_t j = 0; j < line.size(); ++j) {
            const cplx t = line.nodes[j];
            w12 += line.weights[j] *
                   (std::abs(e.g(t)) + std::abs(e.dg(t)) + std::abs(e.d2g(t)));
        }
        const double csum = frame.coefficient_sum(e.g, e.dg, e.d2g);
        out.ratios.push_back(csum / w12);
        out.constant = std::max(out.constant, out.ratios.back());
    }
    return out;
}

}  // namespace sqflab
