#include "sqflab/gauss_gamma.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace sqflab {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct MeanAcc {
    double sum = 0.0;
    double sumsq = 0.0;
    std::size_t n = 0;
    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++n;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    // standard error of the mean
    double sem() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double var = std::max(0.0, sumsq / static_cast<double>(n) - m * m);
        return std::sqrt(var / static_cast<double>(n - 1));
    }
};

}  // namespace

FiniteRankOp make_sampled_operator(const DiscreteHilbert& grid,
                                   const std::vector<CVector>& values_at_nodes,
                                   const NormSpec& codomain) {
    if (values_at_nodes.size() != grid.size())
        throw std::invalid_argument("make_sampled_operator: one value per node required");
    const std::size_t n = values_at_nodes.empty() ? 0 : values_at_nodes.front().size();
    FiniteRankOp op;
    op.codomain = codomain;
    op.domain = grid;
    op.matrix = CMatrix(n, grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (values_at_nodes[j].size() != n)
            throw std::invalid_argument("make_sampled_operator: ragged values");
        const double sw = std::sqrt(grid.weights[j]);
        for (std::size_t i = 0; i < n; ++i) op.matrix(i, j) = sw * values_at_nodes[j][i];
    }
    codomain.check_dim(n);
    return op;
}

FiniteRankOp rank_one(const CVector& g, const CVector& x, const NormSpec& codomain) {
    FiniteRankOp op;
    op.codomain = codomain;
    op.matrix = CMatrix(x.size(), g.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) op.matrix(i, j) = std::conj(g[j]) * x[i];
    codomain.check_dim(x.size());
    return op;
}

cplx GaussianSampler::gamma(std::uint64_t sample, std::uint64_t index) const {
    std::uint64_t k = mix64(seed ^ mix64(0x9E3779B97F4A7C15ULL * (sample + 0x632BE59BD9B4E019ULL)));
    k = mix64(k ^ (0xD6E8FEB86659FD93ULL * (index + 0x100000001B3ULL)));
    const std::uint64_t r1 = mix64(k + 0x9E3779B97F4A7C15ULL);
    const std::uint64_t r2 = mix64(k + 0x2545F4914F6CDD1DULL);
    const double u1 = (static_cast<double>(r1 >> 11) + 1.0) * 0x1p-53;  // (0, 1]
    const double u2 = static_cast<double>(r2 >> 11) * 0x1p-53;          // [0, 1)
    // |gamma|^2 ~ Exp(1), phase uniform: unit-variance complex Gaussian.
    const double r = std::sqrt(-std::log(u1));
    return r * std::exp(cplx{0.0, 2.0 * M_PI * u2});
}

std::vector<double> square_bracket(const CMatrix& M) {
    std::vector<double> b(M.rows, 0.0);
    for (std::size_t i = 0; i < M.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < M.cols; ++j) s += std::norm(M(i, j));
        b[i] = std::sqrt(s);
    }
    return b;
}

GammaNormResult gamma_norm(const FiniteRankOp& T, GammaMethod method,
                           const GaussianSampler& sampler, std::size_t samples) {
    GammaNormResult out;
    out.method = method;
    const CMatrix& M = T.matrix;
    switch (method) {
        case GammaMethod::hilbert_exact: {
            if (!T.codomain.is_hilbert())
                throw std::invalid_argument("gamma_norm: hilbert-exact needs a Hilbert codomain");
            out.value = fro_norm(M);
            return out;
        }
        case GammaMethod::lattice_exact: {
            // square bracket (sum_j |col_j|^2)^(1/2) measured in the lattice norm
            const std::vector<double> b = square_bracket(M);
            CVector bv(b.size());
            for (std::size_t i = 0; i < b.size(); ++i) bv[i] = b[i];
            out.value = vec_norm(bv, T.codomain);
            return out;
        }
        case GammaMethod::monte_carlo: {
            // Full grid basis: E || sum_j gamma_j col_j ||^2.
            MeanAcc acc;
            CVector y(M.rows);
            for (std::size_t s = 0; s < samples; ++s) {
                std::fill(y.begin(), y.end(), cplx{});
                for (std::size_t j = 0; j < M.cols; ++j) {
                    const cplx g = sampler.gamma(s, j);
                    for (std::size_t i = 0; i < M.rows; ++i) y[i] += g * M(i, j);
                }
                const double nv = vec_norm(y, T.codomain);
                acc.add(nv * nv);
            }
            const double mean = std::max(acc.mean(), 0.0);
            out.value = std::sqrt(mean);
            // delta method for the sqrt of the sample mean
            out.stderr_value = (mean > 0.0) ? acc.sem() / (2.0 * std::sqrt(mean)) : acc.sem();
            return out;
        }
    }
    throw std::logic_error("gamma_norm: unknown method");
}

GammaPrimeResult gamma_prime_norm(const FiniteRankOp& V, const GaussianSampler& sampler,
                                  std::size_t trials) {
    GammaPrimeResult out;
    if (V.codomain.is_hilbert()) {
        out.value = fro_norm(V.matrix);
        out.exact = true;
        return out;
    }
    // Lower estimate: sample finite-rank U and take |tr(V'U)| / ||U||_gamma,
    // with the lattice-exact value standing in for ||U||_gamma.
    const NormSpec primal = dual_norm(V.codomain, V.dim_out());
    for (std::size_t t = 0; t < trials; ++t) {
        FiniteRankOp U;
        U.codomain = primal;
        U.matrix = CMatrix(V.dim_out(), V.dim_in());
        for (std::size_t i = 0; i < U.matrix.a.size(); ++i)
            U.matrix.a[i] = sampler.gamma(t, i + 7000000);
        const double un = gamma_norm(U, GammaMethod::lattice_exact).value;
        if (un == 0.0) continue;
        cplx tr = 0.0;
        for (std::size_t i = 0; i < U.matrix.a.size(); ++i) tr += U.matrix.a[i] * V.matrix.a[i];
        out.value = std::max(out.value, std::abs(tr) / un);
    }
    return out;
}

ContractionReport check_contraction_principle(const CMatrix& A, const std::vector<CVector>& xs,
                                              const NormSpec& norm, const GaussianSampler& sampler,
                                              std::size_t samples) {
    if (xs.empty()) throw std::invalid_argument("check_contraction_principle: empty vector list");
    const std::size_t n = A.rows, m = A.cols, d = xs.front().size();
    if (xs.size() != m) throw std::invalid_argument("check_contraction_principle: need m vectors");
    for (const auto& x : xs)
        if (x.size() != d) throw std::invalid_argument("check_contraction_principle: ragged xs");
    norm.check_dim(d);

    CMatrix X(d, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < d; ++i) X(i, j) = xs[j][i];

    ContractionReport rep;
    rep.opnormA = op_norm22(A);
    if (norm.is_hilbert() || (norm.kind == NormSpec::Kind::lp && norm.p == 2.0)) {
        // Exact form: || X A^T ||_HS^2 <= sigma_max(A)^2 ||X||_HS^2.
        const double lhs = fro_norm(X * transpose(A));
        const double rhs = fro_norm(X);
        rep.lhs = lhs * lhs;
        rep.rhs = rep.opnormA * rep.opnormA * rhs * rhs;
        rep.exact = true;
        rep.pass = rep.lhs <= rep.rhs + 1e-12 * std::max(1.0, rep.rhs);
        return rep;
    }

    MeanAcc lhs_acc, rhs_acc;
    CVector y(d);
    for (std::size_t s = 0; s < samples; ++s) {
        // lhs: y = X (A^T gamma), gamma in C^n
        std::fill(y.begin(), y.end(), cplx{});
        for (std::size_t k = 0; k < n; ++k) {
            const cplx g = sampler.gamma(s, k);
            for (std::size_t j = 0; j < m; ++j) {
                const cplx c = g * A(k, j);
                if (c == cplx{}) continue;
                for (std::size_t i = 0; i < d; ++i) y[i] += c * X(i, j);
            }
        }
        double nv = vec_norm(y, norm);
        lhs_acc.add(nv * nv);
        // rhs: y = X gamma', independent stream
        std::fill(y.begin(), y.end(), cplx{});
        for (std::size_t j = 0; j < m; ++j) {
            const cplx g = sampler.gamma(s, 1000000 + j);
            for (std::size_t i = 0; i < d; ++i) y[i] += g * X(i, j);
        }
        nv = vec_norm(y, norm);
        rhs_acc.add(nv * nv);
    }
    rep.lhs = lhs_acc.mean();
    rep.rhs = rep.opnormA * rep.opnormA * rhs_acc.mean();
    const double se_rhs = rep.opnormA * rep.opnormA * rhs_acc.sem();
    rep.stderr_combined = std::hypot(lhs_acc.sem(), se_rhs);
    rep.pass = rep.lhs <= rep.rhs + 3.0 * rep.stderr_combined;
    return rep;
}

IdealReport check_ideal_property(const CMatrix& L, const NormSpec& normY, const FiniteRankOp& T,
                                 const CMatrix& R, const GaussianSampler& sampler,
                                 std::size_t samples) {
    if (L.cols != T.matrix.rows || T.matrix.cols != R.rows)
        throw std::invalid_argument("check_ideal_property: shapes do not compose");
    normY.check_dim(L.rows);
    IdealReport rep;
    const OpNormResult nl = op_norm(L, T.codomain, normY);
    rep.norm_L = nl.value;
    rep.norm_R = op_norm22(R);
    rep.norms_certified = nl.certified;

    FiniteRankOp LTR;
    LTR.codomain = normY;
    LTR.matrix = L * T.matrix * R;

    if (T.codomain.is_hilbert() && normY.is_hilbert()) {
        rep.norm_T = fro_norm(T.matrix);
        rep.lhs = fro_norm(LTR.matrix);
        rep.rhs = rep.norm_L * rep.norm_T * rep.norm_R;
        rep.exact = true;
        rep.pass = rep.lhs <= rep.rhs + 1e-12 * std::max(1.0, rep.rhs);
        return rep;
    }
    const GammaNormResult gT = gamma_norm(T, GammaMethod::monte_carlo, sampler, samples);
    GaussianSampler s2{sampler.seed + 0x51ab};
    const GammaNormResult gLTR = gamma_norm(LTR, GammaMethod::monte_carlo, s2, samples);
    rep.norm_T = gT.value;
    rep.lhs = gLTR.value;
    rep.rhs = rep.norm_L * gT.value * rep.norm_R;
    const double se_rhs = rep.norm_L * rep.norm_R * gT.stderr_value.value_or(0.0);
    rep.stderr_combined = std::hypot(gLTR.stderr_value.value_or(0.0), se_rhs);
    rep.pass = rep.lhs <= rep.rhs + 3.0 * rep.stderr_combined;
    return rep;
}

cplx trace_pairing(const FiniteRankOp& U, const FiniteRankOp& V) {
    if (U.matrix.rows != V.matrix.rows || U.matrix.cols != V.matrix.cols)
        throw std::invalid_argument("trace_pairing: shape mismatch");
    if (U.domain && V.domain) {
        const auto& a = *U.domain;
        const auto& b = *V.domain;
        if (a.size() != b.size()) throw std::invalid_argument("trace_pairing: grid mismatch");
        for (std::size_t j = 0; j < a.size(); ++j)
            if (std::abs(a.nodes[j] - b.nodes[j]) > 1e-12 ||
                std::abs(a.weights[j] - b.weights[j]) > 1e-12)
                throw std::invalid_argument("trace_pairing: grid mismatch");
    }
    cplx tr = 0.0;
    for (std::size_t i = 0; i < U.matrix.a.size(); ++i) tr += U.matrix.a[i] * V.matrix.a[i];
    return tr;
}

NuclearReport nuclear_bound(const std::vector<std::pair<CVector, CVector>>& representation,
                            const NormSpec& codomain, const GaussianSampler& sampler,
                            std::size_t samples) {
    if (representation.empty()) throw std::invalid_argument("nuclear_bound: empty representation");
    const std::size_t m = representation.front().first.size();
    const std::size_t n = representation.front().second.size();
    NuclearReport rep;
    FiniteRankOp T;
    T.codomain = codomain;
    T.matrix = CMatrix(n, m);
    for (const auto& [g, x] : representation) {
        if (g.size() != m || x.size() != n)
            throw std::invalid_argument("nuclear_bound: ragged representation");
        rep.bound += norm2(g) * vec_norm(x, codomain);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) T.matrix(i, j) += std::conj(g[j]) * x[i];
    }
    if (codomain.is_hilbert()) {
        rep.gamma_value = gamma_norm(T, GammaMethod::hilbert_exact).value;
        rep.pass = rep.gamma_value <= rep.bound + 1e-12 * std::max(1.0, rep.bound);
    } else {
        const GammaNormResult g = gamma_norm(T, GammaMethod::monte_carlo, sampler, samples);
        rep.gamma_value = g.value;
        rep.stderr_value = g.stderr_value;
        rep.pass = rep.gamma_value <= rep.bound + 3.0 * g.stderr_value.value_or(0.0);
    }
    return rep;
}

std::uint64_t inputs_digest(const CMatrix& M) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto absorb = [&h](const void* p, std::size_t len) {
        const unsigned char* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 0x100000001B3ULL;
        }
    };
    absorb(&M.rows, sizeof(M.rows));
    absorb(&M.cols, sizeof(M.cols));
    if (!M.a.empty()) absorb(M.a.data(), M.a.size() * sizeof(cplx));
    return h;
}

}  // namespace sqflab
