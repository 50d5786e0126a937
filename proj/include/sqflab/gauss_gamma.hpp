#pragma once

// Gamma-norms of finite-rank operators H -> C^n by three routes (Hilbert-
// Schmidt, lattice square bracket, Monte Carlo over complex Gaussian sums),
// the contraction principle and ideal property as numerical checks, trace
// duality, and the nuclear upper bound.
//
// Matrices live in sqrt(weight)-scaled grid coordinates, so the grid l2 space
// is isometric to the L^2 space it discretizes.

#include <cstdint>
#include <optional>
#include <vector>

#include "sqflab/grids.hpp"
#include "sqflab/numlin.hpp"

namespace sqflab {

// Operator H -> C^n; column j is the image of the j-th scaled basis vector.
struct FiniteRankOp {
    CMatrix matrix;  // n x m
    NormSpec codomain = NormSpec::hilbert();
    std::optional<DiscreteHilbert> domain;  // m nodes when present

    std::size_t dim_out() const { return matrix.rows; }
    std::size_t dim_in() const { return matrix.cols; }
};

// Columns sqrt(w_j) * f(t_j) for a sampled H-valued function f.
FiniteRankOp make_sampled_operator(const DiscreteHilbert& grid,
                                   const std::vector<CVector>& values_at_nodes,
                                   const NormSpec& codomain);

// Rank-one conj(g) (x) x in plain coordinates.
FiniteRankOp rank_one(const CVector& g, const CVector& x, const NormSpec& codomain);

// Reproducible unit-variance complex Gaussian stream: E |gamma|^2 = 1,
// gamma = (g_r + i g_i)/sqrt(2). Value depends only on (seed, sample, index).
struct GaussianSampler {
    std::uint64_t seed = 0;
    cplx gamma(std::uint64_t sample, std::uint64_t index) const;
};

enum class GammaMethod { hilbert_exact, lattice_exact, monte_carlo };

struct GammaNormResult {
    double value = 0.0;
    std::optional<double> stderr_value;  // Monte Carlo only
    GammaMethod method = GammaMethod::hilbert_exact;
};

GammaNormResult gamma_norm(const FiniteRankOp& T, GammaMethod method,
                           const GaussianSampler& sampler = {}, std::size_t samples = 20000);

// Entrywise square bracket (sum_j |col_j|^2)^(1/2) of the matrix.
std::vector<double> square_bracket(const CMatrix& M);

// Dual gamma'-norm: exact (= HS) for Hilbert codomains, otherwise a sampled
// lower estimate of sup |tr(V'U)| / ||U||_gamma over finite-rank U.
struct GammaPrimeResult {
    double value = 0.0;
    bool exact = false;
};
GammaPrimeResult gamma_prime_norm(const FiniteRankOp& V, const GaussianSampler& sampler = {},
                                  std::size_t trials = 64);

// ---------------------------------------------------------------------------
// Inequality checkers. lhs/rhs live on the E ||.||^2 scale.

struct ContractionReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double opnormA = 0.0;
    double stderr_combined = 0.0;
    bool exact = false;  // Hilbert norm: no sampling involved
    bool pass = false;
};

// E || sum_k gamma_k sum_j a_kj x_j ||^2  <=  ||A||^2 E || sum_j gamma_j x_j ||^2.
ContractionReport check_contraction_principle(const CMatrix& A, const std::vector<CVector>& xs,
                                              const NormSpec& norm, const GaussianSampler& sampler,
                                              std::size_t samples = 20000);

struct IdealReport {
    double lhs = 0.0;  // gamma-norm of L T R
    double rhs = 0.0;  // ||L|| ||T||_gamma ||R||
    double norm_L = 0.0, norm_T = 0.0, norm_R = 0.0;
    double stderr_combined = 0.0;
    bool exact = false;
    bool norms_certified = true;
    bool pass = false;
};

// gamma_norm(L T R) <= ||L||_{X->Y} ||T||_gamma ||R||_{K->H}; the codomain of
// L (the space Y) is passed explicitly.
IdealReport check_ideal_property(const CMatrix& L, const NormSpec& normY, const FiniteRankOp& T,
                                 const CMatrix& R, const GaussianSampler& sampler,
                                 std::size_t samples = 20000);

// Trace duality pairing tr(V'U) = sum_alpha <U e_alpha, V conj(e_alpha)>
// (bilinear duality on C^n); grids of U and V must agree.
cplx trace_pairing(const FiniteRankOp& U, const FiniteRankOp& V);

struct NuclearReport {
    double bound = 0.0;        // sum_j ||g_j|| ||x_j||
    double gamma_value = 0.0;  // gamma-norm of sum_j conj(g_j) (x) x_j
    std::optional<double> stderr_value;
    bool pass = false;
};

NuclearReport nuclear_bound(const std::vector<std::pair<CVector, CVector>>& representation,
                            const NormSpec& codomain, const GaussianSampler& sampler = {},
                            std::size_t samples = 20000);

// FNV-1a digest over the matrix bytes; report provenance only.
std::uint64_t inputs_digest(const CMatrix& M);

}  // namespace sqflab
