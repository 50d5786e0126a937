#pragma once

// Square functions attached to the strip calculus: the sqrt(weight)-scaled
// matrix of f(t_j, A) x values, their gamma-norms, and the structural checks
// (subordination, Fourier/tensor equivalence, the pairing identity, and the
// reconstruction formula int phi(tS) psi(tS) x dt/t).

#include <cstdint>
#include <functional>
#include <string>

#include "sqflab/gauss_gamma.hpp"
#include "sqflab/strip_calc.hpp"

namespace sqflab {

using KernelEval = std::function<cplx(cplx, cplx)>;  // (t, z) -> value

enum class KernelKind { shift, dilation, group_orbit, resolvent_boundary, custom };

struct KernelFn {
    KernelKind kind = KernelKind::custom;
    DiscreteHilbert grid;
    double admissible_height = 0.0;  // strip half-height in z (sector angle for dilation)
    HolFn psi;                       // shift only
    ScalarFn sector_psi;             // dilation only
    double orbit_omega = 0.0;        // group-orbit weight
    KernelEval eval2;                // defined for every kind
    std::string descriptor;

    cplx operator()(cplx t, cplx z) const { return eval2(t, z); }
};

KernelFn shift_kernel(const HolFn& psi, const DiscreteHilbert& line);
KernelFn dilation_kernel(const ScalarFn& psi, double sector_angle, const DiscreteHilbert& haar);
KernelFn group_orbit_kernel(double omega, const DiscreteHilbert& line);
KernelFn resolvent_boundary_kernel(const DiscreteHilbert& boundary);
KernelFn custom_kernel(const KernelEval& eval, double admissible_height,
                       const DiscreteHilbert& grid, std::string descriptor = "custom");

enum class SqfSide { primal, dual };

struct SqfOutput {
    FiniteRankOp op;  // columns sqrt(w_j) f(t_j, A) v (dual: transposed calculus)
    SqfSide side = SqfSide::primal;
    std::string kernel;
    std::uint64_t a_digest = 0;
};

// For dilation kernels pass the logarithm of the sectorial operator as A.
SqfOutput sqfun_matrix(const KernelFn& k, const StripOperator& A, const CVector& v, SqfSide side,
                       const NormSpec& codomain, const CalcOpts& opts = {});

GammaNormResult sqfun_norm(const SqfOutput& S, GammaMethod method,
                           const GaussianSampler& sampler = {}, std::size_t samples = 20000);

// ---------------------------------------------------------------------------
// Structural checks.

struct SubordinationReport {
    double max_column_residual = 0.0;  // columns of subordinated output vs M * T
    double norm_ratio = 0.0;           // gamma-norm(subordinated) / gamma-norm(original)
    double norm_T = 0.0;
    bool pass = false;
};

// T maps the subordinate grid (T.cols nodes) into g's grid (T.rows) in scaled
// coordinates; the subordinated square function must equal (original) o T.
SubordinationReport check_subordination(const KernelFn& g, const StripOperator& A,
                                        const CVector& v, const CMatrix& T,
                                        const DiscreteHilbert& sub_grid, const NormSpec& codomain,
                                        const CalcOpts& opts = {}, double tol = 1e-9);

struct FourierEquivReport {
    double shift_norm = 0.0;
    double orbit_norm = 0.0;
    double defect = 0.0;  // | shift_norm - sqrt(2 pi) orbit_norm |
    bool pass = false;
};

// Shift kernel psi(t+z) against the group-orbit kernel psi_check(s) e^{-isz};
// the Fourier transform convention carries a factor sqrt(2 pi) between the
// two Hilbert norms.
FourierEquivReport check_fourier_equivalence(const KernelFn& shift_k, const KernelFn& orbit_k,
                                             const StripOperator& A, const CVector& v,
                                             const CalcOpts& opts = {}, double tol = 1e-5);

struct TensorReport {
    double tensor_norm = 0.0;  // single calculus pass on the product kernel
    double nested_norm = 0.0;  // composition of the two square functions
    double defect = 0.0;
    bool pass = false;
};

TensorReport check_tensor(const KernelFn& f, const KernelFn& g, const StripOperator& A,
                          const CVector& v, const CalcOpts& opts = {}, double tol = 1e-8);

struct PairingReport {
    cplx lhs = 0.0;  // < Phi(<f,g>) x, x' >
    cplx rhs = 0.0;  // trace pairing of the two square function outputs
    double residual = 0.0;
    bool contracted_is_one = false;
    double norm_recovery_residual = 0.0;  // |<x,x'> - rhs| when <f,g> = 1
    bool pass = false;
};

PairingReport check_pairing_identity(const KernelFn& f, const KernelFn& g, const StripOperator& A,
                                     const CVector& x, const CVector& xp,
                                     const CalcOpts& opts = {}, double tol = 1e-8);

struct McIntoshResult {
    CVector reconstructed;  // quadrature of int phi(tS) psi(tS) x dt/t
    double constant = 0.0;  // int_0^inf phi(t) psi(t) dt/t
};

McIntoshResult mcintosh_reconstruct(const ScalarFn& phi, const ScalarFn& psi, double sector_angle,
                                    const CMatrix& S, const CVector& x,
                                    const DiscreteHilbert& haar, const CalcOpts& opts = {});

// CSV export of the columns (t, Re/Im per component).
void write_sqf_csv(const SqfOutput& S, const std::string& path);

}  // namespace sqflab
