#pragma once

// Frames on C^d and on the line: analysis/synthesis pairs, two-sided frame
// bounds, l1-frame bounds of sets and operators (Hilbert-Schmidt certificate
// via the SVD), and the bump-window Gabor frame behind the W^2_1 bound.

#include <functional>
#include <vector>

#include "sqflab/numlin.hpp"
#include "sqflab/strip_calc.hpp"

namespace sqflab {

struct FrameSpec {
    CMatrix vectors;    // columns f_alpha
    CMatrix analysis;   // R: h -> (<h, f_alpha>)_alpha
    CMatrix synthesis;  // L with L R = I
};

// R = vectors^*, L = (R^* R)^{-1} R^*; requires the columns to span C^d.
FrameSpec make_frame(const CMatrix& vectors);

// Transport along an isomorphism S: R~ = R S^{-1}, L~ = S L.
FrameSpec push_forward(const FrameSpec& F, const CMatrix& S);

struct FrameBounds {
    double lower = 0.0;  // A: min of (sum |<h,f_a>|^2)^(1/2) / ||h||
    double upper = 0.0;  // B
    bool rank_deficient = false;
};

// Exact via the singular values of the analysis matrix; the random samples
// and extremal singular vectors are folded into the same min/max.
FrameBounds frame_bounds(const FrameSpec& F, std::size_t trials = 200,
                         std::uint64_t seed = 1234);

// ---------------------------------------------------------------------------
// l1-frame bounds.

struct HsCertificate {
    double bound = 0.0;       // = ||tau||_2 = HS norm
    CMatrix frame;            // certifying frame: left singular vectors (a full ONB)
    std::vector<double> tau;  // singular values
    // sum_n |<Tf, u_n>| for a given unit vector f (never exceeds `bound`)
    double coefficient_sum(const CMatrix& T, const CVector& f) const;
};

// l1-frame bound of the operator T between Hilbert spaces: the HS norm,
// certified by the left singular vector frame.
HsCertificate l1_bound_operator_hs(const CMatrix& T);

// Upper estimate ||L|| sup_x sum_alpha |<Rx, e_alpha>| for the declared
// frame; the infimum over frames is not searched.
double l1_bound_set(const std::vector<CVector>& samples, const FrameSpec& F);

// W^2_1 profile of the shift range {psi(. + z)}: sup over the z grid of
// sum_j w_j (|psi| + |psi'| + |psi''|)(t_j + z). psi must be elementary on a
// strip strictly wider than omega.
double l1_bound_shift_range(const HolFn& psi, double omega, const DiscreteHilbert& line,
                            std::size_t z_grid = 7);

// ---------------------------------------------------------------------------
// Gabor frame from an exact bump partition of unity.

struct GaborParams {
    long translates = 30;       // k in [-K, K]
    long max_frequency = 32;    // n in [-N, N]
    std::size_t window_nodes = 801;  // quadrature nodes per window support
};

class GaborFrame {
  public:
    explicit GaborFrame(GaborParams p);

    double window(double t) const;       // eta(t), supported on (-pi, pi)
    double window_d1(double t) const;
    double window_d2(double t) const;
    // max_t |sum_k eta(t-k) - 1| over the covered interval
    double partition_residual(double lo, double hi, std::size_t probes = 4001) const;

    // <g, f_{n,k}> = int g eta_k e^{-ins}; direct quadrature
    cplx coefficient(long n, long k, const ScalarFn& g) const;
    // the same through -(1/n^2) int (eta_k g)'' e^{-ins}  (n != 0)
    cplx coefficient_ibp(long n, long k, const ScalarFn& g, const ScalarFn& dg,
                         const ScalarFn& d2g) const;

    // sum_{n,k} |<g, f_{n,k}>| with n = 0 terms direct and n != 0 by parts
    double coefficient_sum(const ScalarFn& g, const ScalarFn& dg, const ScalarFn& d2g) const;

    const GaborParams& params() const { return params_; }

  private:
    GaborParams params_;
    double bump(double t) const;
    double bump_d1(double t) const;
    double bump_d2(double t) const;
    double cover(double t) const;  // S(t) = sum_k phi(t - k)
    double cover_d1(double t) const;
    double cover_d2(double t) const;
};

GaborFrame gabor_frame_build(const GaborParams& p);

// Fitted W^2_1 control constant: max over the dictionary of
// (coefficient sum) / ||g||_{W^2_1}.
struct W12Control {
    double constant = 0.0;
    std::vector<double> ratios;
};
W12Control w12_control_constant(const GaborFrame& frame, const DiscreteHilbert& line);

}  // namespace sqflab
