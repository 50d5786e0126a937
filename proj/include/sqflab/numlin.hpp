#pragma once

// Dense complex linear algebra core: factorizations, operator norms and the
// decomposition of contractions into convex combinations of unitaries.
// Everything is desk scale (d <= ~64); accuracy is preferred over speed
// throughout, so the SVD is a one-sided Jacobi and eigenvalues come from an
// explicitly shifted complex QR iteration.

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sqflab {

using cplx = std::complex<double>;

constexpr cplx iunit{0.0, 1.0};

using CVector = std::vector<cplx>;

// Dense complex matrix, row-major.
struct CMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> a;

    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    CMatrix(std::size_t r, std::size_t c, std::vector<cplx> entries)
        : rows(r), cols(c), a(std::move(entries)) {
        if (a.size() != rows * cols)
            throw std::invalid_argument("CMatrix: entry count mismatch");
    }

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool empty() const { return rows == 0 || cols == 0; }
    bool square() const { return rows == cols; }

    static CMatrix identity(std::size_t n);
    static CMatrix zero(std::size_t r, std::size_t c);
    static CMatrix diag(const CVector& d);
};

CMatrix operator*(const CMatrix& A, const CMatrix& B);
CMatrix operator+(const CMatrix& A, const CMatrix& B);
CMatrix operator-(const CMatrix& A, const CMatrix& B);
CMatrix operator*(cplx s, const CMatrix& A);
CVector operator*(const CMatrix& A, const CVector& x);

CMatrix adjoint(const CMatrix& A);    // conjugate transpose
CMatrix transpose(const CMatrix& A);  // plain transpose
CMatrix conjugate(const CMatrix& A);

double fro_norm(const CMatrix& A);
double max_abs(const CMatrix& A);
bool all_finite(const CMatrix& A);

double norm2(const CVector& x);
cplx dot(const CVector& x, const CVector& y);  // sum conj(x_i) y_i

// ---------------------------------------------------------------------------
// Norms on C^n.

struct NormSpec {
    enum class Kind { lp, weighted_lp, hilbert };
    Kind kind = Kind::hilbert;
    double p = 2.0;                       // in [1, inf]; ignored for hilbert
    std::vector<double> weights;          // weighted_lp only, strictly positive
    std::optional<double> cotype_q;       // configuration metadata only
    std::optional<double> cotype_constant;

    static NormSpec hilbert();
    static NormSpec lp(double p);
    static NormSpec weighted_lp(double p, std::vector<double> w);

    bool is_hilbert() const { return kind == Kind::hilbert; }
    bool is_lattice() const { return true; }  // all three kinds are lattices on C^n
    void check_dim(std::size_t n) const;
};

double vec_norm(const CVector& x, const NormSpec& s);
// Dual norm space under the bilinear pairing <x,x'> = sum x_i x'_i.
NormSpec dual_norm(const NormSpec& s, std::size_t dim);

// ---------------------------------------------------------------------------
// Factorizations.

struct LuFactor {
    CMatrix lu;
    std::vector<std::size_t> perm;
    bool singular = false;
};

LuFactor lu_factor(const CMatrix& A);
CVector lu_solve(const LuFactor& f, const CVector& b);
CMatrix lu_solve(const LuFactor& f, const CMatrix& B);
CMatrix inverse(const CMatrix& A);
CVector solve(const CMatrix& A, const CVector& b);

struct Svd {
    CMatrix U;               // rows x rows, unitary
    std::vector<double> s;   // descending, length min(rows, cols)
    CMatrix V;               // cols x cols, unitary;  A = U * diag(s) * V^*
};

// One-sided Jacobi SVD; high relative accuracy at desk scale.
Svd jacobi_svd(const CMatrix& A);

struct PolarDecomposition {
    CMatrix W;  // unitary (square input)
    CMatrix P;  // positive semidefinite, A = W * P
};

PolarDecomposition polar(const CMatrix& A);

struct Schur {
    CMatrix U;  // unitary
    CMatrix T;  // upper triangular, A = U T U^*
};

Schur schur(const CMatrix& A);
CVector eigenvalues(const CMatrix& A);

struct EigenDecomposition {
    CVector values;
    CMatrix vectors;       // columns are eigenvectors
    CMatrix vectors_inv;
    double cond = 0.0;     // 2-norm condition of the eigenvector matrix
};

// Diagonalizable path only; throws if the eigenvector matrix is numerically
// singular.
EigenDecomposition eig(const CMatrix& A);

// Scaling-and-squaring Taylor; absolute error budget ~1e-12 at desk scale.
CMatrix expm(const CMatrix& A);
// Principal logarithm through diagonalization; spectrum must avoid (-inf, 0].
CMatrix logm(const CMatrix& A);

// ---------------------------------------------------------------------------
// Operator norms.

struct OpNormResult {
    double value = 0.0;
    bool certified = false;  // true only for the (2,2) SVD path
    int iterations = 0;
};

// (2,2): largest singular value (certified). Other (p,q) pairs: projected
// power iteration on the unit sphere; the result is a lower bound, flagged.
OpNormResult op_norm(const CMatrix& A, const NormSpec& from, const NormSpec& to);
double op_norm22(const CMatrix& A);

// ---------------------------------------------------------------------------
// Convex decomposition of a contraction into unitaries.

struct IsometryDecomposition {
    double scale = 0.0;  // = ||A||_{2->2}
    std::vector<std::pair<double, CMatrix>> terms;  // (weight, unitary factor)

    CMatrix reconstruct() const;
};

// A = scale * sum_j weight_j * factor_j with at most dim+1 unitary factors.
// Construction: polar decompose, telescope the descending singular values
// against leading-coordinate projections, split each projection P != I as
// (1/2)I + (1/2)(2P - I) and collect identity terms.
IsometryDecomposition contraction_to_isometries(const CMatrix& A);

}  // namespace sqflab
