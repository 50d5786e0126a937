#include "sqflab/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sqflab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sq(double x) { return x * x; }

}  // namespace

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

CMatrix CMatrix::zero(std::size_t r, std::size_t c) { return CMatrix(r, c); }

CMatrix CMatrix::diag(const CVector& d) {
    CMatrix D(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) D(i, i) = d[i];
    return D;
}

CMatrix operator*(const CMatrix& A, const CMatrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matmul: shape mismatch");
    CMatrix C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t k = 0; k < A.cols; ++k) {
            const cplx aik = A(i, k);
            if (aik == cplx{}) continue;
            const cplx* brow = &B.a[k * B.cols];
            cplx* crow = &C.a[i * C.cols];
            for (std::size_t j = 0; j < B.cols; ++j) crow[j] += aik * brow[j];
        }
    }
    return C;
}

CMatrix operator+(const CMatrix& A, const CMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("matadd: shape mismatch");
    CMatrix C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
    return C;
}

CMatrix operator-(const CMatrix& A, const CMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("matsub: shape mismatch");
    CMatrix C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
    return C;
}

CMatrix operator*(cplx s, const CMatrix& A) {
    CMatrix C = A;
    for (auto& v : C.a) v *= s;
    return C;
}

CVector operator*(const CMatrix& A, const CVector& x) {
    if (A.cols != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    CVector y(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i) {
        cplx s = 0.0;
        const cplx* row = &A.a[i * A.cols];
        for (std::size_t j = 0; j < A.cols; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

CMatrix adjoint(const CMatrix& A) {
    CMatrix B(A.cols, A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) B(j, i) = std::conj(A(i, j));
    return B;
}

CMatrix transpose(const CMatrix& A) {
    CMatrix B(A.cols, A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) B(j, i) = A(i, j);
    return B;
}

CMatrix conjugate(const CMatrix& A) {
    CMatrix B = A;
    for (auto& v : B.a) v = std::conj(v);
    return B;
}

double fro_norm(const CMatrix& A) {
    double s = 0.0;
    for (const auto& v : A.a) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs(const CMatrix& A) {
    double m = 0.0;
    for (const auto& v : A.a) m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(const CMatrix& A) {
    for (const auto& v : A.a)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double norm2(const CVector& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

cplx dot(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

// ---------------------------------------------------------------------------
// NormSpec

NormSpec NormSpec::hilbert() {
    NormSpec s;
    s.kind = Kind::hilbert;
    s.p = 2.0;
    s.cotype_q = 2.0;
    s.cotype_constant = 1.0;
    return s;
}

NormSpec NormSpec::lp(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("NormSpec: p must be >= 1");
    NormSpec s;
    s.kind = Kind::lp;
    s.p = p;
    return s;
}

NormSpec NormSpec::weighted_lp(double p, std::vector<double> w) {
    if (!(p >= 1.0)) throw std::invalid_argument("NormSpec: p must be >= 1");
    for (double wi : w)
        if (!(wi > 0.0)) throw std::invalid_argument("NormSpec: weights must be positive");
    NormSpec s;
    s.kind = Kind::weighted_lp;
    s.p = p;
    s.weights = std::move(w);
    return s;
}

void NormSpec::check_dim(std::size_t n) const {
    if (kind == Kind::weighted_lp && weights.size() != n)
        throw std::invalid_argument("NormSpec: weight count does not match dimension");
}

double vec_norm(const CVector& x, const NormSpec& s) {
    s.check_dim(x.size());
    const bool weighted = s.kind == NormSpec::Kind::weighted_lp;
    const double p = s.is_hilbert() ? 2.0 : s.p;
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            m = std::max(m, (weighted ? s.weights[i] : 1.0) * std::abs(x[i]));
        return m;
    }
    if (p == 2.0 && !weighted) return norm2(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += (weighted ? s.weights[i] : 1.0) * std::pow(std::abs(x[i]), p);
    return std::pow(acc, 1.0 / p);
}

NormSpec dual_norm(const NormSpec& s, std::size_t dim) {
    s.check_dim(dim);
    if (s.is_hilbert()) return NormSpec::hilbert();
    const double p = s.p;
    const double q = std::isinf(p) ? 1.0 : (p == 1.0 ? std::numeric_limits<double>::infinity()
                                                     : p / (p - 1.0));
    if (s.kind == NormSpec::Kind::lp) return NormSpec::lp(q);
    // ||x||^p = sum w_i |x_i|^p  =>  dual weights w_i^(-q/p), q/p -> conventions
    std::vector<double> dw(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (std::isinf(p))
            dw[i] = 1.0 / s.weights[i];
        else if (std::isinf(q))
            dw[i] = std::pow(s.weights[i], -1.0 / p);
        else
            dw[i] = std::pow(s.weights[i], -q / p);
    }
    return NormSpec::weighted_lp(q, std::move(dw));
}

// ---------------------------------------------------------------------------
// LU

LuFactor lu_factor(const CMatrix& A) {
    if (!A.square()) throw std::invalid_argument("lu_factor: square matrix required");
    LuFactor f;
    f.lu = A;
    const std::size_t n = A.rows;
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(f.lu(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) {
            f.singular = true;
            continue;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
        }
        const cplx d = f.lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx m = f.lu(i, k) / d;
            f.lu(i, k) = m;
            if (m == cplx{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
        }
    }
    return f;
}

CVector lu_solve(const LuFactor& f, const CVector& b) {
    if (f.singular) throw std::domain_error("lu_solve: singular matrix");
    const std::size_t n = f.lu.rows;
    if (b.size() != n) throw std::invalid_argument("lu_solve: size mismatch");
    CVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = b[f.perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
        y[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        cplx s = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * y[j];
        y[ii] = s / f.lu(ii, ii);
    }
    return y;
}

CMatrix lu_solve(const LuFactor& f, const CMatrix& B) {
    CMatrix X(B.rows, B.cols);
    CVector col(B.rows);
    for (std::size_t j = 0; j < B.cols; ++j) {
        for (std::size_t i = 0; i < B.rows; ++i) col[i] = B(i, j);
        CVector x = lu_solve(f, col);
        for (std::size_t i = 0; i < B.rows; ++i) X(i, j) = x[i];
    }
    return X;
}

CMatrix inverse(const CMatrix& A) { return lu_solve(lu_factor(A), CMatrix::identity(A.rows)); }

CVector solve(const CMatrix& A, const CVector& b) { return lu_solve(lu_factor(A), b); }

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD

Svd jacobi_svd(const CMatrix& A) {
    if (A.empty()) throw std::invalid_argument("jacobi_svd: empty matrix");
    // Work on B with rows >= cols; flip through the adjoint otherwise.
    const bool flipped = A.rows < A.cols;
    CMatrix B = flipped ? adjoint(A) : A;
    const std::size_t m = B.rows, n = B.cols;

    // Column-major copy for cache-friendly column ops.
    std::vector<CVector> col(n, CVector(m));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) col[j][i] = B(i, j);

    CMatrix V = CMatrix::identity(n);
    const double scale = std::max(fro_norm(B), 1e-300);
    const double tol = 1e-15;

    for (int sweep = 0; sweep < 80; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double aa = 0.0, bb = 0.0;
                cplx g = 0.0;
                for (std::size_t k = 0; k < m; ++k) {
                    aa += std::norm(col[i][k]);
                    bb += std::norm(col[j][k]);
                    g += std::conj(col[i][k]) * col[j][k];
                }
                const double gabs = std::abs(g);
                if (gabs <= tol * std::sqrt(aa * bb) || gabs < 1e-300 * sq(scale)) continue;
                off = std::max(off, gabs / std::max(std::sqrt(aa * bb), 1e-300));
                const cplx phase = g / gabs;
                const double zeta = (bb - aa) / (2.0 * gabs);
                const double t =
                    (zeta >= 0.0 ? -1.0 : 1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns: ci' = c ci + s conj(phase)... rotation chosen to kill <ci|cj>.
                for (std::size_t k = 0; k < m; ++k) {
                    const cplx ci = col[i][k], cj = col[j][k];
                    col[i][k] = c * ci + s * std::conj(phase) * cj;
                    col[j][k] = -s * phase * ci + c * cj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vi = V(k, i), vj = V(k, j);
                    V(k, i) = c * vi + s * std::conj(phase) * vj;
                    V(k, j) = -s * phase * vi + c * vj;
                }
            }
        }
        if (off < tol) break;
    }

    std::vector<double> sig(n);
    for (std::size_t j = 0; j < n; ++j) sig[j] = norm2(col[j]);

    // Descending order; ties keep original column order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sig[x] > sig[y]; });

    Svd out;
    out.s.resize(std::min(m, n));
    out.V = CMatrix(n, n);
    out.U = CMatrix(m, m);
    const double rank_tol = 1e-14 * std::max(scale, 1.0);
    std::size_t next_free = 0;
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t j = order[jj];
        if (jj < out.s.size()) out.s[jj] = sig[j];
        for (std::size_t k = 0; k < n; ++k) out.V(k, jj) = V(k, j);
        if (jj < m && sig[j] > rank_tol) {
            for (std::size_t k = 0; k < m; ++k) out.U(k, jj) = col[j][k] / sig[j];
            ++next_free;
        }
    }
    // Complete U to a unitary basis for rank-deficient input.
    for (std::size_t jj = next_free; jj < m; ++jj) {
        CVector v(m);
        for (std::size_t trial = 0; trial < m; ++trial) {
            std::fill(v.begin(), v.end(), cplx{});
            v[(jj + trial) % m] = 1.0;
            for (std::size_t prev = 0; prev < jj; ++prev) {
                cplx proj = 0.0;
                for (std::size_t k = 0; k < m; ++k) proj += std::conj(out.U(k, prev)) * v[k];
                for (std::size_t k = 0; k < m; ++k) v[k] -= proj * out.U(k, prev);
            }
            if (norm2(v) > 0.5) break;
        }
        const double nv = norm2(v);
        for (std::size_t k = 0; k < m; ++k) out.U(k, jj) = v[k] / nv;
    }

    if (flipped) std::swap(out.U, out.V);
    return out;
}

PolarDecomposition polar(const CMatrix& A) {
    if (!A.square()) throw std::invalid_argument("polar: square matrix required");
    const Svd f = jacobi_svd(A);
    PolarDecomposition out;
    out.W = f.U * adjoint(f.V);
    CMatrix S = CMatrix::zero(A.rows, A.cols);
    for (std::size_t i = 0; i < f.s.size(); ++i) S(i, i) = f.s[i];
    out.P = f.V * S * adjoint(f.V);
    return out;
}

// ---------------------------------------------------------------------------
// Complex Schur form (Hessenberg + explicitly shifted QR with Givens)

Schur schur(const CMatrix& A) {
    if (!A.square()) throw std::invalid_argument("schur: square matrix required");
    const std::size_t n = A.rows;
    Schur out;
    out.T = A;
    out.U = CMatrix::identity(n);
    if (n <= 1) return out;
    CMatrix& T = out.T;
    CMatrix& U = out.U;

    // Householder reduction to Hessenberg form.
    for (std::size_t k = 0; k + 2 < n; ++k) {
        CVector v(n - k - 1);
        double xnorm = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = T(k + 1 + i, k);
            xnorm += std::norm(v[i]);
        }
        xnorm = std::sqrt(xnorm);
        if (xnorm < 1e-300) continue;
        const cplx x0 = v[0];
        const cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cplx{1.0};
        v[0] += phase * xnorm;
        double vnorm2 = 0.0;
        for (const auto& vi : v) vnorm2 += std::norm(vi);
        if (vnorm2 < 1e-300) continue;
        // T <- H T H, U <- U H with H = I - 2 v v^* / (v^* v) acting on rows k+1..n.
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * T(k + 1 + i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = 0; i < v.size(); ++i) T(k + 1 + i, j) -= s * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) s += T(i, k + 1 + j) * v[j];
            s *= 2.0 / vnorm2;
            for (std::size_t j = 0; j < v.size(); ++j) T(i, k + 1 + j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) s += U(i, k + 1 + j) * v[j];
            s *= 2.0 / vnorm2;
            for (std::size_t j = 0; j < v.size(); ++j) U(i, k + 1 + j) -= s * std::conj(v[j]);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) T(i, j) = 0.0;

    // Shifted QR on the Hessenberg form.
    const double norm_scale = std::max(fro_norm(T), 1e-300);
    std::size_t hi = n;  // active window [lo, hi)
    long iter_guard = 0;
    const long max_iters = 60 * static_cast<long>(n) + 200;
    while (hi > 1) {
        if (++iter_guard > max_iters)
            throw std::runtime_error("schur: QR iteration failed to converge");
        // Deflate.
        bool deflated = false;
        for (std::size_t m2 = hi; m2-- > 1;) {
            const double sub = std::abs(T(m2, m2 - 1));
            const double diag = std::abs(T(m2, m2)) + std::abs(T(m2 - 1, m2 - 1));
            if (sub <= 64.0 * kEps * std::max(diag, 1e-3 * norm_scale)) T(m2, m2 - 1) = 0.0;
        }
        while (hi > 1 && T(hi - 1, hi - 2) == cplx{}) {
            --hi;
            deflated = true;
        }
        if (hi <= 1) break;
        std::size_t lo = hi - 1;
        while (lo > 0 && T(lo, lo - 1) != cplx{}) --lo;
        if (deflated) continue;

        // Wilkinson shift from the trailing 2x2 block.
        const cplx a = T(hi - 2, hi - 2), b = T(hi - 2, hi - 1);
        const cplx c = T(hi - 1, hi - 2), d = T(hi - 1, hi - 1);
        const cplx tr = a + d;
        const cplx disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
        const cplx l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
        cplx mu = (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
        if (iter_guard % 17 == 0) mu += 0.5 * std::abs(T(hi - 1, hi - 2));  // exceptional shift

        for (std::size_t i = lo; i < hi; ++i) T(i, i) -= mu;
        // QR by Givens on the window, then RQ.
        std::vector<std::pair<cplx, cplx>> rot(hi - lo - 1);
        for (std::size_t i = lo; i + 1 < hi; ++i) {
            const cplx f = T(i, i), g = T(i + 1, i);
            const double r = std::sqrt(std::norm(f) + std::norm(g));
            cplx cc = 1.0, ss = 0.0;
            if (r > 1e-300) {
                cc = f / r;
                ss = g / r;
            }
            rot[i - lo] = {cc, ss};
            // Rows i, i+1: G^* from the left.
            for (std::size_t k = i; k < n; ++k) {
                const cplx x = T(i, k), y = T(i + 1, k);
                T(i, k) = std::conj(cc) * x + std::conj(ss) * y;
                T(i + 1, k) = -ss * x + cc * y;
            }
        }
        for (std::size_t i = lo; i + 1 < hi; ++i) {
            const auto [cc, ss] = rot[i - lo];
            // Columns i, i+1: G from the right.
            const std::size_t top = std::min(i + 2, hi);
            for (std::size_t k = 0; k < top; ++k) {
                const cplx x = T(k, i), y = T(k, i + 1);
                T(k, i) = cc * x + ss * y;
                T(k, i + 1) = -std::conj(ss) * x + std::conj(cc) * y;
            }
            for (std::size_t k = 0; k < n; ++k) {
                const cplx x = U(k, i), y = U(k, i + 1);
                U(k, i) = cc * x + ss * y;
                U(k, i + 1) = -std::conj(ss) * x + std::conj(cc) * y;
            }
        }
        for (std::size_t i = lo; i < hi; ++i) T(i, i) += mu;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) T(i, j) = 0.0;
    return out;
}

CVector eigenvalues(const CMatrix& A) {
    const Schur s = schur(A);
    CVector vals(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i) vals[i] = s.T(i, i);
    return vals;
}

EigenDecomposition eig(const CMatrix& A) {
    const std::size_t n = A.rows;
    const Schur s = schur(A);
    EigenDecomposition out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = s.T(i, i);

    // Eigenvectors of the triangular factor by back substitution.
    CMatrix Y(n, n);
    const double scale = std::max(fro_norm(s.T), 1e-300);
    for (std::size_t i = 0; i < n; ++i) {
        Y(i, i) = 1.0;
        for (std::size_t jj = i; jj-- > 0;) {
            cplx acc = 0.0;
            for (std::size_t k = jj + 1; k <= i; ++k) acc += s.T(jj, k) * Y(k, i);
            cplx den = s.T(jj, jj) - s.T(i, i);
            if (std::abs(den) < 1e3 * kEps * scale)
                den = cplx{1e3 * kEps * scale, 0.0};
            Y(jj, i) = -acc / den;
        }
        double nrm = 0.0;
        for (std::size_t k = 0; k <= i; ++k) nrm += std::norm(Y(k, i));
        nrm = std::sqrt(nrm);
        for (std::size_t k = 0; k <= i; ++k) Y(k, i) /= nrm;
    }
    out.vectors = s.U * Y;
    const Svd f = jacobi_svd(out.vectors);
    if (f.s.back() <= 1e-13 * f.s.front())
        throw std::domain_error("eig: eigenvector matrix numerically singular (non-diagonalizable?)");
    out.cond = f.s.front() / f.s.back();
    out.vectors_inv = inverse(out.vectors);
    return out;
}

// ---------------------------------------------------------------------------
// Matrix exponential / logarithm

CMatrix expm(const CMatrix& A) {
    if (!A.square()) throw std::invalid_argument("expm: square matrix required");
    const std::size_t n = A.rows;
    double anorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double rs = 0.0;
        for (std::size_t j = 0; j < n; ++j) rs += std::abs(A(i, j));
        anorm = std::max(anorm, rs);
    }
    int s = 0;
    double scaled = anorm;
    while (scaled > 0.5) {
        scaled *= 0.5;
        ++s;
    }
    CMatrix B = (cplx{std::ldexp(1.0, -s)}) * A;
    CMatrix E = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = (cplx{1.0 / k}) * (term * B);
        E = E + term;
        if (fro_norm(term) < 1e-20 * std::max(1.0, fro_norm(E))) break;
    }
    for (int k = 0; k < s; ++k) E = E * E;
    return E;
}

CMatrix logm(const CMatrix& A) {
    const EigenDecomposition d = eig(A);
    const std::size_t n = A.rows;
    for (const auto& l : d.values) {
        if (l.real() <= 0.0 && std::abs(l.imag()) < 1e-14 * std::abs(l))
            throw std::domain_error("logm: spectrum touches (-inf, 0]");
        if (l == cplx{}) throw std::domain_error("logm: singular matrix");
    }
    CMatrix L(n, n);
    for (std::size_t i = 0; i < n; ++i) L(i, i) = std::log(d.values[i]);
    return d.vectors * L * d.vectors_inv;
}

// ---------------------------------------------------------------------------
// Operator norms

double op_norm22(const CMatrix& A) {
    const Svd f = jacobi_svd(A);
    return f.s.empty() ? 0.0 : f.s.front();
}

namespace {

// Norming functional: u with sum_i u_i y_i = ||y||_s and unit dual norm
// (bilinear pairing).
CVector norm_dual_vector(const CVector& y, const NormSpec& s) {
    const std::size_t n = y.size();
    const bool weighted = s.kind == NormSpec::Kind::weighted_lp;
    const double p = s.is_hilbert() ? 2.0 : s.p;
    CVector u(n);
    const double ny = vec_norm(y, s);
    if (ny == 0.0) return u;
    if (std::isinf(p)) {
        std::size_t best = 0;
        double bv = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = (weighted ? s.weights[i] : 1.0) * std::abs(y[i]);
            if (v > bv) {
                bv = v;
                best = i;
            }
        }
        u[best] = (std::abs(y[best]) > 0 ? std::conj(y[best]) / std::abs(y[best]) : cplx{1.0}) *
                  (weighted ? s.weights[best] : 1.0);
        return u;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double ai = std::abs(y[i]);
        if (ai == 0.0) continue;
        const double w = weighted ? s.weights[i] : 1.0;
        u[i] = std::conj(y[i]) / ai * w * std::pow(ai / ny, p - 1.0);
    }
    return u;
}

// Maximizer of Re(sum_i g_i x_i) over the unit sphere of s (Holder equality).
CVector holder_maximizer(const CVector& g, const NormSpec& s) {
    const std::size_t n = g.size();
    const bool weighted = s.kind == NormSpec::Kind::weighted_lp;
    const double p = s.is_hilbert() ? 2.0 : s.p;
    CVector x(n);
    if (std::isinf(p)) {
        for (std::size_t i = 0; i < n; ++i) {
            const double w = weighted ? s.weights[i] : 1.0;
            x[i] = (std::abs(g[i]) > 0 ? std::conj(g[i]) / std::abs(g[i]) : cplx{1.0}) / w;
        }
        return x;
    }
    if (p == 1.0) {
        std::size_t best = 0;
        double bv = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = weighted ? s.weights[i] : 1.0;
            const double v = std::abs(g[i]) / w;
            if (v > bv) {
                bv = v;
                best = i;
            }
        }
        const double w = weighted ? s.weights[best] : 1.0;
        x[best] = (std::abs(g[best]) > 0 ? std::conj(g[best]) / std::abs(g[best]) : cplx{1.0}) / w;
        return x;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double ai = std::abs(g[i]);
        if (ai == 0.0) continue;
        const double w = weighted ? s.weights[i] : 1.0;
        x[i] = std::conj(g[i]) / ai * std::pow(ai / w, 1.0 / (p - 1.0));
    }
    return x;
}

// Normalize x to unit p-norm.
void normalize_in(CVector& x, const NormSpec& s) {
    const double n = vec_norm(x, s);
    if (n > 0)
        for (auto& v : x) v /= n;
}

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

OpNormResult op_norm(const CMatrix& A, const NormSpec& from, const NormSpec& to) {
    if (A.empty()) throw std::invalid_argument("op_norm: empty matrix");
    from.check_dim(A.cols);
    to.check_dim(A.rows);
    OpNormResult res;
    const bool from22 = (from.is_hilbert() || (from.kind == NormSpec::Kind::lp && from.p == 2.0));
    const bool to22 = (to.is_hilbert() || (to.kind == NormSpec::Kind::lp && to.p == 2.0));
    if (from22 && to22) {
        res.value = op_norm22(A);
        res.certified = true;
        return res;
    }
    // Projected power iteration; certified lower bound only.
    const CMatrix At = transpose(A);
    double best = 0.0;
    uint64_t rng = 0x5EED5EED5EEDULL;
    const int restarts = 6, iters = 40;
    for (int r = 0; r < restarts; ++r) {
        CVector x(A.cols);
        if (r == 0)
            std::fill(x.begin(), x.end(), cplx{1.0});
        else
            for (auto& v : x) {
                const double re = (double)(splitmix64(rng) >> 11) * 0x1p-53 - 0.5;
                const double im = (double)(splitmix64(rng) >> 11) * 0x1p-53 - 0.5;
                v = cplx{re, im};
            }
        normalize_in(x, from);
        for (int it = 0; it < iters; ++it) {
            CVector y = A * x;
            const double val = vec_norm(y, to);
            best = std::max(best, val);
            if (val == 0.0) break;
            // Ascent step: u norms y, then maximize the bilinear form
            // (A^T u) . x over the source sphere.
            CVector u = norm_dual_vector(y, to);
            CVector g = At * u;
            CVector xn = holder_maximizer(g, from);
            if (vec_norm(xn, from) == 0.0) break;
            normalize_in(xn, from);
            x = std::move(xn);
            ++res.iterations;
        }
    }
    res.value = best;
    res.certified = false;
    return res;
}

// ---------------------------------------------------------------------------
// Contractions as convex combinations of unitaries

CMatrix IsometryDecomposition::reconstruct() const {
    if (terms.empty()) return CMatrix();
    CMatrix acc = CMatrix::zero(terms.front().second.rows, terms.front().second.cols);
    for (const auto& [w, F] : terms) acc = acc + (cplx{w} * F);
    return cplx{scale} * acc;
}

IsometryDecomposition contraction_to_isometries(const CMatrix& A) {
    if (!A.square()) throw std::invalid_argument("contraction_to_isometries: square matrix required");
    const std::size_t d = A.rows;
    IsometryDecomposition out;
    const double nrm = op_norm22(A);
    if (nrm == 0.0) {
        out.scale = 0.0;
        out.terms.emplace_back(1.0, CMatrix::identity(d));
        return out;
    }
    out.scale = nrm;
    const Svd f = jacobi_svd(A);
    // A/||A|| = W V diag(lambda) V^* with lambda_1 = 1 >= ... >= lambda_d >= 0.
    const CMatrix W = f.U * adjoint(f.V);
    std::vector<double> lam(d);
    for (std::size_t i = 0; i < d; ++i) lam[i] = f.s[i] / nrm;
    lam[0] = 1.0;

    // diag(lambda) = sum_j (lambda_j - lambda_{j+1}) P_j, P_j leading j-coordinate
    // projection, lambda_{d+1} = 0; then P_j = I/2 + (2P_j - I)/2 for j < d.
    double id_weight = 0.0;
    std::vector<std::pair<double, std::size_t>> refl;  // (weight, j) for 2P_j - I
    for (std::size_t j = 0; j < d; ++j) {
        const double w = lam[j] - (j + 1 < d ? lam[j + 1] : 0.0);
        if (w <= 0.0) continue;
        if (j + 1 == d) {
            id_weight += w;
        } else {
            id_weight += 0.5 * w;
            refl.emplace_back(0.5 * w, j + 1);  // projection rank j+1
        }
    }
    const CMatrix WV = W * (cplx{1.0} * f.V);
    const CMatrix Vh = adjoint(f.V);
    if (id_weight > 0.0) out.terms.emplace_back(id_weight, W);
    for (const auto& [w, rank] : refl) {
        CMatrix D = CMatrix::zero(d, d);
        for (std::size_t i = 0; i < d; ++i) D(i, i) = (i < rank) ? 1.0 : -1.0;
        out.terms.emplace_back(w, WV * D * Vh);
    }
    return out;
}

}  // namespace sqflab
