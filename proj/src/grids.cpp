#include "sqflab/grids.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace sqflab {

double DiscreteHilbert::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

cplx grid_inner(const DiscreteHilbert& g, const CVector& f, const CVector& h) {
    if (f.size() != g.size() || h.size() != g.size())
        throw std::invalid_argument("grid_inner: size mismatch");
    cplx s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) s += g.weights[j] * f[j] * std::conj(h[j]);
    return s;
}

double grid_norm(const DiscreteHilbert& g, const CVector& f) {
    if (f.size() != g.size()) throw std::invalid_argument("grid_norm: size mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) s += g.weights[j] * std::norm(f[j]);
    return std::sqrt(s);
}

CVector sample(const DiscreteHilbert& g, const std::function<cplx(cplx)>& f) {
    CVector v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = f(g.nodes[j]);
    return v;
}

cplx Contour::integrate(const std::function<cplx(cplx)>& f) const {
    cplx s = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) s += dz[j] * f(nodes[j]);
    return s;
}

namespace {

void check_grid_params(double T, std::size_t n) {
    if (!(T > 0.0)) throw std::invalid_argument("make_grid: half width must be positive");
    if (n < 8) throw std::invalid_argument("make_grid: need at least 8 points");
}

// Composite trapezoid weights for an ordered 1-d node list.
std::vector<double> trapezoid_weights(const std::vector<double>& t) {
    std::vector<double> w(t.size(), 0.0);
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
        const double h2 = 0.5 * (t[j + 1] - t[j]);
        w[j] += h2;
        w[j + 1] += h2;
    }
    return w;
}

}  // namespace

DiscreteHilbert make_lebesgue_line(double half_width, std::size_t n) {
    check_grid_params(half_width, n);
    DiscreteHilbert g;
    g.tag = MeasureTag::lebesgue_line;
    g.nodes.resize(n);
    const double h = 2.0 * half_width / static_cast<double>(n - 1);
    std::vector<double> t(n);
    for (std::size_t j = 0; j < n; ++j) t[j] = -half_width + h * static_cast<double>(j);
    g.weights = trapezoid_weights(t);
    for (std::size_t j = 0; j < n; ++j) g.nodes[j] = t[j];
    return g;
}

DiscreteHilbert make_mult_haar(double eps, double T, std::size_t n) {
    if (!(eps > 0.0 && eps < T)) throw std::invalid_argument("make_mult_haar: need 0 < eps < T");
    if (n < 8) throw std::invalid_argument("make_mult_haar: need at least 8 points");
    DiscreteHilbert g;
    g.tag = MeasureTag::mult_haar;
    const double lo = std::log(eps), hi = std::log(T);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = lo + h * static_cast<double>(j);
    g.weights = trapezoid_weights(u);  // d(log t)
    g.nodes.resize(n);
    for (std::size_t j = 0; j < n; ++j) g.nodes[j] = std::exp(u[j]);
    return g;
}

DiscreteHilbert make_boundary_strip(double omega, double half_width, std::size_t n_per_line) {
    if (!(omega > 0.0)) throw std::invalid_argument("make_boundary_strip: omega must be positive");
    check_grid_params(half_width, n_per_line);
    DiscreteHilbert g;
    g.tag = MeasureTag::boundary_strip;
    g.omega = omega;
    const double h = 2.0 * half_width / static_cast<double>(n_per_line - 1);
    std::vector<double> t(n_per_line);
    for (std::size_t j = 0; j < n_per_line; ++j) t[j] = -half_width + h * static_cast<double>(j);
    const std::vector<double> w = trapezoid_weights(t);
    for (int line = 0; line < 2; ++line) {
        const double im = (line == 0) ? -omega : omega;
        for (std::size_t j = 0; j < n_per_line; ++j) {
            g.nodes.push_back(cplx{t[j], im});
            g.weights.push_back(w[j]);
        }
    }
    return g;
}

DiscreteHilbert make_boundary_strip_sinh(double omega, double u_max, std::size_t n_per_line) {
    if (!(omega > 0.0)) throw std::invalid_argument("make_boundary_strip_sinh: omega > 0 required");
    check_grid_params(u_max, n_per_line);
    DiscreteHilbert g;
    g.tag = MeasureTag::boundary_strip;
    g.omega = omega;
    const double h = 2.0 * u_max / static_cast<double>(n_per_line - 1);
    // Exact change of variables t = sinh(u): trapezoid in u, Jacobian cosh(u).
    std::vector<double> t(n_per_line), w(n_per_line);
    for (std::size_t j = 0; j < n_per_line; ++j) {
        const double u = -u_max + h * static_cast<double>(j);
        t[j] = std::sinh(u);
        w[j] = std::cosh(u) * h * ((j == 0 || j + 1 == n_per_line) ? 0.5 : 1.0);
    }
    for (int line = 0; line < 2; ++line) {
        const double im = (line == 0) ? -omega : omega;
        for (std::size_t j = 0; j < n_per_line; ++j) {
            g.nodes.push_back(cplx{t[j], im});
            g.weights.push_back(w[j]);
        }
    }
    return g;
}

Contour make_strip_contour(double omega, double half_width, std::size_t n_per_line) {
    if (!(omega > 0.0)) throw std::invalid_argument("make_strip_contour: omega must be positive");
    check_grid_params(half_width, n_per_line);
    Contour c;
    c.descriptor = "boundary-strip";
    const double h = 2.0 * half_width / static_cast<double>(n_per_line - 1);
    std::vector<double> t(n_per_line);
    for (std::size_t j = 0; j < n_per_line; ++j) t[j] = -half_width + h * static_cast<double>(j);
    const std::vector<double> w = trapezoid_weights(t);
    // Bottom line left to right (strip on the left), top line right to left.
    for (std::size_t j = 0; j < n_per_line; ++j) {
        c.nodes.push_back(cplx{t[j], -omega});
        c.dz.push_back(cplx{w[j], 0.0});
    }
    for (std::size_t j = 0; j < n_per_line; ++j) {
        c.nodes.push_back(cplx{t[j], omega});
        c.dz.push_back(cplx{-w[j], 0.0});
    }
    return c;
}

Contour make_keyhole_contour(double omega, double radius, double T, std::size_t n_per_ray,
                             std::size_t n_arc) {
    if (!(omega > 0.5 * M_PI && omega <= M_PI))
        throw std::invalid_argument("make_keyhole_contour: need pi/2 < omega <= pi");
    if (!(radius > 0.0 && T > radius))
        throw std::invalid_argument("make_keyhole_contour: need 0 < radius < T");
    if (n_per_ray < 8 || n_arc < 8)
        throw std::invalid_argument("make_keyhole_contour: too few nodes");
    Contour c;
    c.descriptor = "boundary-keyhole";
    // Radial nodes graded toward the joint at |z| = radius: s = radius e^v,
    // trapezoid in v with Jacobian s.
    std::vector<double> s(n_per_ray), ws(n_per_ray);
    const double vmax = std::log(T / radius);
    const double dv = vmax / static_cast<double>(n_per_ray - 1);
    for (std::size_t j = 0; j < n_per_ray; ++j) {
        s[j] = radius * std::exp(dv * static_cast<double>(j));
        ws[j] = s[j] * dv * ((j == 0 || j + 1 == n_per_ray) ? 0.5 : 1.0);
    }
    // In along the lower ray (from T down to radius).
    const cplx elo = std::exp(cplx{0.0, -omega});
    for (std::size_t j = n_per_ray; j-- > 0;) {
        c.nodes.push_back(s[j] * elo);
        c.dz.push_back(-ws[j] * elo);
    }
    // Arc of radius r from -omega to omega, counterclockwise through 0.
    std::vector<double> th(n_arc);
    for (std::size_t j = 0; j < n_arc; ++j)
        th[j] = -omega + 2.0 * omega * static_cast<double>(j) / static_cast<double>(n_arc - 1);
    const std::vector<double> wth = trapezoid_weights(th);
    for (std::size_t j = 0; j < n_arc; ++j) {
        const cplx z = radius * std::exp(cplx{0.0, th[j]});
        c.nodes.push_back(z);
        c.dz.push_back(iunit * z * wth[j]);
    }
    // Out along the upper ray.
    const cplx ehi = std::exp(cplx{0.0, omega});
    for (std::size_t j = 0; j < n_per_ray; ++j) {
        c.nodes.push_back(s[j] * ehi);
        c.dz.push_back(ws[j] * ehi);
    }
    return c;
}

FourierResult discrete_fourier(const DiscreteHilbert& line, const CVector& g,
                               const std::vector<double>& eval_points, bool inverse, double tol) {
    if (line.tag != MeasureTag::lebesgue_line)
        throw std::invalid_argument("discrete_fourier: lebesgue-line grid required");
    if (g.size() != line.size()) throw std::invalid_argument("discrete_fourier: size mismatch");
    FourierResult out;
    // Edge-decay check: the transform silently loses the truncated tails.
    double peak = 0.0;
    for (const auto& v : g) peak = std::max(peak, std::abs(v));
    const double edge = std::max(std::abs(g.front()), std::abs(g.back()));
    out.edge_decay_ok = edge <= 1e-3 * tol * std::max(peak, 1.0);
    out.values.resize(eval_points.size());
    const double scale = inverse ? 1.0 / (2.0 * M_PI) : 1.0;
    for (std::size_t k = 0; k < eval_points.size(); ++k) {
        const double t = eval_points[k];
        cplx acc = 0.0;
        for (std::size_t j = 0; j < line.size(); ++j) {
            const double sj = line.nodes[j].real();
            acc += line.weights[j] * g[j] * std::exp(cplx{0.0, sj * t});
        }
        out.values[k] = scale * acc;
    }
    return out;
}

cplx pv_convolution_at(const Contour& c, const CVector& h, std::size_t at) {
    if (h.size() != c.size()) throw std::invalid_argument("pv_convolution: size mismatch");
    if (at >= c.size()) throw std::invalid_argument("pv_convolution: lambda not on grid");
    const cplx lambda = c.nodes[at];
    cplx acc = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (j == at) continue;  // symmetric neighbours cancel the odd part
        acc += h[j] * c.dz[j] / (lambda - c.nodes[j]);
    }
    return acc;
}

CVector pv_convolution(const Contour& c, const CVector& h, const std::vector<std::size_t>& at) {
    CVector out(at.size());
    for (std::size_t k = 0; k < at.size(); ++k) out[k] = pv_convolution_at(c, h, at[k]);
    return out;
}

void write_grid_csv(const DiscreteHilbert& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_grid_csv: cannot open " + path);
    f << "re_node,im_node,weight\n";
    f.precision(17);
    for (std::size_t j = 0; j < g.size(); ++j)
        f << g.nodes[j].real() << "," << g.nodes[j].imag() << "," << g.weights[j] << "\n";
}

}  // namespace sqflab
