#include "trapwell/fdsolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/SparseLU>

#include "trapwell/errors.hpp"
#include "trapwell/parallel.hpp"

namespace trapwell {

namespace {

// Ramps thinner than this per grid step are merged into their junctions.
constexpr double collapse_spacing = 1e-8;

double zone_potential(const well_spec& w, zone z, double x) {
    switch (z) {
        case zone::z1: return w.v1;
        case zone::z1p: return std::clamp(w.v1 * (-1 - x) / w.lambda, 0.0, w.v1);
        case zone::z0: return 0.0;
        case zone::z2p: return std::clamp(w.v2 * (x - 1) / w.lambda, 0.0, w.v2);
        case zone::z2: return w.v2;
    }
    return 0.0;
}

// Nodal potential; shared points take the mean of both zone values, which
// only matters when the ramps are collapsed.
std::vector<double> nodal_potential(const well_spec& w, const fd_grid& g) {
    std::vector<double> v(g.points.size(), 0.0);
    for (std::size_t z = 0; z < g.zones.size(); ++z) {
        const auto& s = g.zones[z];
        for (std::size_t i = s.first; i <= s.last; ++i) {
            double val = zone_potential(w, s.label, g.points[i]);
            if (i == s.first && z > 0) v[i] = 0.5 * (v[i] + val);
            else v[i] = val;
        }
    }
    return v;
}

struct tridiagonal {
    std::vector<double> diag, off;  // off[i] couples i and i+1
    std::vector<double> w_sqrt;
};

tridiagonal flux_form(const well_spec& w, const fd_grid& g) {
    const auto& x = g.points;
    const std::size_t n = x.size() - 2;
    std::vector<double> v = nodal_potential(w, g);
    tridiagonal t;
    t.diag.resize(n);
    t.off.resize(n > 0 ? n - 1 : 0);
    t.w_sqrt.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = k + 1;
        t.w_sqrt[k] = std::sqrt(0.5 * (x[i + 1] - x[i - 1]));
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = k + 1;
        double hm = x[i] - x[i - 1], hp = x[i + 1] - x[i];
        double wk = t.w_sqrt[k] * t.w_sqrt[k];
        t.diag[k] = (1 / hm + 1 / hp) / wk + v[i];
        if (k + 1 < n) t.off[k] = -1 / (hp * t.w_sqrt[k] * t.w_sqrt[k + 1]);
    }
    return t;
}

// Sturm count of eigenvalues below sigma from the LDL^T pivots; -1 when a
// pivot vanishes exactly.
int sturm_count(const tridiagonal& t, double sigma) {
    int count = 0;
    double d = 0;
    for (std::size_t k = 0; k < t.diag.size(); ++k) {
        d = t.diag[k] - sigma - (k > 0 ? t.off[k - 1] * t.off[k - 1] / d : 0.0);
        if (d == 0) return -1;
        if (d < 0) ++count;
    }
    return count;
}

int robust_count(const tridiagonal& t, double sigma, double v2) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        int c = sturm_count(t, sigma);
        if (c >= 0) return c;
        sigma += 1e-10 * v2;
    }
    throw numerical_error("fd: LDL^T breakdown persisted after shift perturbation");
}

double bisection_width(double v2) { return 1e-12 * std::max(1.0, v2); }

std::vector<double> order2_eigenvalues(const tridiagonal& t, double v2, int count) {
    std::vector<double> out(count);
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t k) {
        double lo = 0, hi = v2;
        while (hi - lo > bisection_width(v2)) {
            double mid = 0.5 * (lo + hi);
            if (robust_count(t, mid, v2) > static_cast<int>(k)) hi = mid;
            else lo = mid;
        }
        out[k] = 0.5 * (lo + hi);
    });
    return out;
}

Eigen::SparseMatrix<double> to_sparse(const tridiagonal& t) {
    const Eigen::Index n = static_cast<Eigen::Index>(t.diag.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(3 * t.diag.size());
    for (Eigen::Index k = 0; k < n; ++k) {
        trip.emplace_back(k, k, t.diag[k]);
        if (k + 1 < n) {
            trip.emplace_back(k, k + 1, t.off[k]);
            trip.emplace_back(k + 1, k, t.off[k]);
        }
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    return m;
}

Eigen::SparseMatrix<double> shifted(const Eigen::SparseMatrix<double>& h, double sigma) {
    Eigen::SparseMatrix<double> a = h;
    for (Eigen::Index k = 0; k < a.rows(); ++k) a.coeffRef(k, k) -= sigma;
    return a;
}

// Sign of det(H - sigma I); 0 when the factorization fails.
int det_sign(Eigen::SparseLU<Eigen::SparseMatrix<double>>& lu, const Eigen::SparseMatrix<double>& h,
             double sigma) {
    lu.factorize(shifted(h, sigma));
    if (lu.info() != Eigen::Success) return 0;
    double s = lu.signDeterminant();
    return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

Eigen::VectorXd inverse_iteration(const Eigen::SparseMatrix<double>& h, double beta) {
    const double sigma = beta * (1 + 1e-11) + 1e-14;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(h);
    lu.factorize(shifted(h, sigma));
    if (lu.info() != Eigen::Success) throw numerical_error("fd: inverse iteration factorization failed");
    Eigen::VectorXd x = Eigen::VectorXd::Ones(h.rows());
    for (int it = 0; it < 4; ++it) {
        x = lu.solve(x);
        double nx = x.norm();
        if (!(nx > 0) || !std::isfinite(nx)) throw numerical_error("fd: inverse iteration diverged");
        x /= nx;
    }
    return x;
}

void normalize(const std::vector<double>& x, Eigen::VectorXd& phi) {
    double integral = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        integral += 0.5 * (phi[i] * phi[i] + phi[i + 1] * phi[i + 1]) * (x[i + 1] - x[i]);
    phi *= std::sqrt(2.0 / integral);
    Eigen::Index imax;
    phi.cwiseAbs().maxCoeff(&imax);
    if (phi[imax] < 0) phi = -phi;
}

}  // namespace

std::size_t fd_grid::total_points() const {
    std::size_t n = 0;
    for (const auto& z : zones) n += z.last - z.first + 1;
    return n;
}

fd_grid build_grid(const well_spec& w, int points_per_zone, double decay_margin, int exterior_points) {
    validate(w);
    if (!(w.lambda > 0)) throw validation_error("fd grid requires lambda > 0");
    if (points_per_zone < 51 || points_per_zone % 2 == 0)
        throw validation_error("points_per_zone must be odd and >= 51");
    if (!(decay_margin > 0)) throw validation_error("decay_margin must be > 0");
    if (exterior_points == 0) exterior_points = points_per_zone;
    if (exterior_points < 51) throw validation_error("exterior_points must be >= 51");

    fd_grid g;
    g.points_per_zone = points_per_zone;
    g.exterior_points = exterior_points;
    g.decay_margin = decay_margin;
    g.ramps_collapsed = w.lambda / (points_per_zone - 1) < collapse_spacing;
    const double l = g.ramps_collapsed ? 0.0 : w.lambda;
    g.cut_left = -(1 + w.lambda) - decay_margin / std::sqrt(w.v1);
    g.cut_right = (1 + w.lambda) + decay_margin / std::sqrt(w.v2);

    struct raw {
        zone z;
        double lo, hi;
        int n;
    };
    std::vector<raw> spans;
    spans.push_back({zone::z1, g.cut_left, -1 - l, exterior_points});
    if (!g.ramps_collapsed) spans.push_back({zone::z1p, -1 - l, -1, points_per_zone});
    spans.push_back({zone::z0, -1, 1, points_per_zone});
    if (!g.ramps_collapsed) spans.push_back({zone::z2p, 1, 1 + l, points_per_zone});
    spans.push_back({zone::z2, 1 + l, g.cut_right, exterior_points});

    for (std::size_t s = 0; s < spans.size(); ++s) {
        const raw& r = spans[s];
        fd_zone_span span;
        span.label = r.z;
        span.lo = r.lo;
        span.hi = r.hi;
        span.spacing = (r.hi - r.lo) / (r.n - 1);
        if (s == 0) {
            span.first = 0;
            g.points.push_back(r.lo);
        } else {
            span.first = g.points.size() - 1;
            g.junctions.push_back(span.first);
        }
        for (int j = 1; j < r.n; ++j)
            g.points.push_back(j == r.n - 1 ? r.hi : r.lo + span.spacing * j);
        span.last = g.points.size() - 1;
        g.zones.push_back(span);
    }
    return g;
}

std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size());
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    double c1 = 1, c4 = x[0] - z;
    c[0][0] = 1;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1, c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

fd_operator build_operator(const well_spec& w, const fd_grid& g, int order) {
    if (order != 2 && order != 4 && order != 6) throw validation_error("fd order must be 2, 4 or 6");
    fd_operator op;
    op.order = order;
    const auto& x = g.points;
    const std::size_t npts = x.size();

    if (order == 2) {
        tridiagonal t = flux_form(w, g);
        op.matrix = to_sparse(t);
        op.w_sqrt = Eigen::Map<Eigen::VectorXd>(t.w_sqrt.data(), static_cast<Eigen::Index>(t.w_sqrt.size()));
        for (std::size_t i = 1; i + 1 < npts; ++i) op.unknowns.push_back(i);
        op.asymmetry = 0;
        return op;
    }

    const int p = order;
    std::vector<char> is_junction(npts, 0);
    for (auto j : g.junctions) is_junction[j] = 1;
    std::vector<long> col(npts, -1);
    for (std::size_t i = 1; i + 1 < npts; ++i) {
        if (is_junction[i]) continue;
        col[i] = static_cast<long>(op.unknowns.size());
        op.unknowns.push_back(i);
    }

    // junction values from one-sided first-derivative continuity
    std::vector<long> elim_of(npts, -1);
    for (std::size_t z = 0; z + 1 < g.zones.size(); ++z) {
        const auto& zl = g.zones[z];
        std::size_t jn = zl.last;
        std::vector<double> xl, xr;
        for (std::size_t i = jn - p; i <= jn; ++i) xl.push_back(x[i]);
        for (std::size_t i = jn; i <= jn + p; ++i) xr.push_back(x[i]);
        auto a = fornberg_weights(x[jn], xl, 1)[1];
        auto b = fornberg_weights(x[jn], xr, 1)[1];
        double c = a.back() - b.front();
        fd_operator::elimination e;
        e.junction = jn;
        for (int k = 0; k < p; ++k) e.terms.emplace_back(jn - p + k, -a[k] / c);
        for (int k = 1; k <= p; ++k) e.terms.emplace_back(jn + k, b[k] / c);
        elim_of[jn] = static_cast<long>(op.eliminated.size());
        op.eliminated.push_back(std::move(e));
    }

    std::vector<Eigen::Triplet<double>> trip;
    auto add = [&](long row, std::size_t pt, double val) {
        if (pt == 0 || pt == npts - 1) return;  // Dirichlet cut
        if (is_junction[pt]) {
            for (const auto& [q, cq] : op.eliminated[elim_of[pt]].terms)
                if (q != 0 && q != npts - 1) trip.emplace_back(row, col[q], val * cq);
            return;
        }
        trip.emplace_back(row, col[pt], val);
    };

    for (const auto& zs : g.zones) {
        const long m = static_cast<long>(zs.last - zs.first + 1);
        for (long j = 1; j < m - 1; ++j) {
            std::size_t i = zs.first + j;
            long start, len;
            if (j - p / 2 >= 0 && j + p / 2 <= m - 1) {
                start = j - p / 2;
                len = p + 1;
            } else {
                len = p + 2;
                start = std::clamp(j - len / 2, 0L, m - len);
            }
            std::vector<double> xs;
            for (long k = 0; k < len; ++k) xs.push_back(x[zs.first + start + k]);
            auto wts = fornberg_weights(x[i], xs, 2)[2];
            const long row = col[i];
            for (long k = 0; k < len; ++k) add(row, zs.first + start + k, -wts[k]);
            add(row, i, zone_potential(w, zs.label, x[i]));
        }
    }
    const Eigen::Index n = static_cast<Eigen::Index>(op.unknowns.size());
    op.matrix.resize(n, n);
    op.matrix.setFromTriplets(trip.begin(), trip.end());
    op.matrix.makeCompressed();
    Eigen::SparseMatrix<double> ht = op.matrix.transpose();
    op.asymmetry = (op.matrix - ht).norm() / op.matrix.norm();
    return op;
}

Eigen::VectorXd apply_operator(const well_spec& w, const fd_grid& g, int order, const Eigen::VectorXd& f) {
    if (f.size() != static_cast<Eigen::Index>(g.points.size()))
        throw validation_error("apply_operator: sample count does not match the grid");
    fd_operator op = build_operator(w, g, order);
    Eigen::VectorXd u(op.unknowns.size());
    for (std::size_t k = 0; k < op.unknowns.size(); ++k) u[k] = f[op.unknowns[k]];
    if (order == 2) return (op.matrix * u.cwiseProduct(op.w_sqrt)).cwiseQuotient(op.w_sqrt);
    return op.matrix * u;
}

int fd_count_below(const well_spec& w, const fd_grid& g, double sigma) {
    return robust_count(flux_form(w, g), sigma, w.v2);
}

fd_result fd_eigenvalues(const well_spec& w, const fd_grid& g, int order) {
    fd_operator op = build_operator(w, g, order);
    tridiagonal t = flux_form(w, g);
    fd_result res;
    res.order = order;
    res.asymmetry = op.asymmetry;
    res.size = op.unknowns.size();
    res.inertia_count = robust_count(t, w.v2, w.v2);
    std::vector<double> base = order2_eigenvalues(t, w.v2, res.inertia_count);

    const std::size_t npts = g.points.size();
    std::vector<double> betas(base.size(), std::nan(""));
    if (order == 2) {
        betas = base;
    } else {
        const double tol = bisection_width(w.v2);
        parallel_for(base.size(), [&](std::size_t k) {
            Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
            lu.analyzePattern(op.matrix);
            double lo = k == 0 ? 0.5 * base[0] : 0.5 * (base[k - 1] + base[k]);
            double hi = k + 1 == base.size() ? w.v2 : 0.5 * (base[k] + base[k + 1]);
            int slo = det_sign(lu, op.matrix, lo), shi = det_sign(lu, op.matrix, hi);
            if (slo == 0 || shi == 0 || slo == shi) return;  // left as NaN, dropped below
            while (hi - lo > tol) {
                double mid = 0.5 * (lo + hi);
                int s = det_sign(lu, op.matrix, mid);
                for (int r = 0; s == 0 && r < 8; ++r) s = det_sign(lu, op.matrix, mid + (r + 1) * 1e-10 * w.v2);
                if (s == 0) throw numerical_error("fd: factorization breakdown during bisection");
                if (s == slo) lo = mid;
                else hi = mid;
            }
            betas[k] = 0.5 * (lo + hi);
        });
    }

    std::vector<fd_state> states(betas.size());
    parallel_for(betas.size(), [&](std::size_t k) {
        if (std::isnan(betas[k])) return;
        Eigen::VectorXd u = inverse_iteration(op.matrix, betas[k]);
        Eigen::VectorXd phi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(npts));
        for (std::size_t q = 0; q < op.unknowns.size(); ++q)
            phi[op.unknowns[q]] = order == 2 ? u[q] / op.w_sqrt[q] : u[q];
        for (const auto& e : op.eliminated) {
            double s = 0;
            for (const auto& [pt, c] : e.terms) s += c * phi[pt];
            phi[e.junction] = s;
        }
        normalize(g.points, phi);
        states[k] = {betas[k], std::move(phi)};
    });
    for (std::size_t k = 0; k < betas.size(); ++k)
        if (!std::isnan(betas[k])) res.states.push_back(std::move(states[k]));
    return res;
}

void write_triplets(std::ostream& os, const Eigen::SparseMatrix<double>& m) {
    os << "row,col,value\n";
    char buf[64];
    for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it) {
            std::snprintf(buf, sizeof buf, "%.17g", it.value());
            os << it.row() << ',' << it.col() << ',' << buf << '\n';
        }
    }
}

}  // namespace trapwell
