#include "parcav/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace parcav {

namespace {

// Thomas elimination for a constant tridiagonal (a below, b on, c above the
// diagonal); the elimination coefficients are computed once and reused.
class ConstTridiag {
public:
    ConstTridiag() = default;
    ConstTridiag(std::size_t m, double a, double b, double c) : a_(a), cp_(m), den_(m) {
        den_[0] = b;
        cp_[0] = c / b;
        for (std::size_t i = 1; i < m; ++i) {
            den_[i] = b - a * cp_[i - 1];
            cp_[i] = c / den_[i];
        }
    }
    void solve(std::vector<double>& d) const {
        const std::size_t m = den_.size();
        d[0] /= den_[0];
        for (std::size_t i = 1; i < m; ++i) d[i] = (d[i] - a_ * d[i - 1]) / den_[i];
        for (std::size_t i = m - 1; i-- > 0;) d[i] -= cp_[i] * d[i + 1];
    }

private:
    double a_ = 0.0;
    std::vector<double> cp_, den_;
};

// Factorization of  sigma*I + coef*(-Lap_h)  over the interior nodes; the
// standard 5-point (3-point in 1D) stencil with Dirichlet zero at boundary
// nodes.  sigma=1, coef=dt gives the backward Euler step matrix; sigma=0,
// coef=1 gives the steady operator.
class GridOperator {
public:
    GridOperator(const SpaceGrid& g, double sigma, double coef) : grid_(&g) {
        const std::size_t n = g.node_count();
        unknown_of_node_.assign(n, static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < n; ++i) {
            if (g.interior(i)) {
                unknown_of_node_[i] = interior_.size();
                interior_.push_back(i);
            }
        }
        if (interior_.empty()) throw std::invalid_argument("grid has no interior nodes");
        const double h2 = g.spacing() * g.spacing();
        const double r = coef / h2;
        if (g.dim() == 1) {
            // interval interiors are consecutive lattice nodes
            tri_ = ConstTridiag(interior_.size(), -r, sigma + 2 * r, -r);
        } else {
            using Trip = Eigen::Triplet<double>;
            std::vector<Trip> trips;
            trips.reserve(interior_.size() * 5);
            for (std::size_t row = 0; row < interior_.size(); ++row) {
                const auto [ix, iy] = lattice(interior_[row]);
                trips.emplace_back(row, row, sigma + 4 * r);
                const long nb[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
                for (const auto& q : nb) {
                    const std::size_t j = g.at(q[0], q[1]);
                    if (j == SpaceGrid::npos || !g.interior(j)) continue;
                    trips.emplace_back(row, unknown_of_node_[j], -r);
                }
            }
            Eigen::SparseMatrix<double> A(interior_.size(), interior_.size());
            A.setFromTriplets(trips.begin(), trips.end());
            llt_ = std::make_unique<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>();
            llt_->compute(A);
            if (llt_->info() != Eigen::Success)
                throw std::runtime_error("grid operator factorization failed");
        }
    }

    const std::vector<std::size_t>& interior() const { return interior_; }

    // solves (sigma*I + coef*(-Lap)) x = rhs in place over the unknowns
    void solve(std::vector<double>& rhs) const {
        if (grid_->dim() == 1) {
            tri_.solve(rhs);
        } else {
            Eigen::Map<Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
            Eigen::VectorXd x = llt_->solve(b);
            if (llt_->info() != Eigen::Success)
                throw std::runtime_error("grid operator solve failed");
            b = x;
        }
    }

private:
    std::array<long, 2> lattice(std::size_t node) const { return grid_->lattice_coords(node); }
    const SpaceGrid* grid_;
    std::vector<std::size_t> interior_;
    std::vector<std::size_t> unknown_of_node_;
    ConstTridiag tri_;
    std::unique_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> llt_;
};

// u <- (I - dt Lap)^{-1} (u + dt src) on interior nodes, boundary pinned at 0
void imex_step(const GridOperator& op, std::vector<double>& u,
               const std::vector<double>& src, double dt, std::vector<double>& rhs) {
    const auto& in = op.interior();
    rhs.resize(in.size());
    for (std::size_t j = 0; j < in.size(); ++j) rhs[j] = u[in[j]] + dt * src[in[j]];
    op.solve(rhs);
    for (std::size_t j = 0; j < in.size(); ++j) u[in[j]] = rhs[j];
}

// discrete residual Lap_h v + f at interior nodes, max norm
double steady_residual(const SpaceGrid& g, const std::vector<double>& v,
                       const std::vector<double>& f) {
    const double h2 = g.spacing() * g.spacing();
    double worst = 0.0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        if (!g.interior(i)) continue;
        const auto [ix, iy] = g.lattice_coords(i);
        double lap;
        if (g.dim() == 1) {
            lap = (v[g.at(ix - 1, 0)] + v[g.at(ix + 1, 0)] - 2 * v[i]) / h2;
        } else {
            double s = 0.0;
            const long nb[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
            for (const auto& q : nb) {
                const std::size_t j = g.at(q[0], q[1]);
                if (j != SpaceGrid::npos) s += v[j];
            }
            lap = (s - 4 * v[i]) / h2;
        }
        worst = std::max(worst, std::abs(lap + f[i]));
    }
    return worst;
}

void check_time_params(double h, double dt, double T) {
    if (!(dt > 0) || !(T > 0)) throw std::invalid_argument("dt and T must be positive");
    if (dt > h)
        throw std::invalid_argument("dt exceeds the stability budget (dt <= h)");
    if (std::lround(T / dt) < 1) throw std::invalid_argument("T must cover at least one step");
}

} // namespace

SpaceTimeField solve_parabolic(const ConvexDomain& dom, const SourceSpec& src,
                               double h, double dt, double T,
                               std::size_t store_stride) {
    check_time_params(h, dt, T);
    if (store_stride < 1) throw std::invalid_argument("store_stride must be >= 1");
    auto grid = std::make_shared<SpaceGrid>(build_grid(dom, h));
    const std::size_t n = grid->node_count();

    const bool semi = src.semilinear();
    std::vector<double> spatial;
    if (!semi) spatial = src.spatial_on(*grid);
    const double gamma = src.gamma();
    const double eps = src.kind() == SourceSpec::Kind::semilinear_regularized ? src.eps() : 0.0;

    const GridOperator main_op(*grid, 1.0, dt);
    const GridOperator sub_op(*grid, 1.0, dt / 10);

    const long K = std::lround(T / dt);
    std::vector<double> u(n, 0.0), srcvec(n, 0.0), rhs;
    std::vector<double> times{0.0};
    std::vector<double> values(u);
    values.reserve(n * (2 + static_cast<std::size_t>(K) / store_stride));

    auto eval_source = [&](double t) {
        if (semi) {
            for (std::size_t i = 0; i < n; ++i) srcvec[i] = std::pow(u[i] + eps, gamma);
        } else {
            const double tf = src.time_factor(t);
            for (std::size_t i = 0; i < n; ++i) srcvec[i] = tf * spatial[i];
        }
    };

    for (long k = 0; k < K; ++k) {
        if (k == 0) {
            const double sub_dt = dt / 10;
            for (int j = 0; j < 10; ++j) {
                eval_source(j * sub_dt);
                imex_step(sub_op, u, srcvec, sub_dt, rhs);
            }
        } else {
            eval_source(k * dt);
            imex_step(main_op, u, srcvec, dt, rhs);
        }
        if ((k + 1) % static_cast<long>(store_stride) == 0 || k + 1 == K) {
            times.push_back((k + 1) * dt);
            values.insert(values.end(), u.begin(), u.end());
        }
    }
    return SpaceTimeField(grid, std::move(times), std::move(values),
                          {"imex-be", dt, src.kind_name()});
}

SemilinearResult solve_semilinear_maximal(const ConvexDomain& dom, double gamma,
                                          double h, double dt, double T,
                                          std::vector<double> eps_sequence,
                                          std::size_t store_stride) {
    if (eps_sequence.size() < 3)
        throw std::invalid_argument("eps sweep needs at least 3 values");
    for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
        if (!(eps_sequence[i] >= 1e-8))
            throw std::invalid_argument("eps floor is 1e-8");
        if (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))
            throw std::invalid_argument("eps sequence must decrease strictly");
    }

    std::optional<SpaceTimeField> prev, cur;
    double worst_violation = 0.0;
    double cauchy = 0.0;
    for (double eps : eps_sequence) {
        cur = solve_parabolic(dom, SourceSpec::semilinear_regularized(gamma, eps),
                              h, dt, T, store_stride);
        if (prev) {
            double viol = 0.0, gap = 0.0;
            for (std::size_t k = 0; k < cur->level_count(); ++k) {
                auto a = cur->slice(k);
                auto b = prev->slice(k);
                for (std::size_t i = 0; i < a.size(); ++i) {
                    viol = std::max(viol, a[i] - b[i]);
                    gap = std::max(gap, std::abs(a[i] - b[i]));
                }
            }
            worst_violation = std::max(worst_violation, viol);
            cauchy = gap; // gap of the final pair survives the loop
        }
        prev = std::move(cur);
    }
    if (worst_violation > 1e-10)
        throw std::runtime_error("semilinear sweep lost the monotone eps ordering");
    return SemilinearResult{std::move(*prev), std::move(eps_sequence), cauchy, worst_violation};
}

SteadyField solve_steady(const ConvexDomain& dom, const SourceSpec& src, double h) {
    auto grid = std::make_shared<SpaceGrid>(build_grid(dom, h));
    const std::size_t n = grid->node_count();
    const GridOperator op(*grid, 0.0, 1.0);
    const auto& in = op.interior();

    auto lift = [&](const std::vector<double>& f) {
        std::vector<double> rhs(in.size());
        for (std::size_t j = 0; j < in.size(); ++j) rhs[j] = f[in[j]];
        op.solve(rhs);
        std::vector<double> v(n, 0.0);
        for (std::size_t j = 0; j < in.size(); ++j) v[in[j]] = rhs[j];
        return v;
    };

    switch (src.kind()) {
    case SourceSpec::Kind::constant:
    case SourceSpec::Kind::tabulated:
        return SteadyField(grid, lift(src.spatial_on(*grid)));
    case SourceSpec::Kind::dist_power:
        if (src.gamma() != 0.0)
            throw std::invalid_argument("steady solve needs a time-independent source (gamma = 0)");
        return SteadyField(grid, lift(src.spatial_on(*grid)));
    case SourceSpec::Kind::semilinear_power: {
        const double gamma = src.gamma();
        const double omega = 0.8;
        std::vector<double> v = lift(std::vector<double>(n, 1.0));
        std::vector<double> f(n, 0.0);
        double res = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 2000; ++it) {
            for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(std::max(v[i], 0.0), gamma);
            std::vector<double> w = lift(f);
            for (std::size_t i = 0; i < n; ++i) v[i] = (1 - omega) * v[i] + omega * w[i];
            for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(std::max(v[i], 0.0), gamma);
            res = steady_residual(*grid, v, f);
            if (res < 1e-10) return SteadyField(grid, std::move(v));
        }
        throw std::runtime_error("semilinear steady iteration stagnated (residual " +
                                 std::to_string(res) + ")");
    }
    default:
        throw std::invalid_argument("steady solve supports constant, dist_power(gamma=0), "
                                    "tabulated and semilinear_power sources");
    }
}

MonotonicityReport time_monotonicity_check(const SpaceTimeField& u,
                                           std::optional<double> tolerance) {
    const double tol = tolerance.value_or(1e-10 * std::max(u.max_value(), 1e-300));
    double worst = std::numeric_limits<double>::infinity();
    const std::size_t n = u.grid().node_count();
    for (std::size_t k = 0; k + 1 < u.level_count(); ++k) {
        auto a = u.slice(k);
        auto b = u.slice(k + 1);
        for (std::size_t i = 0; i < n; ++i) worst = std::min(worst, b[i] - a[i]);
    }
    return MonotonicityReport{worst >= -tol, worst, tol};
}

double boundary_scaling_exponent(const SpaceTimeField& u, Pt x_star, Pt y_star,
                                 double alpha) {
    if (!(alpha > 0) || !(alpha <= 1))
        throw std::invalid_argument("alpha must lie in (0, 1]");
    const ConvexDomain& dom = u.grid().domain();
    if (!dom.in_closure(x_star)) throw std::invalid_argument("x_star must lie in the closure");
    double dx = y_star.x - x_star.x, dy = y_star.y - x_star.y;
    const double norm = std::sqrt(dx * dx + dy * dy);
    if (norm > 0) {
        dx /= norm;
        dy /= norm;
    }
    const double h = u.grid().spacing();
    constexpr int kSamples = 8;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = 0; j < kSamples; ++j) {
        const double rho = 4 * h * std::pow(4.0, j / double(kSamples - 1));
        const double t = std::pow(rho, 1.0 / alpha);
        const double val = u.interpolate_raw({x_star.x + rho * dx, x_star.y + rho * dy}, t);
        if (!(val > 0))
            throw std::runtime_error("boundary scaling exponent undefined: u vanishes at sample");
        const double lx = std::log(rho), ly = std::log(val);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (kSamples * sxy - sx * sy) / (kSamples * sxx - sx * sx);
}

} // namespace parcav
