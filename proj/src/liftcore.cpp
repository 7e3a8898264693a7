#include "liftsvd/liftcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "liftsvd/errors.hpp"

namespace liftsvd {

namespace {

std::string point_to_string(const Vec& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) os << ", ";
        os << x[i];
    }
    os << ")";
    return os.str();
}

void check_ordering(const ComponentOrdering& ordering, std::size_t p) {
    if (ordering.q.size() != p || ordering.inverse.size() != p)
        throw ConfigError("ordering size does not match the bound count");
}

}  // namespace

SigmaSpec select_sigma(const Vec& bounds, const ComponentOrdering& ordering, double eta,
                       int input_dim) {
    if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("eta must be in (0, 1)");
    if (input_dim < 1) throw ConfigError("input dimension must be positive");
    check_ordering(ordering, bounds.size());

    int p_eff = 0;
    for (double b : bounds) {
        if (!(b >= 0.0)) throw ConfigError("bounds must be non-negative");
        if (b > 0.0) ++p_eff;
    }

    SigmaSpec spec;
    spec.eta = eta;
    spec.m = input_dim + static_cast<int>(bounds.size());
    spec.ordering = ordering;
    spec.sigma.resize(bounds.size(), 0.0);
    if (p_eff > 0) {
        const double scale = std::sqrt(static_cast<double>(p_eff) / (1.0 - eta));
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            const double b = bounds[static_cast<std::size_t>(ordering.q[i])];
            spec.sigma[i] = b * scale;
        }
    }
    return spec;
}

SigmaSpec make_sigma_spec(Vec sigma, const Vec& bounds, const ComponentOrdering& ordering,
                          double eta, int input_dim) {
    if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("eta must be in (0, 1)");
    if (input_dim < 1) throw ConfigError("input dimension must be positive");
    if (sigma.size() != bounds.size()) throw ConfigError("sigma size does not match bounds");
    check_ordering(ordering, bounds.size());

    double sum = 0.0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (!(sigma[i] >= 0.0)) throw ConfigError("sigma must be non-negative");
        if (i > 0 && sigma[i] > sigma[i - 1] * (1.0 + 1e-12))
            throw ConfigError("sigma must be descending");
        const double b = bounds[static_cast<std::size_t>(ordering.q[i])];
        if (b > 0.0) {
            if (sigma[i] == 0.0)
                throw ConfigError("sigma_i = 0 requires a zero bound for component " +
                                  std::to_string(ordering.q[i] + 1));
            sum += (b / sigma[i]) * (b / sigma[i]);
        }
    }
    if (sum > (1.0 - eta) + 1e-12)
        throw ConfigError("sigma is not admissible: bound sum " + std::to_string(sum) +
                          " exceeds 1 - eta");

    SigmaSpec spec;
    spec.sigma = std::move(sigma);
    spec.m = input_dim + static_cast<int>(bounds.size());
    spec.eta = eta;
    spec.ordering = ordering;
    return spec;
}

SValue compute_S_from(const Vec& x, const Vec& fx, const SigmaSpec& sigma) {
    const double nrm2_sq = dot(x, x);
    if (nrm2_sq == 0.0) throw ConfigError("compute_S requires x != 0");
    if (fx.size() != sigma.sigma.size()) throw ConfigError("compute_S: f(x) has wrong dimension");

    double s = 0.0;
    for (std::size_t i = 0; i < sigma.sigma.size(); ++i) {
        const double fq = fx[static_cast<std::size_t>(sigma.ordering.q[i])];
        const double sig = sigma.sigma[i];
        if (sig == 0.0) {
            if (fq != 0.0)
                throw BoundViolationError(
                    "component " + std::to_string(sigma.ordering.q[i] + 1) +
                        " declared zero norm but evaluates to " + std::to_string(fq) + " at x = " +
                        point_to_string(x),
                    x, std::numeric_limits<double>::infinity());
            continue;
        }
        s += (fq * fq) / (sig * sig * nrm2_sq);
    }
    if (s >= 1.0)
        throw BoundViolationError(
            "declared norm bounds violated: S = " + std::to_string(s) + " >= 1 at x = " +
                point_to_string(x),
            x, s);
    return {s, s - 1.0};
}

SValue compute_S(const Vec& x, const FunctionSpec& f, const SigmaSpec& sigma) {
    if (norm2(x) == 0.0) throw ConfigError("compute_S requires x != 0");
    return compute_S_from(x, eval_f(f, x), sigma);
}

namespace {

Vec delta_from(const Vec& fx, const SigmaSpec& sigma, double s) {
    const double root = std::sqrt(1.0 - s);
    Vec d(sigma.sigma.size(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double sig = sigma.sigma[i];
        if (sig == 0.0) continue;
        d[i] = fx[static_cast<std::size_t>(sigma.ordering.q[i])] / (sig * root);
    }
    return d;
}

}  // namespace

Vec delta(const Vec& x, const FunctionSpec& f, const SigmaSpec& sigma) {
    const Vec fx = eval_f(f, x);
    const SValue sv = compute_S_from(x, fx, sigma);
    return delta_from(fx, sigma, sv.S);
}

Vec delta_oracle(const Vec& x, const FunctionSpec& f, const SigmaSpec& sigma,
                 double* min_pre_sqrt) {
    const Vec fx = eval_f(f, x);
    const double nrm_sq = dot(x, x);
    if (nrm_sq == 0.0) throw ConfigError("delta_oracle requires x != 0");
    (void)compute_S_from(x, fx, sigma);  // surfaces bound violations first

    const std::size_t p = sigma.sigma.size();
    Mat a(p, p, -1.0);
    for (std::size_t i = 0; i < p; ++i) {
        const double fq = fx[static_cast<std::size_t>(sigma.ordering.q[i])];
        const double sig = sigma.sigma[i];
        if (sig == 0.0 || fq == 0.0)
            throw ConfigError("delta_oracle requires sigma_i > 0 and f_{q(i)}(x) != 0");
        a(i, i) = (sig * sig * nrm_sq) / (fq * fq) - 1.0;
    }

    Vec y = solve_dense(a, Vec(p, nrm_sq));

    double min_y = std::numeric_limits<double>::infinity();
    for (double yi : y) min_y = std::min(min_y, yi);
    if (min_pre_sqrt) *min_pre_sqrt = min_y;
    if (min_y < -1e-14 * std::max(1.0, nrm_sq))
        throw Error("delta_oracle: negative delta^2 component; sigma is not admissible");

    Vec d(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        const double fq = fx[static_cast<std::size_t>(sigma.ordering.q[i])];
        const double sign = (fq > 0.0) ? 1.0 : (fq < 0.0 ? -1.0 : 0.0);
        d[i] = sign * std::sqrt(std::max(y[i], 0.0));
    }
    return d;
}

LiftedPoint lift(const Vec& x, const FunctionSpec& f, const SigmaSpec& sigma) {
    if (x.size() != static_cast<std::size_t>(f.input_dim()))
        throw ConfigError("lift: input has wrong dimension");
    const std::size_t p = sigma.sigma.size();
    const std::size_t m = static_cast<std::size_t>(sigma.m);

    LiftedPoint lp;
    lp.x = x;
    if (norm2(x) == 0.0) {
        // The lifting formula is 0/0 at the origin; the norm-preserving
        // limit is 0, and BIBO gives f(0) = 0, so reconstruction holds.
        lp.fx.assign(p, 0.0);
        lp.S = 0.0;
        lp.gamma = -1.0;
        lp.delta.assign(p, 0.0);
        lp.x_delta.assign(m, 0.0);
        lp.v.assign(m, 0.0);
        return lp;
    }

    lp.fx = eval_f(f, x);
    const SValue sv = compute_S_from(x, lp.fx, sigma);
    lp.S = sv.S;
    lp.gamma = sv.gamma;
    lp.delta = delta_from(lp.fx, sigma, sv.S);

    lp.x_delta.reserve(m);
    lp.x_delta.insert(lp.x_delta.end(), lp.delta.begin(), lp.delta.end());
    lp.x_delta.insert(lp.x_delta.end(), x.begin(), x.end());

    const double scale = norm2(x) / norm2(lp.x_delta);
    lp.v.resize(m);
    for (std::size_t i = 0; i < m; ++i) lp.v[i] = scale * lp.x_delta[i];
    return lp;
}

Decomposition make_decomposition(const FunctionSpec& f, double eta) {
    const ComponentOrdering ordering = order_components(f.norm_bounds());
    return make_decomposition(f, select_sigma(f.norm_bounds(), ordering, eta, f.input_dim()));
}

Decomposition make_decomposition(const FunctionSpec& f, SigmaSpec sigma) {
    const std::size_t p = static_cast<std::size_t>(f.output_dim());
    if (sigma.sigma.size() != p || sigma.m != f.input_dim() + f.output_dim())
        throw ConfigError("sigma spec does not match function dimensions");

    Mat u(p, p);
    for (std::size_t i = 0; i < p; ++i)
        u(static_cast<std::size_t>(sigma.ordering.q[i]), i) = 1.0;

    Mat sig_mat(p, static_cast<std::size_t>(sigma.m));
    for (std::size_t i = 0; i < p; ++i) sig_mat(i, i) = sigma.sigma[i];

    return Decomposition{f, std::move(sigma), std::move(u), std::move(sig_mat)};
}

Vec reconstruct(const LiftedPoint& lp, const Decomposition& dec) {
    if (lp.v.size() != dec.Sigma_matrix.cols())
        throw ConfigError("reconstruct: lifted point does not match the decomposition");
    return matvec(dec.U, matvec(dec.Sigma_matrix, lp.v));
}

Vec unlift(const Vec& v_val, int n, int p) {
    if (v_val.size() != static_cast<std::size_t>(n + p))
        throw ConfigError("unlift: vector has wrong dimension");
    const double total = norm2(v_val);
    if (total == 0.0) return Vec(static_cast<std::size_t>(n), 0.0);

    Vec lower(v_val.begin() + p, v_val.end());
    const double lower_norm = norm2(lower);
    if (lower_norm == 0.0) throw ImageError("unlift: not in image of v (zero lower block)");

    const double scale = total / lower_norm;
    for (double& c : lower) c *= scale;
    return lower;
}

void write_lifted_points_csv(std::ostream& out, const std::vector<LiftedPoint>& points, int n,
                             int p) {
    const int m = n + p;
    for (int i = 1; i <= n; ++i) out << "x_" << i << ",";
    for (int i = 1; i <= p; ++i) out << "delta_" << i << ",";
    for (int i = 1; i <= m; ++i) out << "v_" << i << ",";
    out << "S\n";

    char buf[32];
    const auto cell = [&](double value) {
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        out << buf;
    };
    for (const LiftedPoint& lp : points) {
        for (double c : lp.x) {
            cell(c);
            out << ",";
        }
        for (double c : lp.delta) {
            cell(c);
            out << ",";
        }
        for (double c : lp.v) {
            cell(c);
            out << ",";
        }
        cell(lp.S);
        out << "\n";
    }
}

}  // namespace liftsvd
