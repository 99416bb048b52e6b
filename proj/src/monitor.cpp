#include "sdd/monitor.hpp"

#include <cmath>

namespace sdd {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

struct FiveRingDerivs {
    double ux, uy, uxx, uxy, uyy;
};

// u = sum of five tanh(R(r_k^2 - 1/8)) rings: one centered at the origin and
// one in each quadrant at (+-1/2, +-1/2).
FiveRingDerivs five_ring_velocity(double x, double y, double R) {
    static constexpr double cx[5] = {0.0, 0.5, 0.5, -0.5, -0.5};
    static constexpr double cy[5] = {0.0, 0.5, -0.5, 0.5, -0.5};
    FiveRingDerivs d{0.0, 0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < 5; ++k) {
        const double dx = x - cx[k];
        const double dy = y - cy[k];
        const double t = std::tanh(R * (dx * dx + dy * dy - 0.125));
        const double s = 1.0 - t * t;
        const double gx = 2.0 * R * dx;
        const double gy = 2.0 * R * dy;
        d.ux += s * gx;
        d.uy += s * gy;
        d.uxx += s * (2.0 * R - 2.0 * t * gx * gx);
        d.uyy += s * (2.0 * R - 2.0 * t * gy * gy);
        d.uxy += -2.0 * t * s * gx * gy;
    }
    return d;
}

}  // namespace

MonitorFunction::MonitorFunction(MonitorKind kind, RectDomain domain, double R,
                                 double alpha)
    : kind_(kind), domain_(domain), R_(R), alpha_(alpha) {}

MonitorFunction MonitorFunction::constant(double value) {
    MonitorFunction m(MonitorKind::constant, RectDomain(0, 1, 0, 1), value, 0.0);
    m.check_positivity();
    return m;
}

MonitorFunction MonitorFunction::running_example(double R) {
    MonitorFunction m(MonitorKind::running_example, RectDomain(0, 1, 0, 1), R, 0.0);
    m.check_positivity();
    return m;
}

MonitorFunction MonitorFunction::huang_sloan(double alpha, double R) {
    MonitorFunction m(MonitorKind::huang_sloan, RectDomain(0, 1, 0, 1), R, alpha);
    m.check_positivity();
    return m;
}

MonitorFunction MonitorFunction::mackenzie(double alpha, double R) {
    MonitorFunction m(MonitorKind::mackenzie, RectDomain(0, 1, 0, 1), R, alpha);
    m.check_positivity();
    return m;
}

MonitorFunction MonitorFunction::five_ring(double alpha, double R) {
    MonitorFunction m(MonitorKind::five_ring, RectDomain(-1, 1, -1, 1), R, alpha);
    m.check_positivity();
    return m;
}

MonitorFunction MonitorFunction::user_supplied(std::function<double(Point)> rho,
                                               RectDomain domain, double fd_step) {
    MonitorFunction m(MonitorKind::user_supplied, domain, 0.0, 0.0);
    m.user_rho_ = std::move(rho);
    m.fd_step_ = fd_step;
    m.check_positivity();
    return m;
}

MonitorFunction MonitorFunction::by_name(const std::string& name, std::optional<double> R,
                                         std::optional<double> alpha,
                                         std::optional<RectDomain> domain) {
    MonitorFunction m = [&]() -> MonitorFunction {
        if (name == "constant") return constant(R.value_or(1.0));
        if (name == "running" || name == "running-example")
            return running_example(R.value_or(15.0));
        if (name == "huang-sloan")
            return huang_sloan(alpha.value_or(0.7), R.value_or(15.0));
        if (name == "mackenzie")
            return mackenzie(alpha.value_or(10.0), R.value_or(50.0));
        if (name == "five-ring") return five_ring(alpha.value_or(0.2), R.value_or(30.0));
        throw ValidationError("unknown monitor '" + name +
                              "' (expected constant, running, huang-sloan, mackenzie "
                              "or five-ring)");
    }();
    if (domain) {
        m.domain_ = *domain;
        m.check_positivity();
    }
    return m;
}

void MonitorFunction::check_positivity() const {
    constexpr int probes = 33;
    for (int j = 0; j < probes; ++j) {
        for (int i = 0; i < probes; ++i) {
            const Point p{domain_.xmin + domain_.width() * i / (probes - 1),
                          domain_.ymin + domain_.height() * j / (probes - 1)};
            const double r = rho(p);
            if (!std::isfinite(r) || r <= 0.0) {
                throw EvaluationError("monitor density not finite/positive at (" +
                                      std::to_string(p.x) + ", " + std::to_string(p.y) +
                                      ")");
            }
        }
    }
}

double MonitorFunction::rho(Point p) const {
    double r = 0.0;
    switch (kind_) {
        case MonitorKind::constant:
            r = R_;
            break;
        case MonitorKind::running_example: {
            const double dx = p.x - 0.75;
            const double dy = p.y - 0.5;
            r = 1.0 + R_ * std::exp(-50.0 * dx * dx - 50.0 * dy * dy - 0.5);
            break;
        }
        case MonitorKind::huang_sloan: {
            const double E = std::exp(R_ * (p.x - 1.0));
            const double S = std::sin(kPi * p.y);
            const double C = std::cos(kPi * p.y);
            const double q = alpha_ * (R_ * R_ * E * E * S * S +
                                       (1.0 - E) * (1.0 - E) * kPi * kPi * C * C);
            r = std::sqrt(1.0 + q);
            break;
        }
        case MonitorKind::mackenzie: {
            const double s = p.y - 0.5 - 0.25 * std::sin(2.0 * kPi * p.x);
            r = 1.0 / (1.0 + alpha_ * std::exp(-R_ * s * s));
            break;
        }
        case MonitorKind::five_ring: {
            const FiveRingDerivs d = five_ring_velocity(p.x, p.y, R_);
            r = std::sqrt(1.0 + alpha_ * (d.ux * d.ux + d.uy * d.uy));
            break;
        }
        case MonitorKind::user_supplied:
            r = user_rho_(p);
            break;
    }
    if (!std::isfinite(r)) {
        throw EvaluationError("monitor density not finite at (" + std::to_string(p.x) +
                              ", " + std::to_string(p.y) + ")");
    }
    return r;
}

double MonitorFunction::rho_with_grad(Point p, Point& grad) const {
    switch (kind_) {
        case MonitorKind::constant:
            grad = {0.0, 0.0};
            return R_;
        case MonitorKind::running_example: {
            const double dx = p.x - 0.75;
            const double dy = p.y - 0.5;
            const double g = R_ * std::exp(-50.0 * dx * dx - 50.0 * dy * dy - 0.5);
            grad = {-100.0 * dx * g, -100.0 * dy * g};
            return 1.0 + g;
        }
        case MonitorKind::huang_sloan: {
            const double E = std::exp(R_ * (p.x - 1.0));
            const double S = std::sin(kPi * p.y);
            const double C = std::cos(kPi * p.y);
            const double q = alpha_ * (R_ * R_ * E * E * S * S +
                                       (1.0 - E) * (1.0 - E) * kPi * kPi * C * C);
            const double r = std::sqrt(1.0 + q);
            const double qx =
                alpha_ * (2.0 * R_ * R_ * R_ * E * E * S * S +
                          2.0 * kPi * kPi * R_ * C * C * E * (E - 1.0));
            const double qy = 2.0 * kPi * S * C * alpha_ *
                              (R_ * R_ * E * E - kPi * kPi * (1.0 - E) * (1.0 - E));
            grad = {qx / (2.0 * r), qy / (2.0 * r)};
            return r;
        }
        case MonitorKind::mackenzie: {
            const double s = p.y - 0.5 - 0.25 * std::sin(2.0 * kPi * p.x);
            const double E = std::exp(-R_ * s * s);
            const double D = 1.0 + alpha_ * E;
            const double drho_ds = 2.0 * alpha_ * R_ * s * E / (D * D);
            const double sx = -0.5 * kPi * std::cos(2.0 * kPi * p.x);
            grad = {drho_ds * sx, drho_ds};
            return 1.0 / D;
        }
        case MonitorKind::five_ring: {
            const FiveRingDerivs d = five_ring_velocity(p.x, p.y, R_);
            const double r = std::sqrt(1.0 + alpha_ * (d.ux * d.ux + d.uy * d.uy));
            grad = {alpha_ * (d.ux * d.uxx + d.uy * d.uxy) / r,
                    alpha_ * (d.ux * d.uxy + d.uy * d.uyy) / r};
            return r;
        }
        case MonitorKind::user_supplied: {
            const double h = fd_step_;
            const double gx =
                (user_rho_({p.x + h, p.y}) - user_rho_({p.x - h, p.y})) / (2.0 * h);
            const double gy =
                (user_rho_({p.x, p.y + h}) - user_rho_({p.x, p.y - h})) / (2.0 * h);
            if (!std::isfinite(gx) || !std::isfinite(gy)) {
                throw EvaluationError("monitor gradient not finite at (" +
                                      std::to_string(p.x) + ", " + std::to_string(p.y) +
                                      ")");
            }
            grad = {gx, gy};
            return rho(p);
        }
    }
    grad = {0.0, 0.0};
    return 1.0;
}

Point MonitorFunction::grad_rho(Point p) const {
    Point g;
    rho_with_grad(p, g);
    return g;
}

Point MonitorFunction::drift(Point p) const {
    Point g;
    const double r = rho_with_grad(p, g);
    const Point d{-g.x / r, -g.y / r};
    if (!std::isfinite(d.x) || !std::isfinite(d.y)) {
        throw EvaluationError("drift not finite at (" + std::to_string(p.x) + ", " +
                              std::to_string(p.y) + ")");
    }
    return d;
}

}  // namespace sdd
