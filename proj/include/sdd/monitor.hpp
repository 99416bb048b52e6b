#pragma once

#include <functional>
#include <optional>
#include <string>

#include "sdd/geometry.hpp"

namespace sdd {

enum class MonitorKind {
    constant,
    running_example,
    huang_sloan,
    mackenzie,
    five_ring,
    user_supplied,
};

// Mesh density function rho(x,y) > 0 together with its gradient. The
// generator's diffusion weight is w = 1/rho and the walk drift is
// (1/w) grad w = -grad(rho)/rho.
class MonitorFunction {
public:
    static MonitorFunction constant(double value = 1.0);
    // rho = 1 + R exp(-50(x-3/4)^2 - 50(y-1/2)^2 - 1/2) on [0,1]^2.
    static MonitorFunction running_example(double R = 15.0);
    // rho = sqrt(1 + a(R^2 e^{2R(x-1)} sin^2(pi y) + (1-e^{R(x-1)})^2 pi^2 cos^2(pi y)))
    // on [0,1]^2.
    static MonitorFunction huang_sloan(double alpha = 0.7, double R = 15.0);
    // rho = 1 / (1 + a exp(-R (y - 1/2 - sin(2 pi x)/4)^2)) on [0,1]^2.
    static MonitorFunction mackenzie(double alpha = 10.0, double R = 50.0);
    // Arc-length density rho = sqrt(1 + a(u_x^2 + u_y^2)) of a five-ring tanh
    // velocity field on [-1,1]^2.
    static MonitorFunction five_ring(double alpha = 0.2, double R = 30.0);
    // Caller-supplied density; gradient by central differences with step h.
    static MonitorFunction user_supplied(std::function<double(Point)> rho,
                                         RectDomain domain, double fd_step = 1e-6);

    // CLI entry: name in {constant, running, running-example, huang-sloan,
    // mackenzie, five-ring} with optional parameter overrides.
    static MonitorFunction by_name(const std::string& name,
                                   std::optional<double> R = std::nullopt,
                                   std::optional<double> alpha = std::nullopt,
                                   std::optional<RectDomain> domain = std::nullopt);

    double rho(Point p) const;
    Point grad_rho(Point p) const;
    double weight(Point p) const { return 1.0 / rho(p); }
    // -grad(rho)/rho, evaluated in one pass per point.
    Point drift(Point p) const;

    MonitorKind kind() const { return kind_; }
    const RectDomain& domain() const { return domain_; }
    double param_R() const { return R_; }
    double param_alpha() const { return alpha_; }

private:
    MonitorFunction(MonitorKind kind, RectDomain domain, double R, double alpha);

    void check_positivity() const;
    double rho_with_grad(Point p, Point& grad) const;

    MonitorKind kind_;
    RectDomain domain_;
    double R_ = 0.0;
    double alpha_ = 0.0;
    std::function<double(Point)> user_rho_;
    double fd_step_ = 1e-6;
};

}  // namespace sdd
