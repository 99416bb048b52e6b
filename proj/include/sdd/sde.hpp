#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "sdd/boundary.hpp"
#include "sdd/monitor.hpp"
#include "sdd/rng.hpp"

namespace sdd {

enum class SchemeKind { linear, exponential };

struct WalkConfig {
    SchemeKind scheme = SchemeKind::exponential;
    double dt = 1e-4;        // linear scheme step
    double lambda = 1000.0;  // exponential scheme rate; E[dt] = 1/lambda
    long walks = 10000;
    std::uint64_t seed = 0;
    long max_steps = 10'000'000;
    bool bridge_test = true;  // linear scheme: Brownian-bridge exit test

    void validate() const;
};

struct ExitSample {
    Point exit_point;
    Edge exit_edge = Edge::bottom;
    long steps_taken = 0;
};

// One Euler-Maruyama step x + drift(x) dt + sqrt(2 dt) (z1, z2). The per-axis
// variance 2 dt makes the walk's generator Lap + drift.grad, the form the
// weight equation div(w grad u) = 0 takes after dividing by w.
Point step_linear(Point x, const MonitorFunction& m, double dt, RandomStream& rng);

// Crossing point of the segment x0 -> x1 with the rectangle boundary,
// assuming x0 inside and x1 not strictly inside.
ExitSample segment_exit(Point x0, Point x1, const RectDomain& domain);

// Exit test for one linear step. If x1 left the rectangle the crossing is
// deterministic. Otherwise each edge fires with the half-space bridge
// probability exp(-d0 d1 / dt) (variance 2 dt), tested nearest edge first;
// the exit point sits at parameter d0/(d0+d1) along the segment, projected
// onto the edge.
std::optional<ExitSample> bridge_exit_test(Point x0, Point x1, double dt,
                                           const RectDomain& domain, RandomStream& rng);

// One exponential-timestep move: dt ~ Exp(lambda), Euler-Maruyama advance,
// then (a) explicit outside test and (b) the per-edge conditional hit test
// exp(-2 sqrt(lambda) min(d0, d1)) for additive-noise processes sampled at
// an exponential time.
std::pair<Point, std::optional<ExitSample>> step_exponential(Point x,
                                                             const MonitorFunction& m,
                                                             double lambda,
                                                             const RectDomain& domain,
                                                             RandomStream& rng);

struct McEstimate {
    double xi = 0.0, eta = 0.0;
    double stderr_xi = 0.0, stderr_eta = 0.0;
    long walks = 0;
    long restarts = 0;                 // walks re-run after hitting max_steps
    bool reliability_warning = false;  // restarts > 1% of walks
    std::array<long, 4> edge_hits{};   // exits per Edge value
};

// Feynman-Kac estimator at p: N independent first-exit walks, each exit point
// evaluated under both f and g. Walk w draws from the stream keyed by
// (cfg.seed, point_id, w), so the estimate is a pure function of the config
// and ids. Walks that hit max_steps restart on a fresh epoch stream and are
// counted. Accumulation runs in fixed chunk order regardless of `threads`.
McEstimate mc_estimate(Point p, std::uint64_t point_id, const MonitorFunction& m,
                       const RectDomain& domain, const BoundaryData& bd,
                       const WalkConfig& cfg, int threads = 1);

}  // namespace sdd
