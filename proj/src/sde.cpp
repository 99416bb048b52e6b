#include "sdd/sde.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sdd/parallel.hpp"

namespace sdd {

void WalkConfig::validate() const {
    if (scheme == SchemeKind::linear && !(dt > 0.0))
        throw ValidationError("WalkConfig: linear scheme needs dt > 0");
    if (scheme == SchemeKind::exponential && !(lambda > 0.0))
        throw ValidationError("WalkConfig: exponential scheme needs lambda > 0");
    if (walks < 1) throw ValidationError("WalkConfig: walks must be >= 1");
    if (max_steps < 1) throw ValidationError("WalkConfig: max_steps must be >= 1");
}

Point step_linear(Point x, const MonitorFunction& m, double dt, RandomStream& rng) {
    const Point b = m.drift(x);
    double z0, z1;
    rng.normal_pair(z0, z1);
    // Per-axis variance 2*dt: the generator Lap + b.grad then matches the
    // weight-form equation div(w grad u) = 0 with b = (grad w)/w.
    const double s = std::sqrt(2.0 * dt);
    return {x.x + b.x * dt + s * z0, x.y + b.y * dt + s * z1};
}

ExitSample segment_exit(Point x0, Point x1, const RectDomain& dom) {
    double best_t = 2.0;
    Edge best = Edge::bottom;
    const auto consider = [&](Edge e, double c0, double c1, double target) {
        // Crossing of one coordinate from c0 (inside) to c1 (at or past target).
        if (c1 == c0) return;
        const double t = (target - c0) / (c1 - c0);
        if (t >= 0.0 && t <= 1.0 && t < best_t) {
            best_t = t;
            best = e;
        }
    };
    if (x1.y <= dom.ymin) consider(Edge::bottom, x0.y, x1.y, dom.ymin);
    if (x1.y >= dom.ymax) consider(Edge::top, x0.y, x1.y, dom.ymax);
    if (x1.x <= dom.xmin) consider(Edge::left, x0.x, x1.x, dom.xmin);
    if (x1.x >= dom.xmax) consider(Edge::right, x0.x, x1.x, dom.xmax);
    if (best_t > 1.0) {
        // x1 sits exactly on the boundary without a strict crossing direction.
        best_t = 1.0;
        if (x1.y <= dom.ymin) best = Edge::bottom;
        else if (x1.y >= dom.ymax) best = Edge::top;
        else if (x1.x <= dom.xmin) best = Edge::left;
        else best = Edge::right;
    }
    Point hit{x0.x + best_t * (x1.x - x0.x), x0.y + best_t * (x1.y - x0.y)};
    switch (best) {
        case Edge::bottom: hit.y = dom.ymin; break;
        case Edge::top: hit.y = dom.ymax; break;
        case Edge::left: hit.x = dom.xmin; break;
        case Edge::right: hit.x = dom.xmax; break;
    }
    hit.x = std::clamp(hit.x, dom.xmin, dom.xmax);
    hit.y = std::clamp(hit.y, dom.ymin, dom.ymax);
    return ExitSample{hit, best, 0};
}

namespace {

// Shared in-step test: each edge fires with exp(-scale * q(d0, d1)); checked
// nearest edge first, at most one exit per step. Probabilities below e^-40
// are treated as zero without consuming a draw.
template <typename Exponent>
std::optional<ExitSample> edge_crossing_test(Point x0, Point x1, const RectDomain& dom,
                                             RandomStream& rng, Exponent exponent) {
    struct Cand {
        double dist;
        Edge e;
    };
    std::array<Cand, 4> cand;
    for (int k = 0; k < 4; ++k) {
        const Edge e = all_edges[k];
        cand[k] = {std::min(dom.distance_to_edge(x0, e), dom.distance_to_edge(x1, e)), e};
    }
    std::sort(cand.begin(), cand.end(), [](const Cand& a, const Cand& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return static_cast<int>(a.e) < static_cast<int>(b.e);
    });
    for (const Cand& c : cand) {
        const double d0 = dom.distance_to_edge(x0, c.e);
        const double d1 = dom.distance_to_edge(x1, c.e);
        const double ex = exponent(d0, d1);
        if (ex > 40.0) continue;
        if (rng.u01() < std::exp(-ex)) {
            const double sum = d0 + d1;
            const double s = sum > 0.0 ? d0 / sum : 0.0;
            Point hit{x0.x + s * (x1.x - x0.x), x0.y + s * (x1.y - x0.y)};
            switch (c.e) {
                case Edge::bottom: hit.y = dom.ymin; break;
                case Edge::top: hit.y = dom.ymax; break;
                case Edge::left: hit.x = dom.xmin; break;
                case Edge::right: hit.x = dom.xmax; break;
            }
            hit.x = std::clamp(hit.x, dom.xmin, dom.xmax);
            hit.y = std::clamp(hit.y, dom.ymin, dom.ymax);
            return ExitSample{hit, c.e, 0};
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<ExitSample> bridge_exit_test(Point x0, Point x1, double dt,
                                           const RectDomain& dom, RandomStream& rng) {
    if (!dom.strictly_inside(x1)) return segment_exit(x0, x1, dom);
    // Half-space crossing of a bridge with per-axis variance 2*dt:
    // exp(-2 d0 d1 / (sigma^2 dt)) with sigma^2 = 2.
    return edge_crossing_test(x0, x1, dom, rng, [dt](double d0, double d1) {
        return d0 * d1 / dt;
    });
}

std::pair<Point, std::optional<ExitSample>> step_exponential(Point x,
                                                             const MonitorFunction& m,
                                                             double lambda,
                                                             const RectDomain& dom,
                                                             RandomStream& rng) {
    const double dt = rng.exponential(lambda);
    const Point next = step_linear(x, m, dt, rng);
    if (!dom.strictly_inside(next)) return {next, segment_exit(x, next, dom)};
    // Crossing probability of a Brownian path sampled at an Exp(lambda) time:
    // the running max and max-minus-endpoint are independent Exp(nu) with
    // nu = sqrt(2 lambda)/sigma = sqrt(lambda), giving exp(-2 nu min(d0, d1))
    // per edge.
    const double nu2 = 2.0 * std::sqrt(lambda);
    auto exit = edge_crossing_test(x, next, dom, rng, [nu2](double d0, double d1) {
        return nu2 * std::min(d0, d1);
    });
    return {next, exit};
}

namespace {

struct WalkResult {
    double f, g;
    long steps;
    long epochs_used;
    Edge edge;
};

WalkResult run_walk(Point p, std::uint64_t point_id, long walk, const MonitorFunction& m,
                    const RectDomain& dom, const BoundaryData& bd,
                    const WalkConfig& cfg) {
    constexpr std::uint32_t kMaxEpochs = 1024;
    for (std::uint32_t epoch = 0; epoch < kMaxEpochs; ++epoch) {
        RandomStream rng(cfg.seed, point_id, static_cast<std::uint32_t>(walk), epoch);
        Point pos = p;
        for (long step = 1; step <= cfg.max_steps; ++step) {
            std::optional<ExitSample> exit;
            if (cfg.scheme == SchemeKind::linear) {
                const Point next = step_linear(pos, m, cfg.dt, rng);
                if (!dom.strictly_inside(next)) {
                    exit = segment_exit(pos, next, dom);
                } else if (cfg.bridge_test) {
                    exit = bridge_exit_test(pos, next, cfg.dt, dom, rng);
                }
                if (!exit) pos = next;
            } else {
                auto [next, ex] = step_exponential(pos, m, cfg.lambda, dom, rng);
                exit = ex;
                if (!exit) pos = next;
            }
            if (exit) {
                return WalkResult{bd.f_at(exit->exit_edge, exit->exit_point),
                                  bd.g_at(exit->exit_edge, exit->exit_point), step, epoch,
                                  exit->exit_edge};
            }
        }
    }
    throw NumericalError("mc_estimate: walk failed to exit after " +
                         std::to_string(kMaxEpochs) + " restarts (point_id " +
                         std::to_string(point_id) + ")");
}

struct ChunkSums {
    double f = 0.0, g = 0.0, ff = 0.0, gg = 0.0;
    long restarts = 0;
    std::array<long, 4> edge_hits{};
};

}  // namespace

McEstimate mc_estimate(Point p, std::uint64_t point_id, const MonitorFunction& m,
                       const RectDomain& dom, const BoundaryData& bd,
                       const WalkConfig& cfg, int threads) {
    cfg.validate();
    if (!dom.strictly_inside(p)) {
        throw OutOfDomainError("mc_estimate: start point must be strictly inside");
    }

    constexpr long kChunk = 256;
    const long n_chunks = (cfg.walks + kChunk - 1) / kChunk;
    std::vector<ChunkSums> sums(static_cast<std::size_t>(n_chunks));
    parallel_for(static_cast<std::size_t>(n_chunks), threads, [&](std::size_t c) {
        const long lo = static_cast<long>(c) * kChunk;
        const long hi = std::min(cfg.walks, lo + kChunk);
        ChunkSums s;
        for (long wlk = lo; wlk < hi; ++wlk) {
            const WalkResult r = run_walk(p, point_id, wlk, m, dom, bd, cfg);
            s.f += r.f;
            s.g += r.g;
            s.ff += r.f * r.f;
            s.gg += r.g * r.g;
            s.restarts += r.epochs_used;
            ++s.edge_hits[static_cast<int>(r.edge)];
        }
        sums[c] = s;
    });

    // Fixed chunk-order reduction keeps the result thread-count invariant.
    ChunkSums tot;
    for (const ChunkSums& s : sums) {
        tot.f += s.f;
        tot.g += s.g;
        tot.ff += s.ff;
        tot.gg += s.gg;
        tot.restarts += s.restarts;
        for (int e = 0; e < 4; ++e) tot.edge_hits[e] += s.edge_hits[e];
    }

    const double n = static_cast<double>(cfg.walks);
    McEstimate est;
    est.walks = cfg.walks;
    est.xi = tot.f / n;
    est.eta = tot.g / n;
    if (cfg.walks > 1) {
        const double var_f = std::max(0.0, (tot.ff - n * est.xi * est.xi) / (n - 1.0));
        const double var_g = std::max(0.0, (tot.gg - n * est.eta * est.eta) / (n - 1.0));
        est.stderr_xi = std::sqrt(var_f / n);
        est.stderr_eta = std::sqrt(var_g / n);
    }
    est.restarts = tot.restarts;
    est.reliability_warning = tot.restarts > cfg.walks / 100;
    est.edge_hits = tot.edge_hits;
    return est;
}

}  // namespace sdd
