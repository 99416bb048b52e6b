#include "sdd/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdd/decomposition.hpp"
#include "sdd/parallel.hpp"

namespace sdd {

void SmoothConfig::validate() const {
    if (!(k > 0.0)) throw ValidationError("SmoothConfig: k must be > 0");
    if (!(dt > 0.0)) throw ValidationError("SmoothConfig: dt must be > 0");
    if (steps < 0) throw ValidationError("SmoothConfig: steps must be >= 0");
}

std::optional<std::string> stability_warning(const SmoothConfig& cfg,
                                             const GridSpec& spec) {
    const double bound = spec.hx() * spec.hy() / 4.0;
    if (cfg.dt > bound) {
        return "smoothing dt=" + std::to_string(cfg.dt) +
               " exceeds the FTCS stability bound hx*hy/4=" + std::to_string(bound);
    }
    return std::nullopt;
}

namespace {

// One FTCS sweep of u_t = div(c grad u) on the block [i0, i0+bnx) x [j0, j0+bny)
// of the global field, block boundary held fixed. Gradients for c are centered
// inside the block and one-sided on its edges.
void smooth_block(std::vector<double>& u, std::vector<double>& scratch_c,
                  std::vector<double>& scratch_next, int nx, int i0, int j0, int bnx,
                  int bny, double hx, double hy, double k, double dt) {
    const auto gid = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
    const auto lid = [bnx](int i, int j) {
        return static_cast<std::size_t>(j) * bnx + i;
    };
    const double inv_k2 = 1.0 / (k * k);

    for (int j = 0; j < bny; ++j) {
        for (int i = 0; i < bnx; ++i) {
            const int gi = i0 + i;
            const int gj = j0 + j;
            double gx, gy;
            if (i == 0) gx = (u[gid(gi + 1, gj)] - u[gid(gi, gj)]) / hx;
            else if (i == bnx - 1) gx = (u[gid(gi, gj)] - u[gid(gi - 1, gj)]) / hx;
            else gx = (u[gid(gi + 1, gj)] - u[gid(gi - 1, gj)]) / (2.0 * hx);
            if (j == 0) gy = (u[gid(gi, gj + 1)] - u[gid(gi, gj)]) / hy;
            else if (j == bny - 1) gy = (u[gid(gi, gj)] - u[gid(gi, gj - 1)]) / hy;
            else gy = (u[gid(gi, gj + 1)] - u[gid(gi, gj - 1)]) / (2.0 * hy);
            scratch_c[lid(i, j)] = std::exp(-(gx * gx + gy * gy) * inv_k2);
        }
    }

    const double ihx2 = 1.0 / (hx * hx);
    const double ihy2 = 1.0 / (hy * hy);
    for (int j = 1; j + 1 < bny; ++j) {
        for (int i = 1; i + 1 < bnx; ++i) {
            const std::size_t c = lid(i, j);
            const std::size_t gc = gid(i0 + i, j0 + j);
            const double cE = 0.5 * (scratch_c[c] + scratch_c[c + 1]);
            const double cW = 0.5 * (scratch_c[c] + scratch_c[c - 1]);
            const double cN = 0.5 * (scratch_c[c] + scratch_c[c + bnx]);
            const double cS = 0.5 * (scratch_c[c] + scratch_c[c - bnx]);
            const double flux =
                (cE * (u[gc + 1] - u[gc]) - cW * (u[gc] - u[gc - 1])) * ihx2 +
                (cN * (u[gc + nx] - u[gc]) - cS * (u[gc] - u[gc - nx])) * ihy2;
            scratch_next[c] = u[gc] + dt * flux;
        }
    }
    for (int j = 1; j + 1 < bny; ++j)
        for (int i = 1; i + 1 < bnx; ++i)
            u[gid(i0 + i, j0 + j)] = scratch_next[lid(i, j)];
}

void smooth_field(ScalarField& field, const SmoothConfig& cfg,
                  const SubdomainLayout* layout) {
    const GridSpec& g = field.spec;
    struct Block {
        int i0, j0, bnx, bny;
    };
    std::vector<Block> blocks;
    if (cfg.scope == SmoothScope::per_subdomain) {
        for (int b = 0; b < layout->n_sub_y; ++b) {
            for (int a = 0; a < layout->n_sub_x; ++a) {
                const Subdomain s = layout->subdomain(a, b);
                blocks.push_back({s.i0, s.j0, s.nx, s.ny});
            }
        }
    } else {
        blocks.push_back({0, 0, g.nx, g.ny});
    }

    std::vector<std::vector<double>> scratch_c(blocks.size());
    std::vector<std::vector<double>> scratch_next(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::size_t n = static_cast<std::size_t>(blocks[b].bnx) * blocks[b].bny;
        scratch_c[b].assign(n, 0.0);
        scratch_next[b].assign(n, 0.0);
    }

    double prev_update = -1.0;
    for (int step = 0; step < cfg.steps; ++step) {
        const std::vector<double> before = field.values;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const Block& blk = blocks[b];
            smooth_block(field.values, scratch_c[b], scratch_next[b], g.nx, blk.i0,
                         blk.j0, blk.bnx, blk.bny, g.hx(), g.hy(), cfg.k, cfg.dt);
        }
        double upd = 0.0;
        for (std::size_t n = 0; n < before.size(); ++n)
            upd = std::max(upd, std::abs(field.values[n] - before[n]));
        if (prev_update >= 0.0 && upd > 10.0 * prev_update && upd > 1e-14) {
            throw NumericalError("perona_malik: FTCS unstable at dt=" +
                                 std::to_string(cfg.dt) + " (update grew from " +
                                 std::to_string(prev_update) + " to " +
                                 std::to_string(upd) + ")");
        }
        prev_update = upd;
    }
}

}  // namespace

MeshSolution perona_malik(const MeshSolution& sol, const SmoothConfig& cfg,
                          const SubdomainLayout* layout) {
    cfg.validate();
    if (cfg.scope == SmoothScope::per_subdomain && layout == nullptr) {
        throw ValidationError("perona_malik: per-subdomain scope needs a layout");
    }
    MeshSolution out = sol;
    if (cfg.steps == 0) return out;
    smooth_field(out.xi, cfg, layout);
    smooth_field(out.eta, cfg, layout);
    return out;
}

std::vector<double> smooth_interface(const std::vector<double>& values, int span) {
    const int n = static_cast<int>(values.size());
    if (span < 3 || span % 2 == 0 || span > n) {
        throw ValidationError("smooth_interface: span must be odd and in [3, length]");
    }
    std::vector<double> out = values;
    for (int i = 1; i + 1 < n; ++i) {
        const int half = (span - 1) / 2;
        const int lo = std::clamp(i - half, 0, n - span);
        // Tricube weights over the window, scaled one node past the halfwidth
        // so the extreme window points keep positive weight.
        double dmax = 0.0;
        for (int j = lo; j < lo + span; ++j) dmax = std::max(dmax, std::abs(double(j - i)));
        dmax += 1.0;
        // Degree-2 weighted least squares, evaluated at t = 0.
        double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, b0 = 0, b1 = 0, b2 = 0;
        for (int j = lo; j < lo + span; ++j) {
            const double t = double(j - i);
            const double a = 1.0 - std::pow(std::abs(t) / dmax, 3.0);
            const double w = a * a * a;
            const double v = values[j];
            s0 += w;
            s1 += w * t;
            s2 += w * t * t;
            s3 += w * t * t * t;
            s4 += w * t * t * t * t;
            b0 += w * v;
            b1 += w * t * v;
            b2 += w * t * t * v;
        }
        // Solve the 3x3 normal equations for the constant coefficient.
        const double d = s0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s2 * s3) +
                         s2 * (s1 * s3 - s2 * s2);
        if (std::abs(d) < 1e-300) {
            throw NumericalError("smooth_interface: singular local fit");
        }
        const double c0 = b0 * (s2 * s4 - s3 * s3) - s1 * (b1 * s4 - b2 * s3) +
                          s2 * (b1 * s3 - b2 * s2);
        out[i] = c0 / d;
    }
    return out;
}

}  // namespace sdd
