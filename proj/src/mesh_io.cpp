#include "sdd/mesh_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace sdd {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_mesh(const PhysicalMesh& mesh, const MeshSolution& sol,
                const std::string& path) {
    if (sol.spec().nx != mesh.m_xi || sol.spec().ny != mesh.m_eta) {
        throw ValidationError("write_mesh: solution grid " +
                              std::to_string(sol.spec().nx) + "x" +
                              std::to_string(sol.spec().ny) + " does not match mesh " +
                              std::to_string(mesh.m_xi) + "x" +
                              std::to_string(mesh.m_eta));
    }
    std::ostringstream os;
    os << "sddmesh v1 " << mesh.m_xi << " " << mesh.m_eta << "\n";
    for (int a = 0; a < mesh.m_xi; ++a) {
        for (int b = 0; b < mesh.m_eta; ++b) {
            const std::size_t n = mesh.idx(a, b);
            const std::size_t s = sol.spec().idx(a, b);
            os << a << " " << b << " " << fmt17(mesh.x[n]) << " " << fmt17(mesh.y[n])
               << " " << fmt17(sol.xi.values[s]) << " " << fmt17(sol.eta.values[s])
               << "\n";
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_mesh: cannot open " + path);
    out << os.str();
    if (!out) throw Error("write_mesh: write failed for " + path);
}

MeshFile read_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("read_mesh: cannot open " + path);
    std::string magic, version;
    int mx = 0, me = 0;
    if (!(in >> magic >> version >> mx >> me) || magic != "sddmesh" || version != "v1") {
        throw Error("read_mesh: " + path + " is not an sddmesh v1 file");
    }
    if (mx < 2 || me < 2) throw Error("read_mesh: bad node counts in " + path);

    std::vector<double> x(static_cast<std::size_t>(mx) * me);
    std::vector<double> y(x.size()), xi(x.size()), eta(x.size());
    std::vector<char> seen(x.size(), 0);
    for (std::size_t row = 0; row < x.size(); ++row) {
        int a, b;
        double vx, vy, vxi, veta;
        if (!(in >> a >> b >> vx >> vy >> vxi >> veta)) {
            throw Error("read_mesh: truncated file " + path);
        }
        if (a < 0 || a >= mx || b < 0 || b >= me) {
            throw Error("read_mesh: node index out of range in " + path);
        }
        const std::size_t n = static_cast<std::size_t>(b) * mx + a;
        x[n] = vx;
        y[n] = vy;
        xi[n] = vxi;
        eta[n] = veta;
        seen[n] = 1;
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw Error("read_mesh: missing nodes in " + path);
    }

    double xmin = x[0], xmax = x[0], ymin = y[0], ymax = y[0];
    for (std::size_t n = 0; n < x.size(); ++n) {
        xmin = std::min(xmin, x[n]);
        xmax = std::max(xmax, x[n]);
        ymin = std::min(ymin, y[n]);
        ymax = std::max(ymax, y[n]);
    }
    if (!(xmin < xmax) || !(ymin < ymax)) {
        throw Error("read_mesh: degenerate mesh extent in " + path);
    }

    PhysicalMesh mesh(mx, me, RectDomain(xmin, xmax, ymin, ymax));
    mesh.x = std::move(x);
    mesh.y = std::move(y);
    GridSpec spec(mesh.domain, mx, me);
    MeshSolution sol{ScalarField(spec, std::move(xi)), ScalarField(spec, std::move(eta))};
    return MeshFile{std::move(mesh), std::move(sol)};
}

void render_svg(const PhysicalMesh& mesh, const std::string& path) {
    const double w = mesh.domain.width();
    const double h = mesh.domain.height();
    const double width = 1000.0;
    const double height = width * h / w;
    const auto sx = [&](double x) { return (x - mesh.domain.xmin) / w * width; };
    const auto sy = [&](double y) { return (mesh.domain.ymax - y) / h * height; };
    const auto coord = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", v);
        return std::string(buf);
    };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << coord(width)
       << " " << coord(height) << "\">\n";
    os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
    for (int b = 0; b < mesh.m_eta; ++b) {
        os << "<polyline points=\"";
        for (int a = 0; a < mesh.m_xi; ++a) {
            const Point p = mesh.node(a, b);
            os << (a ? " " : "") << coord(sx(p.x)) << "," << coord(sy(p.y));
        }
        os << "\"/>\n";
    }
    for (int a = 0; a < mesh.m_xi; ++a) {
        os << "<polyline points=\"";
        for (int b = 0; b < mesh.m_eta; ++b) {
            const Point p = mesh.node(a, b);
            os << (b ? " " : "") << coord(sx(p.x)) << "," << coord(sy(p.y));
        }
        os << "\"/>\n";
    }
    os << "</g>\n</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("render_svg: cannot open " + path);
    out << os.str();
    if (!out) throw Error("render_svg: write failed for " + path);
}

}  // namespace sdd
