#include "kf/detail/propagate.hpp"

namespace kf::detail {

ShootState propagate_forward(const QuadratureMesh& mesh, double coeff, double g0, double dg0) {
    const auto& x = mesh.points();
    const auto& mass = mesh.cell_mass();
    ShootState s;
    s.g.resize(x.size());
    s.dg.resize(x.size());
    s.g[0] = g0;
    s.dg[0] = dg0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double h = x[i + 1] - x[i];
        double gm = s.g[i] + s.dg[i] * 0.5 * h;
        double d = s.dg[i] + coeff * mass[i] * gm;
        s.g[i + 1] = gm + d * 0.5 * h;
        s.dg[i + 1] = d;
    }
    return s;
}

ShootState propagate_backward(const QuadratureMesh& mesh, double coeff, double g1, double dg1) {
    const auto& x = mesh.points();
    const auto& mass = mesh.cell_mass();
    ShootState s;
    s.g.resize(x.size());
    s.dg.resize(x.size());
    s.g.back() = g1;
    s.dg.back() = dg1;
    for (std::size_t i = x.size() - 1; i-- > 0;) {
        double h = x[i + 1] - x[i];
        double gm = s.g[i + 1] - s.dg[i + 1] * 0.5 * h;
        double d = s.dg[i + 1] - coeff * mass[i] * gm;
        s.g[i] = gm - d * 0.5 * h;
        s.dg[i] = d;
    }
    return s;
}

}  // namespace kf::detail
