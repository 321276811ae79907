#pragma once

#include <algorithm>
#include <array>
#include <vector>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace hecke {

// Adaptive Gauss-Kronrod (7-15) on finite intervals, bisection refinement.
// Works for real- or complex-valued integrands of a real variable.

namespace gk {

inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace gk

struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename F>
auto gk15_panel(F&& f, double a, double b, double* err) {
    using V = decltype(f(0.0));
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    V fc = f(c);
    V resk = fc * gk::wgk[7];
    V resg = fc * gk::wg[3];
    double magk = std::abs(fc) * gk::wgk[7];
    for (int i = 0; i < 7; ++i) {
        V f1 = f(c - h * gk::xgk[i]);
        V f2 = f(c + h * gk::xgk[i]);
        resk += (f1 + f2) * gk::wgk[i];
        magk += (std::abs(f1) + std::abs(f2)) * gk::wgk[i];
        if (i % 2 == 1) resg += (f1 + f2) * gk::wg[i / 2];
    }
    resk *= h;
    resg *= h;
    double diff = std::abs(resk - resg);
    double scale = magk * std::abs(h);
    double e = diff;
    if (scale > 0.0 && diff > 0.0) {
        double r = 200.0 * diff / scale;
        e = r < 1.0 ? scale * std::pow(r, 1.5) : scale;
    }
    *err = e;
    return resk;
}

// Integrate f over [a, b]: global adaptive bisection, always refining the
// panel with the largest error estimate, until the summed estimate is below
// abs_tol (or a small relative floor). Throws QuadratureFailure if the
// panel budget is exhausted first.
template <typename F>
auto integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_panels = 4000) {
    using V = decltype(f(0.0));
    struct Panel {
        double a, b, err;
        V val;
    };
    std::vector<Panel> panels;
    double err0 = 0;
    V v0 = gk15_panel(f, a, b, &err0);
    panels.push_back({a, b, err0, v0});
    for (;;) {
        double total_err = 0;
        double total_mag = 0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total_err += panels[i].err;
            total_mag += std::abs(panels[i].val);
            if (panels[i].err > panels[worst].err) worst = i;
        }
        if (total_err <= abs_tol || total_err <= 1e-15 * total_mag) break;
        if (static_cast<int>(panels.size()) >= max_panels)
            throw QuadratureFailure("adaptive quadrature: panel budget exhausted");
        Panel p = panels[worst];
        double m = 0.5 * (p.a + p.b);
        if (m <= p.a || m >= p.b)
            throw QuadratureFailure("adaptive quadrature: interval too small to split");
        double e1 = 0, e2 = 0;
        V v1 = gk15_panel(f, p.a, m, &e1);
        V v2 = gk15_panel(f, m, p.b, &e2);
        panels[worst] = {p.a, m, e1, v1};
        panels.push_back({m, p.b, e2, v2});
    }
    // Sum smallest-magnitude first for reproducible, accurate accumulation.
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return std::abs(x.val) < std::abs(y.val); });
    V total{};
    for (const auto& p : panels) total += p.val;
    return total;
}

}  // namespace hecke
