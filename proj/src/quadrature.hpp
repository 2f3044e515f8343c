// SPDX-License-Identifier: Apache-2.0
//
// sra -- soft tentacle antenna array simulator
// Internal adaptive Gauss-Kronrod quadrature shared by the geometry and
// gradient translation units.

#ifndef SRA_SRC_QUADRATURE_HPP
#define SRA_SRC_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

namespace sra::detail {

// 15-point Gauss-Kronrod pair on [-1, 1]; the embedded 7-point Gauss rule
// provides the error estimate. Standard QUADPACK abscissae/weights.
constexpr double kGkNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
    double integral;
    double error;
};

template <typename F>
PanelResult gauss_kronrod_panel(const F& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double fc = f(mid);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGkNodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += fsum * kKronrodWeights[i];
        if (i % 2 == 1) gauss += fsum * kGaussWeights[i / 2];
    }
    kronrod *= half;
    gauss *= half;
    const double diff = std::abs(kronrod - gauss);
    // QUADPACK-style sharpened estimate, never above the raw difference.
    const double err = std::min(diff, std::pow(200.0 * diff, 1.5));
    return {kronrod, err};
}

// Adaptive bisection until the summed panel error estimate meets abs_tol.
template <typename F>
double adaptive_gauss_kronrod(const F& f, double a, double b, double abs_tol) {
    struct Segment {
        double a, b, integral, error;
    };
    PanelResult whole = gauss_kronrod_panel(f, a, b);
    std::vector<Segment> segments{{a, b, whole.integral, whole.error}};
    constexpr int kMaxSegments = 4000;
    while (static_cast<int>(segments.size()) < kMaxSegments) {
        double total_err = 0.0;
        int worst = 0;
        for (int i = 0; i < static_cast<int>(segments.size()); ++i) {
            total_err += segments[i].error;
            if (segments[i].error > segments[worst].error) worst = i;
        }
        if (total_err <= abs_tol) break;
        Segment seg = segments[worst];
        const double mid = 0.5 * (seg.a + seg.b);
        PanelResult left = gauss_kronrod_panel(f, seg.a, mid);
        PanelResult right = gauss_kronrod_panel(f, mid, seg.b);
        segments[worst] = {seg.a, mid, left.integral, left.error};
        segments.push_back({mid, seg.b, right.integral, right.error});
    }
    double sum = 0.0;
    for (const Segment& s : segments) sum += s.integral;
    return sum;
}

}  // namespace sra::detail

#endif  // SRA_SRC_QUADRATURE_HPP
