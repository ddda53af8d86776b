#pragma once

// Dormand-Prince 8(5,3) embedded Runge-Kutta pair (Hairer, Norsett & Wanner).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace halfspace::dop853 {

namespace coef {
    constexpr double c2 = 0.526001519587677318785587544488e-01;
    constexpr double c3 = 0.789002279381515978178381316732e-01;
    constexpr double c4 = 0.118350341907227396726757197510e+00;
    constexpr double c5 = 0.281649658092772603273242802490e+00;
    constexpr double c6 = 0.333333333333333333333333333333e+00;
    constexpr double c7 = 0.25e+00;
    constexpr double c8 = 0.307692307692307692307692307692e+00;
    constexpr double c9 = 0.651282051282051282051282051282e+00;
    constexpr double c10 = 0.6e+00;
    constexpr double c11 = 0.857142857142857142857142857142e+00;
    constexpr double a21 = 5.26001519587677318785587544488e-2;
    constexpr double a31 = 1.97250569845378994544595329183e-2;
    constexpr double a32 = 5.91751709536136983633785987549e-2;
    constexpr double a41 = 2.95875854768068491816892993775e-2;
    constexpr double a43 = 8.87627564304205475450678981324e-2;
    constexpr double a51 = 2.41365134159266685502369798665e-1;
    constexpr double a53 = -8.84549479328286085344864962717e-1;
    constexpr double a54 = 9.24834003261792003115737966543e-1;
    constexpr double a61 = 3.7037037037037037037037037037e-2;
    constexpr double a64 = 1.70828608729473871279604482173e-1;
    constexpr double a65 = 1.25467687566822425016691814123e-1;
    constexpr double a71 = 3.7109375e-2;
    constexpr double a74 = 1.70252211019544039314978060272e-1;
    constexpr double a75 = 6.02165389804559606850219397283e-2;
    constexpr double a76 = -1.7578125e-2;
    constexpr double a81 = 3.70920001185047927108779319836e-2;
    constexpr double a84 = 1.70383925712239993810214054705e-1;
    constexpr double a85 = 1.07262030446373284651809199168e-1;
    constexpr double a86 = -1.53194377486244017527936158236e-2;
    constexpr double a87 = 8.27378916381402288758473766002e-3;
    constexpr double a91 = 6.24110958716075717114429577812e-1;
    constexpr double a94 = -3.36089262944694129406857109825e0;
    constexpr double a95 = -8.68219346841726006818189891453e-1;
    constexpr double a96 = 2.75920996994467083049415600797e1;
    constexpr double a97 = 2.01540675504778934086186788979e1;
    constexpr double a98 = -4.34898841810699588477366255144e1;
    constexpr double a101 = 4.77662536438264365890433908527e-1;
    constexpr double a104 = -2.48811461997166764192642586468e0;
    constexpr double a105 = -5.90290826836842996371446475743e-1;
    constexpr double a106 = 2.12300514481811942347288949897e1;
    constexpr double a107 = 1.52792336328824235832596922938e1;
    constexpr double a108 = -3.32882109689848629194453265587e1;
    constexpr double a109 = -2.03312017085086261358222928593e-2;
    constexpr double a111 = -9.3714243008598732571704021658e-1;
    constexpr double a114 = 5.18637242884406370830023853209e0;
    constexpr double a115 = 1.09143734899672957818500254654e0;
    constexpr double a116 = -8.14978701074692612513997267357e0;
    constexpr double a117 = -1.85200656599969598641566180701e1;
    constexpr double a118 = 2.27394870993505042818970056734e1;
    constexpr double a119 = 2.49360555267965238987089396762e0;
    constexpr double a1110 = -3.0467644718982195003823669022e0;
    constexpr double a121 = 2.27331014751653820792359768449e0;
    constexpr double a124 = -1.05344954667372501984066689879e1;
    constexpr double a125 = -2.00087205822486249909675718444e0;
    constexpr double a126 = -1.79589318631187989172765950534e1;
    constexpr double a127 = 2.79488845294199600508499808837e1;
    constexpr double a128 = -2.85899827713502369474065508674e0;
    constexpr double a129 = -8.87285693353062954433549289258e0;
    constexpr double a1210 = 1.23605671757943030647266201528e1;
    constexpr double a1211 = 6.43392746015763530355970484046e-1;
    constexpr double a141 = 5.61675022830479523392909219681e-2;
    constexpr double b1 = 5.42937341165687622380535766363e-2;
    constexpr double b6 = 4.45031289275240888144113950566e0;
    constexpr double b7 = 1.89151789931450038304281599044e0;
    constexpr double b8 = -5.8012039600105847814672114227e0;
    constexpr double b9 = 3.1116436695781989440891606237e-1;
    constexpr double b10 = -1.52160949662516078556178806805e-1;
    constexpr double b11 = 2.01365400804030348374776537501e-1;
    constexpr double b12 = 4.47106157277725905176885569043e-2;
    constexpr double e31 = 0.244094488188976377952755905512e+00;
    constexpr double e32 = 0.733846688281611857341361741547e+00;
    constexpr double e33 = 0.220588235294117647058823529412e-01;
    constexpr double e51 = 0.1312004499419488073250102996e-01;
    constexpr double e56 = -0.1225156446376204440720569753e+01;
    constexpr double e57 = -0.4957589496572501915214079952e+00;
    constexpr double e58 = 0.1664377182454986536961530415e+01;
    constexpr double e59 = -0.3503288487499736816886487290e+00;
    constexpr double e510 = 0.3341791187130174790297318841e+00;
    constexpr double e511 = 0.8192320648511571246570742613e-01;
    constexpr double e512 = -0.2235530786388629525884427845e-01;
}  // namespace coef

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
struct Attempt {
    State<N> y;      // proposed state at t + h
    double err = 0;  // scaled error norm; accept when <= 1
    bool finite = true;
};

/// One trial step of size h (either sign) from (t, y) with k1 = f(t, y).
/// `rhs` maps (t, state) -> derivative.
template <std::size_t N, class Rhs>
Attempt<N> attempt(const Rhs& rhs, double t, const State<N>& y, const State<N>& k1, double h, double rtol,
                   double atol) {
    using namespace coef;
    State<N> w{};
    auto stage = [&](auto&& combine) {
        for (std::size_t i = 0; i < N; ++i) w[i] = y[i] + h * combine(i);
    };
    stage([&](std::size_t i) { return a21 * k1[i]; });
    const State<N> k2 = rhs(t + c2 * h, w);
    stage([&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; });
    const State<N> k3 = rhs(t + c3 * h, w);
    stage([&](std::size_t i) { return a41 * k1[i] + a43 * k3[i]; });
    const State<N> k4 = rhs(t + c4 * h, w);
    stage([&](std::size_t i) { return a51 * k1[i] + a53 * k3[i] + a54 * k4[i]; });
    const State<N> k5 = rhs(t + c5 * h, w);
    stage([&](std::size_t i) { return a61 * k1[i] + a64 * k4[i] + a65 * k5[i]; });
    const State<N> k6 = rhs(t + c6 * h, w);
    stage([&](std::size_t i) { return a71 * k1[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]; });
    const State<N> k7 = rhs(t + c7 * h, w);
    stage([&](std::size_t i) { return a81 * k1[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] + a87 * k7[i]; });
    const State<N> k8 = rhs(t + c8 * h, w);
    stage([&](std::size_t i) {
        return a91 * k1[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] + a97 * k7[i] + a98 * k8[i];
    });
    const State<N> k9 = rhs(t + c9 * h, w);
    stage([&](std::size_t i) {
        return a101 * k1[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] + a107 * k7[i] + a108 * k8[i] +
               a109 * k9[i];
    });
    const State<N> k10 = rhs(t + c10 * h, w);
    stage([&](std::size_t i) {
        return a111 * k1[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] + a117 * k7[i] + a118 * k8[i] +
               a119 * k9[i] + a1110 * k10[i];
    });
    const State<N> k11 = rhs(t + c11 * h, w);
    stage([&](std::size_t i) {
        return a121 * k1[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] + a127 * k7[i] + a128 * k8[i] +
               a129 * k9[i] + a1210 * k10[i] + a1211 * k11[i];
    });
    const State<N> k12 = rhs(t + h, w);

    Attempt<N> out;
    double err3 = 0.0, err5 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sum = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] + b10 * k10[i] +
                           b11 * k11[i] + b12 * k12[i];
        out.y[i] = y[i] + h * sum;
        if (!std::isfinite(out.y[i])) out.finite = false;
        const double sk = atol + rtol * std::max(std::abs(y[i]), std::abs(out.y[i]));
        const double e3 = sum - e31 * k1[i] - e32 * k9[i] - e33 * k12[i];
        const double e5 = e51 * k1[i] + e56 * k6[i] + e57 * k7[i] + e58 * k8[i] + e59 * k9[i] + e510 * k10[i] +
                          e511 * k11[i] + e512 * k12[i];
        err3 += (e3 / sk) * (e3 / sk);
        err5 += (e5 / sk) * (e5 / sk);
    }
    double denom = err5 + 0.01 * err3;
    if (!(denom > 0.0)) denom = 1.0;
    out.err = std::abs(h) * err5 * std::sqrt(1.0 / (static_cast<double>(N) * denom));
    if (!std::isfinite(out.err)) out.finite = false;
    return out;
}

/// Step-size factor after an attempt with error norm `err` (h_new = factor * h).
inline double step_factor(double err, bool accepted) {
    constexpr double safe = 0.9;
    constexpr double grow = 6.0;
    constexpr double shrink = 0.333;
    if (err == 0.0) return accepted ? grow : 1.0;
    const double f = safe * std::pow(err, -0.125);
    return std::clamp(f, shrink, accepted ? grow : 1.0);
}

}  // namespace halfspace::dop853
