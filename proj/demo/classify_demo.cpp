// Shoots profiles from the origin with a range of growing-mode coefficients b, then recovers each
// one as a member of the solution family: the power solution for b = 0, otherwise the canonical
// slope-1 solution rescaled to the measured limit slope. A non-solution control is rejected.
//
// usage: classify_demo [gamma]

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include <halfspace/halfspace.hpp>

namespace hs = halfspace;

int main(int argc, char** argv) {
    try {
        const double gamma = argc > 1 ? std::strtod(argv[1], nullptr) : 2.0;
        const auto g = hs::GammaParam::make(gamma);
        hs::ShootSpec wide;
        wide.horizon = 1e6;
        const auto fam = hs::Family::make(g, wide);
        std::printf("gamma = %g, C_gamma = %.15g, canonical M = 1 profile to t = %g\n\n", gamma, g.c_gamma,
                    fam.canonical.t_max());
        std::printf("%-22s %-14s %-14s %-14s %-12s\n", "input", "class", "limit slope", "lambda", "discrepancy");
        auto row = [&](const std::string& name, const hs::Profile1D& p) {
            const auto c = hs::classify(p, fam);
            std::printf("%-22s %-14s %-14.8g %-14.6g %-12.3g\n", name.c_str(), std::string(hs::to_string(c.cls)).c_str(),
                        c.slope, c.lambda, c.discrepancy());
        };
        for (double b : {0.0, 0.01, 0.1, 1.0, 10.0}) {
            const auto p = hs::shoot_from_origin(g, b, hs::ShootSpec{}).profile;
            row("shot from 0, b=" + hs::io::format_double(b), p);
        }
        row("supersolution w", hs::sample_supersolution_w(g, hs::log_grid(1e-6, 1e3, 400)));
        return 0;
    } catch (const hs::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
