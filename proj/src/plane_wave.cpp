#include "hybridlie/plane_wave.hpp"

namespace hybridlie {

std::optional<std::complex<double>> planewave_F_extraction(const PlaneWaveBracket& bracket,
                                                           const PlaneWave& r, const PlaneWave& s,
                                                           double tol) {
    PlaneWave ur(r.xr, r.kr, {1.0, 0.0});
    PlaneWave us(s.xr, s.kr, {1.0, 0.0});
    PlaneWaveSum result = collect(bracket(ur, us));

    PlaneWave target = ur * us;  // e_{r+s}
    std::complex<double> amplitude{0.0, 0.0};
    double stray = 0.0;
    for (const auto& w : result) {
        if (w.same_parameters(target))
            amplitude += w.amplitude;
        else
            stray = std::max(stray, std::abs(w.amplitude));
    }
    if (stray > tol * std::max(1.0, std::abs(amplitude)))
        return std::nullopt;  // not proportional to e_{r+s}
    return amplitude;
}

}  // namespace hybridlie
