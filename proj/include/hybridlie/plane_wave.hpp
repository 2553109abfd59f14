#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "hybridlie/phase_poly.hpp"

namespace hybridlie {

/// Plane wave amplitude * exp(i k_r . x - i x_r . k), the workhorse basis for
/// the functional-equation checks on the classical sector. The product of two
/// plane waves is the plane wave with added parameters.
struct PlaneWave {
    std::vector<double> xr;
    std::vector<double> kr;
    std::complex<double> amplitude{1.0, 0.0};

    PlaneWave(std::vector<double> xr_, std::vector<double> kr_,
              std::complex<double> amp = {1.0, 0.0})
        : xr(std::move(xr_)), kr(std::move(kr_)), amplitude(amp) {
        if (xr.size() != kr.size())
            throw std::invalid_argument("PlaneWave: parameter length mismatch");
    }

    int dim() const { return static_cast<int>(xr.size()); }

    std::complex<double> evaluate(const PhasePoint& p) const {
        if (p.n_c() != dim())
            throw std::invalid_argument("PlaneWave::evaluate: dimension mismatch");
        double phase = 0.0;
        for (int i = 0; i < dim(); ++i) phase += kr[i] * p.x[i] - xr[i] * p.k[i];
        return amplitude * std::exp(std::complex<double>(0.0, phase));
    }

    /// d/dvar multiplies by i k_{r,i} (x slot) or -i x_{r,i} (k slot).
    PlaneWave derivative(int var) const {
        PlaneWave r = *this;
        if (var < dim())
            r.amplitude *= std::complex<double>(0.0, kr[var]);
        else
            r.amplitude *= std::complex<double>(0.0, -xr[var - dim()]);
        return r;
    }

    friend PlaneWave operator*(const PlaneWave& a, const PlaneWave& b) {
        if (a.dim() != b.dim())
            throw std::invalid_argument("PlaneWave: dimension mismatch");
        std::vector<double> xr(a.xr), kr(a.kr);
        for (int i = 0; i < a.dim(); ++i) {
            xr[i] += b.xr[i];
            kr[i] += b.kr[i];
        }
        return PlaneWave(std::move(xr), std::move(kr), a.amplitude * b.amplitude);
    }

    bool same_parameters(const PlaneWave& o, double tol = 1e-12) const {
        if (dim() != o.dim()) return false;
        for (int i = 0; i < dim(); ++i)
            if (std::abs(xr[i] - o.xr[i]) > tol || std::abs(kr[i] - o.kr[i]) > tol) return false;
        return true;
    }
};

/// Linear combination of plane waves (results of candidate brackets).
using PlaneWaveSum = std::vector<PlaneWave>;

/// The antisymmetric pairing v_rs = k_r . x_s - x_r . k_s.
inline double planewave_pairing(const PlaneWave& r, const PlaneWave& s) {
    if (r.dim() != s.dim())
        throw std::invalid_argument("planewave_pairing: dimension mismatch");
    double v = 0.0;
    for (int i = 0; i < r.dim(); ++i) v += r.kr[i] * s.xr[i] - r.xr[i] * s.kr[i];
    return v;
}

/// Poisson bracket evaluated through the derivative rule term by term; by the
/// bracket law it reduces to v_rs e_{r+s}, which the tests cross-check.
inline PlaneWaveSum poisson_bracket(const PlaneWave& a, const PlaneWave& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("poisson_bracket: dimension mismatch");
    PlaneWaveSum sum;
    int d = a.dim();
    for (int i = 0; i < d; ++i) {
        sum.push_back(a.derivative(i) * b.derivative(d + i));
        PlaneWave neg = a.derivative(d + i) * b.derivative(i);
        neg.amplitude = -neg.amplitude;
        sum.push_back(neg);
    }
    return sum;
}

/// Merges terms with equal parameters and drops negligible amplitudes.
inline PlaneWaveSum collect(const PlaneWaveSum& sum, double tol = 1e-14) {
    PlaneWaveSum out;
    for (const auto& w : sum) {
        bool merged = false;
        for (auto& o : out)
            if (o.same_parameters(w)) {
                o.amplitude += w.amplitude;
                merged = true;
                break;
            }
        if (!merged) out.push_back(w);
    }
    PlaneWaveSum pruned;
    double scale = 0.0;
    for (const auto& w : out) scale = std::max(scale, std::abs(w.amplitude));
    for (const auto& w : out)
        if (std::abs(w.amplitude) > tol * std::max(1.0, scale)) pruned.push_back(w);
    return pruned;
}

/// A candidate auxiliary bracket acting on plane-wave basis functions.
using PlaneWaveBracket = std::function<PlaneWaveSum(const PlaneWave&, const PlaneWave&)>;

/// Extracts F_rs from bracket(e_r, e_s) = F_rs e_{r+s} for unit-amplitude
/// inputs. Returns nullopt when the result is not proportional to e_{r+s},
/// which signals a violation of the locality property of admissible brackets.
std::optional<std::complex<double>> planewave_F_extraction(const PlaneWaveBracket& bracket,
                                                           const PlaneWave& r, const PlaneWave& s,
                                                           double tol = 1e-10);

}  // namespace hybridlie
