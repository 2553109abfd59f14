#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridlie {

/// A point of the classical phase space R^{2 n_c}: positions x and momenta k.
struct PhasePoint {
    std::vector<double> x;
    std::vector<double> k;

    PhasePoint() = default;
    PhasePoint(std::vector<double> x_, std::vector<double> k_)
        : x(std::move(x_)), k(std::move(k_)) {
        if (x.size() != k.size())
            throw std::invalid_argument("PhasePoint: x and k must have equal length");
        for (double v : x)
            if (!std::isfinite(v)) throw std::invalid_argument("PhasePoint: non-finite x entry");
        for (double v : k)
            if (!std::isfinite(v)) throw std::invalid_argument("PhasePoint: non-finite k entry");
    }

    int n_c() const { return static_cast<int>(x.size()); }
};

// Variable indexing convention: variables 0..n_c-1 are x_1..x_{n_c},
// variables n_c..2*n_c-1 are k_1..k_{n_c}. All indices 0-based internally.
inline int xvar(int i) { return i; }
inline int kvar(int n_c, int i) { return n_c + i; }

/// Packs the 2*n_c exponents of a monomial into one 64-bit key, so that
/// monomial multiplication is key addition and map ordering is deterministic.
class MonomialCodec {
  public:
    explicit MonomialCodec(int n_c) : n_c_(n_c) {
        if (n_c < 1 || n_c > 6)
            throw std::invalid_argument("polynomial: n_c must be in [1,6]");
        nvars_ = 2 * n_c;
        bits_ = 60 / nvars_;
        mask_ = (uint64_t{1} << bits_) - 1;
    }

    int n_c() const { return n_c_; }
    int nvars() const { return nvars_; }
    uint64_t max_exponent() const { return mask_; }

    uint64_t encode(const std::vector<int>& exps) const {
        uint64_t key = 0;
        for (int v = 0; v < nvars_; ++v) {
            auto e = static_cast<uint64_t>(exps[v]);
            if (exps[v] < 0 || e > mask_)
                throw std::invalid_argument("monomial exponent out of range");
            key |= e << (bits_ * v);
        }
        return key;
    }

    int exponent(uint64_t key, int var) const {
        return static_cast<int>((key >> (bits_ * var)) & mask_);
    }

    std::vector<int> decode(uint64_t key) const {
        std::vector<int> exps(nvars_);
        for (int v = 0; v < nvars_; ++v) exps[v] = exponent(key, v);
        return exps;
    }

    // Key of the product monomial; throws if any exponent overflows its field.
    uint64_t multiply(uint64_t a, uint64_t b) const {
        for (int v = 0; v < nvars_; ++v) {
            uint64_t s = ((a >> (bits_ * v)) & mask_) + ((b >> (bits_ * v)) & mask_);
            if (s > mask_) throw std::overflow_error("monomial degree overflow");
        }
        return a + b;
    }

    int total_degree(uint64_t key) const {
        int d = 0;
        for (int v = 0; v < nvars_; ++v) d += exponent(key, v);
        return d;
    }

  private:
    int n_c_;
    int nvars_;
    int bits_;
    uint64_t mask_;
};

namespace detail {
inline double abs_value(double v) { return std::abs(v); }
inline double abs_value(const std::complex<double>& v) { return std::abs(v); }
}  // namespace detail

/// Exact multivariate polynomial over the phase-space variables (x, k).
/// Term map: packed monomial -> coefficient; zero polynomial is the empty map.
/// Coefficients below 1e-14 of the largest magnitude are pruned after each
/// operation so identities close coefficient-wise up to rounding.
template <typename Scalar>
class BasicPolynomial {
  public:
    static constexpr double kPruneRel = 1e-14;

    explicit BasicPolynomial(int n_c) : codec_(n_c) {}

    static BasicPolynomial constant(int n_c, Scalar value) {
        BasicPolynomial p(n_c);
        p.add_term(std::vector<int>(2 * n_c, 0), value);
        return p;
    }

    static BasicPolynomial variable(int n_c, int var, int power = 1) {
        BasicPolynomial p(n_c);
        std::vector<int> exps(2 * n_c, 0);
        exps[var] = power;
        p.add_term(exps, Scalar(1));
        return p;
    }

    int n_c() const { return codec_.n_c(); }
    const MonomialCodec& codec() const { return codec_; }
    const std::map<uint64_t, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
    }

    Scalar constant_term() const {
        auto it = terms_.find(0);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    int degree() const {
        int d = 0;
        for (const auto& [key, c] : terms_) d = std::max(d, codec_.total_degree(key));
        return d;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& [key, c] : terms_) m = std::max(m, detail::abs_value(c));
        return m;
    }

    void add_term(const std::vector<int>& exps, Scalar coeff) {
        accumulate(codec_.encode(exps), coeff);
        prune();
    }

    BasicPolynomial& operator+=(const BasicPolynomial& o) {
        check_same(o);
        for (const auto& [key, c] : o.terms_) accumulate(key, c);
        prune();
        return *this;
    }

    BasicPolynomial& operator-=(const BasicPolynomial& o) {
        check_same(o);
        for (const auto& [key, c] : o.terms_) accumulate(key, -c);
        prune();
        return *this;
    }

    BasicPolynomial& operator*=(Scalar s) {
        for (auto& [key, c] : terms_) c *= s;
        prune();
        return *this;
    }

    friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
    friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
    friend BasicPolynomial operator*(BasicPolynomial a, Scalar s) { return a *= s; }
    friend BasicPolynomial operator*(Scalar s, BasicPolynomial a) { return a *= s; }

    BasicPolynomial operator-() const {
        BasicPolynomial r = *this;
        for (auto& [key, c] : r.terms_) c = -c;
        return r;
    }

    friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
        a.check_same(b);
        BasicPolynomial r(a.n_c());
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.accumulate(a.codec_.multiply(ka, kb), ca * cb);
        r.prune();
        return r;
    }

    /// Exact partial derivative with respect to variable `var`.
    BasicPolynomial derivative(int var) const {
        BasicPolynomial r(n_c());
        for (const auto& [key, c] : terms_) {
            int e = codec_.exponent(key, var);
            if (e == 0) continue;
            std::vector<int> exps = codec_.decode(key);
            exps[var] = e - 1;
            r.accumulate(r.codec_.encode(exps), c * Scalar(e));
        }
        r.prune();
        return r;
    }

    Scalar evaluate(const PhasePoint& p) const {
        if (p.n_c() != n_c())
            throw std::invalid_argument("evaluate: phase-point dimension mismatch");
        Scalar total(0);
        for (const auto& [key, c] : terms_) {
            Scalar term = c;
            for (int v = 0; v < codec_.nvars(); ++v) {
                int e = codec_.exponent(key, v);
                double base = v < n_c() ? p.x[v] : p.k[v - n_c()];
                for (int j = 0; j < e; ++j) term *= base;
            }
            total += term;
        }
        return total;
    }

    bool operator==(const BasicPolynomial& o) const {
        return n_c() == o.n_c() && terms_ == o.terms_;
    }

  private:
    void check_same(const BasicPolynomial& o) const {
        if (n_c() != o.n_c())
            throw std::invalid_argument("polynomial: classical dimension mismatch");
    }

    void accumulate(uint64_t key, Scalar coeff) {
        auto [it, inserted] = terms_.try_emplace(key, coeff);
        if (!inserted) {
            it->second += coeff;
            if (detail::abs_value(it->second) == 0.0) terms_.erase(it);
        }
    }

    void prune() {
        double cutoff = kPruneRel * max_abs_coeff();
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (detail::abs_value(it->second) <= cutoff)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    MonomialCodec codec_;
    std::map<uint64_t, Scalar> terms_;
};

using PhasePolynomial = BasicPolynomial<double>;
using ComplexPolynomial = BasicPolynomial<std::complex<double>>;

inline ComplexPolynomial to_complex(const PhasePolynomial& p) {
    ComplexPolynomial r(p.n_c());
    for (const auto& [key, c] : p.terms()) r.add_term(p.codec().decode(key), {c, 0.0});
    return r;
}

/// Real part of a complex polynomial (used when re-expanding operator-level
/// results that are Hermitian by construction).
inline PhasePolynomial real_part(const ComplexPolynomial& p) {
    PhasePolynomial r(p.n_c());
    for (const auto& [key, c] : p.terms()) r.add_term(p.codec().decode(key), c.real());
    return r;
}

inline double max_imag_coeff(const ComplexPolynomial& p) {
    double m = 0.0;
    for (const auto& [key, c] : p.terms()) m = std::max(m, std::abs(c.imag()));
    return m;
}

/// Canonical Poisson bracket sum_i (dA/dx_i dB/dk_i - dA/dk_i dB/dx_i).
/// Exact on polynomials: bilinear, antisymmetric, Leibniz, Jacobi.
template <typename Scalar>
BasicPolynomial<Scalar> poisson_bracket(const BasicPolynomial<Scalar>& a,
                                        const BasicPolynomial<Scalar>& b) {
    if (a.n_c() != b.n_c())
        throw std::invalid_argument("poisson_bracket: classical dimension mismatch");
    BasicPolynomial<Scalar> r(a.n_c());
    for (int i = 0; i < a.n_c(); ++i) {
        r += a.derivative(xvar(i)) * b.derivative(kvar(a.n_c(), i));
        r -= a.derivative(kvar(a.n_c(), i)) * b.derivative(xvar(i));
    }
    return r;
}

inline double levi_civita(int i, int j, int k) {
    return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
}

/// Orbital angular momentum L_i = eps_{ijk} x_j k_k as a polynomial (n_c = 3).
inline PhasePolynomial angular_momentum(int i) {
    const int n_c = 3;
    int j = (i + 1) % 3;
    int k = (i + 2) % 3;
    PhasePolynomial p(n_c);
    std::vector<int> e(6, 0);
    e[xvar(j)] = 1;
    e[kvar(n_c, k)] = 1;
    p.add_term(e, 1.0);
    std::fill(e.begin(), e.end(), 0);
    e[xvar(k)] = 1;
    e[kvar(n_c, j)] = 1;
    p.add_term(e, -1.0);
    return p;
}

/// Substitutes L_i = eps_{ijk} x_j k_k into a polynomial over three variables
/// (given as an n_c = 3 polynomial in x_1,x_2,x_3 with no k dependence).
inline PhasePolynomial compose_angular(const PhasePolynomial& poly_in_L) {
    if (poly_in_L.n_c() != 3)
        throw std::invalid_argument("compose_angular: expected an n_c=3 polynomial over L");
    std::vector<PhasePolynomial> L{angular_momentum(0), angular_momentum(1), angular_momentum(2)};
    PhasePolynomial r(3);
    for (const auto& [key, c] : poly_in_L.terms()) {
        for (int v = 3; v < 6; ++v)
            if (poly_in_L.codec().exponent(key, v) != 0)
                throw std::invalid_argument("compose_angular: polynomial must not involve k slots");
        PhasePolynomial term = PhasePolynomial::constant(3, c);
        for (int v = 0; v < 3; ++v)
            for (int j = 0; j < poly_in_L.codec().exponent(key, v); ++j) term = term * L[v];
        r += term;
    }
    return r;
}

}  // namespace hybridlie
