#include "hybridlie/uniqueness.hpp"

#include <Eigen/Eigenvalues>
#include <random>

namespace hybridlie {

namespace {

// splitmix64, used to derive independent per-node seeds from one scan seed.
uint64_t mix_seed(uint64_t state) {
    uint64_t z = state + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4b91full;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

PhasePolynomial random_poly(std::mt19937_64& rng, int n_c, int max_degree, int terms) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(0, max_degree);
    PhasePolynomial p(n_c);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> exps(2 * n_c, 0);
        int budget = deg(rng);
        std::uniform_int_distribution<int> var(0, 2 * n_c - 1);
        for (int d = 0; d < budget; ++d) exps[var(rng)] += 1;
        p.add_term(exps, coeff(rng));
    }
    return p;
}

HybridObservable single_component(const BasisPtr& basis, int n_c, int index,
                                  PhasePolynomial c) {
    HybridObservable a = HybridObservable::zero(basis, n_c);
    a.a(index) = std::move(c);
    return a;
}

double scaled_jacobi(const BasisPtr& basis, double alpha, double beta, double gamma,
                     const HybridObservable& a, const HybridObservable& b,
                     const HybridObservable& c) {
    double scale = 1.0;
    double r = jacobi_residual(BracketKind::ansatz(alpha, beta, gamma), a, b, c, &scale);
    return r / scale;
}

}  // namespace

AnsatzResidual ansatz_jacobi_residual(const BasisPtr& basis, double alpha, double beta,
                                      double gamma, int random_instances, uint64_t seed) {
    const int n_c = 1;
    const int m = basis->size();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, m - 1);

    AnsatzResidual out;
    out.alpha = alpha;
    out.beta = beta;
    out.gamma = gamma;

    PhasePolynomial x2 = PhasePolynomial::variable(n_c, xvar(0), 2);
    PhasePolynomial k2 = PhasePolynomial::variable(n_c, kvar(n_c, 0), 2);
    PhasePolynomial xk =
        PhasePolynomial::variable(n_c, xvar(0)) * PhasePolynomial::variable(n_c, kvar(n_c, 0));

    // Fixed discriminating family: C = x^2, C' = k^2, C'' = x k, swept over a
    // deterministic set of index channels plus random ones. The repeated
    // index must visit every slot pair: the nested classical brackets of the
    // family vanish in some cyclic orders but not in others.
    std::vector<std::array<int, 3>> channels;
    for (int i = 0; i < m; ++i) {
        int j = (i + 1) % m, k = (i + 2) % m;
        channels.push_back({i, j, k});
        channels.push_back({i, i, j});
        channels.push_back({i, j, i});
        channels.push_back({j, i, i});
        channels.push_back({i, i, i});
    }
    for (int r = 0; r < random_instances; ++r)
        channels.push_back({pick(rng), pick(rng), pick(rng)});

    for (const auto& ch : channels) {
        double r3 = scaled_jacobi(basis, alpha, beta, gamma,
                                  single_component(basis, n_c, ch[0], x2),
                                  single_component(basis, n_c, ch[1], k2),
                                  single_component(basis, n_c, ch[2], xk));
        out.case_nq3 = std::max(out.case_nq3, r3);
        double r2 = scaled_jacobi(basis, alpha, beta, gamma,
                                  single_component(basis, n_c, ch[0], x2),
                                  single_component(basis, n_c, ch[1], k2),
                                  HybridObservable::classical(basis, xk));
        out.case_nq2 = std::max(out.case_nq2, r2);
    }

    // Random mixed triples: classical part plus a few populated components.
    for (int r = 0; r < random_instances; ++r) {
        auto random_hybrid = [&]() {
            HybridObservable h = HybridObservable::classical(basis, random_poly(rng, n_c, 2, 2));
            int parts = 1 + static_cast<int>(rng() % 3);
            for (int p = 0; p < parts; ++p) h.a(pick(rng)) += random_poly(rng, n_c, 2, 2);
            return h;
        };
        HybridObservable a = random_hybrid(), b = random_hybrid(), c = random_hybrid();
        out.jacobi = std::max(out.jacobi, scaled_jacobi(basis, alpha, beta, gamma, a, b, c));
    }
    out.jacobi = std::max({out.jacobi, out.case_nq2, out.case_nq3});
    return out;
}

std::vector<AnsatzResidual> ansatz_jacobi_scan(int n, const std::vector<double>& alphas,
                                               const std::vector<double>& betas,
                                               const std::vector<double>& gammas,
                                               int random_instances, uint64_t seed) {
    auto basis = std::make_shared<const SuBasis>(SuBasis::build(n));
    std::vector<AnsatzResidual> out;
    out.reserve(alphas.size() * betas.size() * gammas.size());
    uint64_t node = 0;
    for (double a : alphas)
        for (double b : betas)
            for (double g : gammas)
                out.push_back(
                    ansatz_jacobi_residual(basis, a, b, g, random_instances, mix_seed(seed + node++)));
    return out;
}

namespace {

// Flattened rank-4 tensor over (i,j,k,m) in [0,m)^4.
using Tensor4 = std::vector<double>;

size_t t4_index(int m, int i, int j, int k, int l) {
    return ((static_cast<size_t>(i) * m + j) * m + k) * m + l;
}

}  // namespace

TensorBasisReport tensor_basis_check(int n) {
    auto basis = SuBasis::build(n);
    const auto sc = structure_constants(basis);
    const int m = sc.m;

    TensorBasisReport report;
    report.n = n;
    for (double v : sc.d) report.d_max_abs = std::max(report.d_max_abs, std::abs(v));

    auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };

    const size_t size = static_cast<size_t>(m) * m * m * m;
    std::vector<Tensor4> tensors;
    tensors.reserve(9);
    for (int which = 0; which < 9; ++which) tensors.emplace_back(size, 0.0);

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    size_t idx = t4_index(m, i, j, k, l);
                    tensors[0][idx] = delta(j, k) * delta(i, l);
                    tensors[1][idx] = delta(k, i) * delta(j, l);
                    tensors[2][idx] = delta(i, j) * delta(k, l);
                    double t3 = 0, t4 = 0, t5 = 0, t6 = 0, t7 = 0, t8 = 0;
                    for (int p = 0; p < m; ++p) {
                        t3 += sc.dijk(j, k, p) * sc.dijk(i, p, l);
                        t4 += sc.dijk(k, i, p) * sc.dijk(j, p, l);
                        t5 += sc.dijk(i, j, p) * sc.dijk(k, p, l);
                        t6 += sc.dijk(j, k, p) * sc.fijk(i, p, l);
                        t7 += sc.dijk(k, i, p) * sc.fijk(j, p, l);
                        t8 += sc.fijk(i, j, p) * sc.dijk(k, p, l);
                    }
                    tensors[3][idx] = t3;
                    tensors[4][idx] = t4;
                    tensors[5][idx] = t5;
                    tensors[6][idx] = t6;
                    tensors[7][idx] = t7;
                    tensors[8][idx] = t8;
                }

    // n = 3 degeneracy: sum of delta-delta pairings equals 3x the symmetric
    // d-d pairings, index by index.
    double residual = 0.0;
    for (size_t idx = 0; idx < size; ++idx) {
        double lhs = tensors[0][idx] + tensors[1][idx] + tensors[2][idx];
        double rhs = 3.0 * (tensors[3][idx] + tensors[4][idx] + tensors[5][idx]);
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    report.n3_identity_residual = residual;

    // Gram rank of the candidate invariant basis. For n = 2 the d-built
    // tensors vanish, leaving the three delta-delta ones.
    int count = n >= 3 ? 9 : 3;
    Eigen::MatrixXd gram(count, count);
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b) {
            double dot = 0.0;
            for (size_t idx = 0; idx < size; ++idx) dot += tensors[a][idx] * tensors[b][idx];
            gram(a, b) = dot;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    double max_eig = solver.eigenvalues().maxCoeff();
    int rank = 0;
    for (int a = 0; a < count; ++a) {
        report.gram_eigenvalues.push_back(solver.eigenvalues()(a));
        if (solver.eigenvalues()(a) > 1e-10 * std::max(1.0, max_eig)) ++rank;
    }
    report.gram_rank = rank;
    return report;
}

double appendix_functional_residual(const std::function<double(double)>& f,
                                    const std::vector<std::array<double, 3>>& samples) {
    double residual = 0.0;
    for (const auto& [v1, v2, v3] : samples) {
        double r = f(v1) * (v3 - v2) - (v3 - v1) * f(v2) - (v1 - v2) * f(v3);
        residual = std::max(residual, std::abs(r));
    }
    return residual;
}

}  // namespace hybridlie
