#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "hybridlie/brackets.hpp"
#include "hybridlie/plane_wave.hpp"

namespace hybridlie {

/// Jacobi residual of the (alpha, beta, gamma) bracket family at one node of
/// the landscape, split by the number of traceless factors involved in the
/// probing triples.
struct AnsatzResidual {
    double alpha = 0.0;
    double beta = 1.0;
    double gamma = 0.0;
    double jacobi = 0.0;    // max over all probing triples, scaled
    double case_nq2 = 0.0;  // triples with two traceless factors
    double case_nq3 = 0.0;  // triples with three traceless factors
};

/// Scans the Jacobi residual of the ansatz bracket over a parameter grid.
/// Probing triples per node: the fixed discriminating family built from
/// C = x^2, C' = k^2, C'' = x k over every basis-index channel, plus seeded
/// random single-component and mixed hybrid triples (degree <= 2, n_c = 1).
/// Deterministic for a given seed.
std::vector<AnsatzResidual> ansatz_jacobi_scan(int n, const std::vector<double>& alphas,
                                               const std::vector<double>& betas,
                                               const std::vector<double>& gammas,
                                               int random_instances, uint64_t seed);

/// Residual at a single (alpha, beta, gamma) node.
AnsatzResidual ansatz_jacobi_residual(const BasisPtr& basis, double alpha, double beta,
                                      double gamma, int random_instances, uint64_t seed);

/// Numerical facts about the rank-4 invariant tensors of su(n):
///  n = 2: d vanishes identically and the three delta-delta tensors have
///         Gram rank 3;
///  n = 3: delta_jk delta_im + delta_ki delta_jm + delta_ij delta_km equals
///         3 (d_jkl d_ilm + d_kil d_jlm + d_ijl d_klm) index-wise;
///  n >= 4: the nine tensors built from delta, d and f are independent
///         (Gram rank 9).
struct TensorBasisReport {
    int n = 0;
    double d_max_abs = 0.0;
    double n3_identity_residual = 0.0;  // meaningful for n = 3
    int gram_rank = 0;
    std::vector<double> gram_eigenvalues;
};

TensorBasisReport tensor_basis_check(int n);

/// Max residual of f(v1)(v3 - v2) - (v3 - v1) f(v2) - (v1 - v2) f(v3) over the
/// samples; zero precisely when f is affine on the sampled span.
double appendix_functional_residual(const std::function<double(double)>& f,
                                    const std::vector<std::array<double, 3>>& samples);

}  // namespace hybridlie
