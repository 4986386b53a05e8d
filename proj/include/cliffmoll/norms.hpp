// norms.hpp
// Discrete Lebesgue / Sobolev / Hoelder norms over masked grid regions, and
// the Clifford-valued inner product <f,g> = sum conj(f) g h^n. Weak
// derivatives are realized as iterated central differences; a norm evaluation
// fails loudly if a required stencil leaves the region's data.

#pragma once

#include <limits>
#include <vector>

#include "cliffmoll/field.hpp"
#include "cliffmoll/multivector.hpp"

namespace cliffmoll {

struct NormSpec {
    double p = 2.0;  // in (1, inf) or infinity for the sup norm
    int k = 0;       // derivative order

    NormSpec() = default;
    NormSpec(double p_, int k_) : p(p_), k(k_) {
        if (!(p > 1.0)) throw std::invalid_argument("NormSpec: p must be > 1 (or infinity)");
        if (k < 0) throw std::invalid_argument("NormSpec: k must be >= 0");
    }

    bool is_sup() const { return std::isinf(p); }
};

/// All multi-indices j with |j| <= k in n variables, in lexicographic order.
std::vector<std::vector<int>> multi_indices_up_to(int n, int k);

/// Iterated central difference D^j of one component plane. data must be valid
/// on every node reachable by the stencil from a region node; `region` shrinks
/// accordingly in the returned mask.
ScalarField derivative_plane(const Grid& g, const std::vector<double>& data,
                             const std::vector<uint8_t>& data_mask, const std::vector<int>& j);

/// (sum_region ||f(x)||^p h^n)^{1/p}, multivector coefficient 2-norm
/// pointwise; p = inf gives the sup.
double lp_norm(const CliffordField& f, double p, const std::vector<uint8_t>& region);

double lp_norm_plane(const Grid& g, const std::vector<double>& data, double p,
                     const std::vector<uint8_t>& region);

/// (sum_{|j|<=k} ||D^j f||_p^p)^{1/p} with D^j by central differences.
/// Every stencil must stay inside data_mask (the field's defined nodes);
/// otherwise a margin violation is thrown.
double sobolev_norm(const CliffordField& f, const NormSpec& spec, const std::vector<uint8_t>& region,
                    const std::vector<uint8_t>* data_mask = nullptr);

double sobolev_norm_plane(const Grid& g, const std::vector<double>& data, const NormSpec& spec,
                          const std::vector<uint8_t>& region,
                          const std::vector<uint8_t>* data_mask = nullptr);

/// Estimator of sup ||f(x)-f(y)|| / |x-y|^alpha over region node pairs: all
/// pairs when the region has <= 4096 nodes, otherwise 10^6 seeded random
/// pairs. A lower bound for the true supremum. alpha must lie in (0, 1];
/// exponents above one only fit constant functions and are rejected.
double holder_seminorm(const CliffordField& f, double alpha, const std::vector<uint8_t>& region,
                       uint64_t seed = 0x5eed);

/// <f,g> = sum_region conj(f(x)) g(x) h^n as a multivector.
Multivector clifford_inner_product(const CliffordField& f, const CliffordField& g,
                                   const std::vector<uint8_t>& region);

}  // namespace cliffmoll
