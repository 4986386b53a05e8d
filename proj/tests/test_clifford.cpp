#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "cliffmoll/multivector.hpp"
#include "cliffmoll/rng.hpp"

using namespace cliffmoll;

namespace {

// Independent sign oracle: expand both masks to index lists, concatenate,
// bubble-sort counting swaps, cancel equal adjacent pairs with e_i^2 = -1.
std::pair<int, unsigned> blade_product_oracle(unsigned a, unsigned b, int n) {
    std::vector<int> seq;
    for (int i = 0; i < n; ++i)
        if (a & (1u << i)) seq.push_back(i);
    for (int i = 0; i < n; ++i)
        if (b & (1u << i)) seq.push_back(i);
    int sign = 1;
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            if (seq[i] > seq[i + 1]) {
                std::swap(seq[i], seq[i + 1]);
                sign = -sign;
                swapped = true;
            }
        }
    }
    std::vector<int> reduced;
    for (size_t i = 0; i < seq.size();) {
        if (i + 1 < seq.size() && seq[i] == seq[i + 1]) {
            sign = -sign;  // e_i e_i = -1
            i += 2;
        } else {
            reduced.push_back(seq[i]);
            ++i;
        }
    }
    unsigned mask = 0;
    for (int i : reduced) mask |= 1u << i;
    return {sign, mask};
}

Multivector random_mv(int n, SplitMix64& rng) {
    Multivector m(n);
    for (size_t i = 0; i < m.size(); ++i) m[i] = rng.uniform(-1.0, 1.0);
    return m;
}

double max_coeff_diff(const Multivector& a, const Multivector& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("blade products against the transposition-count oracle") {
    for (int n = 1; n <= 4; ++n) {
        const unsigned dim = 1u << n;
        for (unsigned a = 0; a < dim; ++a) {
            for (unsigned b = 0; b < dim; ++b) {
                const auto got = blade_product(a, b);
                const auto [sign, mask] = blade_product_oracle(a, b, n);
                CHECK(got.sign == sign);
                CHECK(got.mask == mask);
            }
        }
    }
}

TEST_CASE("blade product worked examples") {
    // e_1 e_2 = +e_12 (sorted, no repeats)
    CHECK(blade_product(0b01, 0b10).sign == 1);
    CHECK(blade_product(0b01, 0b10).mask == 0b11);
    // e_2 e_1 = -e_12 (one transposition)
    CHECK(blade_product(0b10, 0b01).sign == -1);
    CHECK(blade_product(0b10, 0b01).mask == 0b11);
    // e_12 e_12 = -e_0
    CHECK(blade_product(0b11, 0b11).sign == -1);
    CHECK(blade_product(0b11, 0b11).mask == 0u);
}

TEST_CASE("generators anticommute and square to -1") {
    for (int n = 2; n <= 4; ++n) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Multivector ei = Multivector::basis(n, 1u << i);
                Multivector ej = Multivector::basis(n, 1u << j);
                Multivector s = mv_mul(ei, ej) + mv_mul(ej, ei);
                if (i == j) {
                    Multivector expect = Multivector::scalar(n, -2.0);
                    CHECK(max_coeff_diff(s, expect) == 0.0);
                } else {
                    CHECK(s.norm() == 0.0);
                }
            }
        }
    }
}

TEST_CASE("identity element") {
    SplitMix64 rng(7);
    for (int n = 1; n <= 4; ++n) {
        Multivector e0 = Multivector::scalar(n, 1.0);
        Multivector u = random_mv(n, rng);
        CHECK(max_coeff_diff(mv_mul(e0, u), u) == 0.0);
        CHECK(max_coeff_diff(mv_mul(u, e0), u) == 0.0);
    }
}

TEST_CASE("vector squares to minus its squared length") {
    std::vector<double> x{3.0, 4.0};
    Multivector v = vector_embed(x);
    Multivector sq = mv_mul(v, v);
    CHECK(sq[0] == doctest::Approx(-25.0).epsilon(1e-15));
    for (size_t m = 1; m < sq.size(); ++m) CHECK(sq[m] == 0.0);

    SplitMix64 rng(11);
    for (int n = 2; n <= 4; ++n) {
        std::vector<double> y(static_cast<size_t>(n));
        double norm2 = 0.0;
        for (auto& c : y) {
            c = rng.uniform(-2.0, 2.0);
            norm2 += c * c;
        }
        Multivector sq2 = mv_mul(vector_embed(y), vector_embed(y));
        CHECK(sq2[0] == doctest::Approx(-norm2).epsilon(1e-13));
        Multivector rest = sq2 - Multivector::scalar(n, sq2[0]);
        CHECK(rest.norm() < 1e-13);
    }
}

TEST_CASE("vector_embed basics") {
    std::vector<double> zero{0.0, 0.0, 0.0};
    CHECK(vector_embed(zero).norm() == 0.0);
    std::vector<double> e1{1.0, 0.0};
    Multivector v = vector_embed(e1);
    CHECK(v[0b01] == 1.0);
    CHECK(v.norm() == 1.0);
}

TEST_CASE("associativity on random triples") {
    for (int n : {2, 3, 4}) {
        SplitMix64 rng(100 + static_cast<uint64_t>(n));
        double worst = 0.0;
        for (int t = 0; t < 1000; ++t) {
            Multivector u = random_mv(n, rng), v = random_mv(n, rng), w = random_mv(n, rng);
            worst = std::max(worst, max_coeff_diff(mv_mul(mv_mul(u, v), w), mv_mul(u, mv_mul(v, w))));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("conjugation signs and involution") {
    CHECK(conjugation_sign(0) == 1);
    CHECK(conjugation_sign(1) == -1);
    CHECK(conjugation_sign(2) == -1);
    CHECK(conjugation_sign(3) == 1);

    Multivector e0 = Multivector::scalar(2, 1.0);
    CHECK(max_coeff_diff(mv_conj(e0), e0) == 0.0);
    Multivector e1 = Multivector::basis(2, 0b01);
    CHECK(max_coeff_diff(mv_conj(e1), -e1) == 0.0);
    Multivector e12 = Multivector::basis(2, 0b11);
    CHECK(max_coeff_diff(mv_conj(e12), -e12) == 0.0);

    SplitMix64 rng(21);
    for (int n = 1; n <= 4; ++n) {
        Multivector u = random_mv(n, rng);
        CHECK(max_coeff_diff(mv_conj(mv_conj(u)), u) == 0.0);
    }
}

TEST_CASE("conjugation is an anti-automorphism") {
    for (int n : {2, 3, 4}) {
        SplitMix64 rng(33 + static_cast<uint64_t>(n));
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            Multivector u = random_mv(n, rng), v = random_mv(n, rng);
            worst = std::max(worst,
                             max_coeff_diff(mv_conj(mv_mul(u, v)), mv_mul(mv_conj(v), mv_conj(u))));
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("product distributes over addition exactly on integer coefficients") {
    SplitMix64 rng(55);
    for (int n : {2, 3}) {
        for (int t = 0; t < 50; ++t) {
            Multivector u(n), v(n), w(n);
            for (size_t i = 0; i < u.size(); ++i) {
                u[i] = static_cast<double>(static_cast<int>(rng.below(21)) - 10);
                v[i] = static_cast<double>(static_cast<int>(rng.below(21)) - 10);
                w[i] = static_cast<double>(static_cast<int>(rng.below(21)) - 10);
            }
            CHECK(max_coeff_diff(mv_mul(u, v + w), mv_mul(u, v) + mv_mul(u, w)) == 0.0);
        }
    }
}

TEST_CASE("dimension guards") {
    CHECK_THROWS_AS(Multivector(0), std::invalid_argument);
    CHECK_THROWS_AS(Multivector(9), std::invalid_argument);
    Multivector a(2), b(3);
    CHECK_THROWS_AS(mv_mul(a, b), std::invalid_argument);
}

TEST_CASE("gradient potential") {
    GradientPotential p({0.3, -0.2});
    std::vector<double> x{2.0, 1.0};
    CHECK(p.value(x) == doctest::Approx(0.4));
    Multivector g = p.gamma_vector();
    CHECK(g[0b01] == 0.3);
    CHECK(g[0b10] == -0.2);
    CHECK(GradientPotential({0.0, 0.0}).is_zero());
    CHECK(!p.is_zero());
}
