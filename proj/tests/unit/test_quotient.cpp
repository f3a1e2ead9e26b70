#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qgraph/quotient.hpp"
#include "qgraph/scattering.hpp"

using namespace qgraph;
using std::numbers::pi;

namespace {

// The trivial-irrep factor written as the product (1 - u)(1 - v)(1 - uv).
cplx trivial_factor_oracle(double l1, double l3, cplx k) {
    const cplx i(0.0, 1.0);
    const cplx u = std::exp(2.0 * i * k * l1);
    const cplx v = std::exp(2.0 * i * k * l3);
    return (1.0 - u) * (1.0 - v) * (1.0 - u * v);
}

}  // namespace

TEST_CASE("phases and condition matrices") {
    const QuotientSpec spec{3, 4, 0.5, 1.0, 0, 1};
    const cplx i(0.0, 1.0);
    CHECK(std::abs(spec.tau_a() - i) < 1e-15);
    CHECK(std::abs(spec.tau_b() - 1.0) < 1e-15);
    const QuotientGraph q = quotient_graph(spec);
    const VertexCondition& d = q.conditions[1];
    CHECK(std::abs(d.A(0, 0) - i) < 1e-15);
    CHECK(d.A(0, 1) == cplx(-1.0));
    CHECK(q.graph.degree(0) == 4);
    CHECK(q.graph.degree(1) == 2);
    CHECK(q.graph.degree(2) == 2);
    CHECK(q.graph.edge(0).length == 0.5);
    CHECK(q.graph.edge(3).length == 1.0);

    const QuotientSpec swapped{3, 4, 0.5, 1.0, 0, 1, PhasePairing::swapped};
    CHECK(std::abs(swapped.tau_a() - 1.0) < 1e-15);
    CHECK(std::abs(swapped.tau_b() - i) < 1e-15);
}

TEST_CASE("trivial irrep has unit phases") {
    const QuotientSpec spec{3, 4, 0.5, 1.0, 0, 0};
    CHECK(spec.tau_a() == cplx(1.0));
    CHECK(spec.tau_b() == cplx(1.0));
    for (const VertexCondition& c : quotient_graph(spec).conditions) CHECK(std::abs(c.phase - 1.0) < 1e-15);
}

TEST_CASE("labels are validated") {
    const QuotientSpec bad{3, 4, 0.5, 1.0, 3, 0};
    CHECK_THROWS_AS(quotient_graph(bad), Error);
    const QuotientSpec neg{3, 4, -0.5, 1.0, 0, 0};
    CHECK_THROWS_AS(quotient_graph(neg), Error);
}

TEST_CASE("closed form values") {
    const QuotientSpec trivial{1, 1, 1.0, 1.0, 0, 0};
    CHECK(std::abs(quotient_secular_closed(trivial, pi / 2.0)) < 1e-14);
    CHECK(std::abs(quotient_secular_closed(QuotientSpec{3, 4, 0.7, 1.3, 2, 3}, 0.0)) < 1e-15);
    const QuotientSpec s10{3, 4, 1.0, 1.0, 1, 0};
    CHECK(std::abs(quotient_secular_closed(s10, pi / 4.0) - cplx(0.0, -1.0)) < 1e-14);
    CHECK(std::abs(quotient_dispersion_real(s10, pi / 4.0) + 0.5) < 1e-14);
    CHECK(std::abs(quotient_dispersion_real(trivial, pi / 2.0)) < 1e-14);
    CHECK(quotient_dispersion_real(s10, 0.0) == 0.0);
}

TEST_CASE("trivial factor equals its product form") {
    const QuotientSpec spec{3, 4, 0.5, 1.0, 0, 0};
    for (double k = 0.05; k < 20.0; k += 0.37) {
        CHECK(std::abs(quotient_secular_closed(spec, k) - trivial_factor_oracle(0.5, 1.0, k)) < 1e-13);
        const cplx kc(k, 0.2);
        CHECK(std::abs(quotient_secular_closed(spec, kc) - trivial_factor_oracle(0.5, 1.0, kc)) < 1e-12);
    }
}

TEST_CASE("matrix determinant equals the closed form") {
    for (int n1 = 1; n1 <= 6; ++n1) {
        for (int n2 = 1; n2 <= 6; ++n2) {
            for (const QuotientSpec& spec : all_factor_specs(n1, n2, 0.5, 1.0)) {
                const QuotientGraph q = quotient_graph(spec);
                const SecularSystem sys = build_secular_system(q.graph, q.conditions);
                double worst = 0.0;
                for (int j = 1; j <= 1000; ++j) {
                    const double k = 0.02 * j;
                    worst = std::max(worst, std::abs(secular_det(sys, k) - quotient_secular_closed(spec, k)));
                }
                CHECK(worst < 1e-10);
            }
        }
    }
}

TEST_CASE("real dispersion identity and conjugate symmetry") {
    const cplx i(0.0, 1.0);
    for (const QuotientSpec& spec : all_factor_specs(3, 4, 0.5, 1.0)) {
        const QuotientSpec conj{3, 4, 0.5, 1.0, (3 - spec.s) % 3, (4 - spec.t) % 4};
        for (int j = 1; j <= 1000; ++j) {
            const double k = 0.02 * j;
            const cplx lhs = quotient_secular_closed(spec, k);
            const cplx rhs = -2.0 * i * std::exp(2.0 * i * k * (spec.l1 + spec.l3)) * quotient_dispersion_real(spec, k);
            CHECK(std::abs(lhs - rhs) < 1e-12);
            CHECK(std::abs(lhs - quotient_secular_closed(conj, k)) < 1e-12);
        }
        const cplx kc(3.1, -0.4);
        const cplx rhs = -2.0 * i * std::exp(2.0 * i * kc * (spec.l1 + spec.l3)) * quotient_dispersion(spec, kc);
        CHECK(std::abs(quotient_secular_closed(spec, kc) - rhs) < 1e-11);
    }
}

TEST_CASE("secular product") {
    CHECK(std::abs(secular_product(3, 4, 0.5, 1.0, 0.0)) == 0.0);
    const QuotientSpec single{1, 1, 0.5, 1.0, 0, 0};
    CHECK(std::abs(secular_product(1, 1, 0.5, 1.0, 2.3) - quotient_secular_closed(single, 2.3)) < 1e-15);
    CHECK(all_factor_specs(3, 4, 0.5, 1.0).size() == 12);
}
