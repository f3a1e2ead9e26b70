#pragma once

#include <vector>

#include "qgraph/core_graph.hpp"

namespace qgraph {

/// Which irrep phase sits on which pair of quotient edges.
enum class PhasePairing {
    as_printed,  // tau_a = omega2^t on the L1 edges, tau_b = omega1^s on the L3 edges
    swapped,     // tau_a = omega1^s on the L1 edges, tau_b = omega2^t on the L3 edges
};

/// One factor of the torus C_{n1} □ C_{n2}: irrep labels (s, t) and quotient
/// edge lengths L1, L3 (the torus edges have lengths 2 L1 and 2 L3).
struct QuotientSpec {
    int n1 = 1;
    int n2 = 1;
    double l1 = 1.0;
    double l3 = 1.0;
    int s = 0;
    int t = 0;
    PhasePairing pairing = PhasePairing::as_printed;

    /// Validates labels and lengths. Throws LabelOutOfRange, NonPositiveLength.
    void validate() const;
    /// Phase at the dummy vertex joining the two L1 edges.
    cplx tau_a() const;
    /// Phase at the dummy vertex joining the two L3 edges.
    cplx tau_b() const;
    /// (tau_a + 1/tau_a) / 2
    double alpha() const;
    /// (tau_b + 1/tau_b) / 2
    double beta() const;
};

struct QuotientGraph {
    MetricGraph graph;
    std::vector<VertexCondition> conditions;
};

/// Vertex 0 is the degree-4 vertex v1 (standard), vertex 1 the dummy joining
/// the L1 edges 0 and 1 (quasi-periodic, tau_a), vertex 2 the dummy joining the
/// L3 edges 2 and 3 (quasi-periodic, tau_b). All edges run from vertex 0.
QuotientGraph quotient_graph(const QuotientSpec& spec);

/// 1 - a u - b v + a u v^2 + b u^2 v - u^2 v^2 with u = exp(2ikL1), v = exp(2ikL3),
/// a = alpha, b = beta.
cplx quotient_secular_closed(const QuotientSpec& spec, cplx k);

/// sin(2k(L1+L3)) - alpha sin(2k L3) - beta sin(2k L1). The closed form equals
/// -2i exp(2ik(L1+L3)) times this.
double quotient_dispersion_real(const QuotientSpec& spec, double k);
cplx quotient_dispersion(const QuotientSpec& spec, cplx k);

/// All n1*n2 factor specs, s-major.
std::vector<QuotientSpec> all_factor_specs(int n1, int n2, double l1, double l3,
                                           PhasePairing pairing = PhasePairing::as_printed);

/// Product of the closed form over every label pair.
cplx secular_product(int n1, int n2, double l1, double l3, cplx k);

}  // namespace qgraph
