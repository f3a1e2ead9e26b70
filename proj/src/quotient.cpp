#include "qgraph/quotient.hpp"

#include <cmath>
#include <sstream>

#include "qgraph/group_rep.hpp"

namespace qgraph {

void QuotientSpec::validate() const {
    if (n1 < 1 || n2 < 1) throw Error(ErrorCode::InvalidArgument, "group orders must be >= 1");
    if (s < 0 || s >= n1 || t < 0 || t >= n2) {
        std::ostringstream os;
        os << "(s, t) = (" << s << ", " << t << ") outside [0, " << n1 << ") x [0, " << n2 << ")";
        throw Error(ErrorCode::LabelOutOfRange, os.str());
    }
    for (double l : {l1, l3}) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            std::ostringstream os;
            os << "quotient edge length " << l;
            throw Error(ErrorCode::NonPositiveLength, os.str());
        }
    }
}

// (g1^{n1}, g2) carries omega2^t, (g1, g2^{n2}) carries omega1^s.
cplx QuotientSpec::tau_a() const {
    return pairing == PhasePairing::as_printed ? product_irrep_value(n1, n2, s, t, n1, 1)
                                               : product_irrep_value(n1, n2, s, t, 1, n2);
}

cplx QuotientSpec::tau_b() const {
    return pairing == PhasePairing::as_printed ? product_irrep_value(n1, n2, s, t, 1, n2)
                                               : product_irrep_value(n1, n2, s, t, n1, 1);
}

double QuotientSpec::alpha() const { return tau_a().real(); }
double QuotientSpec::beta() const { return tau_b().real(); }

QuotientGraph quotient_graph(const QuotientSpec& spec) {
    spec.validate();
    std::vector<Vertex> vertices{{0, VertexTag::original, {}}, {1, VertexTag::dummy, {}}, {2, VertexTag::dummy, {}}};
    const std::vector<EdgeSpec> edges{{0, 1, spec.l1}, {0, 1, spec.l1}, {0, 2, spec.l3}, {0, 2, spec.l3}};
    QuotientGraph q{MetricGraph::make(std::move(vertices), edges), {}};
    q.conditions.push_back(VertexCondition::standard(q.graph, 0));
    q.conditions.push_back(
        VertexCondition::quasi_periodic(q.graph, 1, spec.tau_a(), backward_bond(0), backward_bond(1)));
    q.conditions.push_back(
        VertexCondition::quasi_periodic(q.graph, 2, spec.tau_b(), backward_bond(2), backward_bond(3)));
    return q;
}

cplx quotient_secular_closed(const QuotientSpec& spec, cplx k) {
    const cplx i(0.0, 1.0);
    const cplx u = std::exp(2.0 * i * k * spec.l1);
    const cplx v = std::exp(2.0 * i * k * spec.l3);
    const double a = spec.alpha();
    const double b = spec.beta();
    return 1.0 - a * u - b * v + a * u * v * v + b * u * u * v - u * u * v * v;
}

double quotient_dispersion_real(const QuotientSpec& spec, double k) {
    return std::sin(2.0 * k * (spec.l1 + spec.l3)) - spec.alpha() * std::sin(2.0 * k * spec.l3) -
           spec.beta() * std::sin(2.0 * k * spec.l1);
}

cplx quotient_dispersion(const QuotientSpec& spec, cplx k) {
    return std::sin(2.0 * k * (spec.l1 + spec.l3)) - spec.alpha() * std::sin(2.0 * k * spec.l3) -
           spec.beta() * std::sin(2.0 * k * spec.l1);
}

std::vector<QuotientSpec> all_factor_specs(int n1, int n2, double l1, double l3, PhasePairing pairing) {
    std::vector<QuotientSpec> out;
    for (int s = 0; s < n1; ++s) {
        for (int t = 0; t < n2; ++t) {
            QuotientSpec q{n1, n2, l1, l3, s, t, pairing};
            q.validate();
            out.push_back(q);
        }
    }
    return out;
}

cplx secular_product(int n1, int n2, double l1, double l3, cplx k) {
    cplx p(1.0, 0.0);
    for (const QuotientSpec& q : all_factor_specs(n1, n2, l1, l3)) p *= quotient_secular_closed(q, k);
    return p;
}

}  // namespace qgraph
