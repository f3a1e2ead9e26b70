#include "qgraph/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qgraph {

SampledFunction::SampledFunction(const MetricGraph& g, std::size_t samples_per_edge)
    : graph_(&g), m_(samples_per_edge), values_(g.edge_count(), std::vector<cplx>(samples_per_edge)) {
    if (samples_per_edge == 0) throw Error(ErrorCode::InvalidArgument, "need at least one sample per edge");
}

SampledFunction SampledFunction::from(const MetricGraph& g, std::size_t samples_per_edge,
                                      const std::function<cplx(EdgeId, double)>& fn) {
    SampledFunction f(g, samples_per_edge);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        for (std::size_t m = 0; m < samples_per_edge; ++m) f.values_[e][m] = fn(e, f.node(e, m));
    }
    return f;
}

double SampledFunction::node(EdgeId e, std::size_t m) const {
    return (static_cast<double>(m) + 0.5) * graph_->edge(e).length / static_cast<double>(m_);
}

SampledFunction& SampledFunction::operator+=(const SampledFunction& other) {
    if (other.graph_ != graph_ || other.m_ != m_) {
        throw Error(ErrorCode::InvalidArgument, "sampled functions live on different grids");
    }
    for (std::size_t e = 0; e < values_.size(); ++e) {
        for (std::size_t m = 0; m < m_; ++m) values_[e][m] += other.values_[e][m];
    }
    return *this;
}

SampledFunction& SampledFunction::operator*=(cplx c) {
    for (auto& row : values_) {
        for (cplx& x : row) x *= c;
    }
    return *this;
}

double l2_norm_sq(const SampledFunction& f) {
    double total = 0.0;
    for (EdgeId e = 0; e < f.graph().edge_count(); ++e) {
        double s = 0.0;
        for (const cplx& x : f.on(e)) s += std::norm(x);
        total += f.graph().edge(e).length / static_cast<double>(f.samples_per_edge()) * s;
    }
    return total;
}

cplx inner_product(const SampledFunction& f, const SampledFunction& g) {
    if (&f.graph() != &g.graph() || f.samples_per_edge() != g.samples_per_edge()) {
        throw Error(ErrorCode::InvalidArgument, "sampled functions live on different grids");
    }
    cplx total = 0.0;
    for (EdgeId e = 0; e < f.graph().edge_count(); ++e) {
        cplx s = 0.0;
        for (std::size_t m = 0; m < f.samples_per_edge(); ++m) s += std::conj(f.on(e)[m]) * g.on(e)[m];
        total += f.graph().edge(e).length / static_cast<double>(f.samples_per_edge()) * s;
    }
    return total;
}

double max_norm(const SampledFunction& f) {
    double best = 0.0;
    for (EdgeId e = 0; e < f.graph().edge_count(); ++e) {
        for (const cplx& x : f.on(e)) best = std::max(best, std::abs(x));
    }
    return best;
}

SampledFunction pull_back(const SampledFunction& f, const GraphAction& a, GroupElement element) {
    const MetricGraph& g = f.graph();
    const ElementMap& map = a.map(element);
    if (map.edge.size() != g.edge_count()) {
        throw Error(ErrorCode::OrientationMismatch, "action and function are on different graphs");
    }
    const std::size_t n = f.samples_per_edge();
    SampledFunction out(g, n);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const EdgeId image = map.edge[e];
        if (std::abs(g.edge(image).length - g.edge(e).length) > 1e-12 * std::max(1.0, g.edge(e).length)) {
            std::ostringstream os;
            os << "edge " << e << " and its image " << image << " differ in length";
            throw Error(ErrorCode::OrientationMismatch, os.str());
        }
        const auto& src = f.on(image);
        auto& dst = out.on(e);
        if (map.reversed[e]) {
            for (std::size_t m = 0; m < n; ++m) dst[m] = src[n - 1 - m];
        } else {
            dst = src;
        }
    }
    return out;
}

SampledFunction project(const SampledFunction& f, const GraphAction& a, const ProductIrrep& irrep) {
    const ProductCyclicGroup& group = a.group();
    if (irrep.n1 != group.n1 || irrep.n2 != group.n2) {
        throw Error(ErrorCode::InvalidArgument, "irrep and action belong to different groups");
    }
    SampledFunction out(f.graph(), f.samples_per_edge());
    for (const GroupElement& el : group.elements()) {
        SampledFunction term = pull_back(f, a, el);
        term *= irrep.value(el);
        out += term;
    }
    out *= 1.0 / static_cast<double>(group.order());
    return out;
}

double quasi_periodicity_residual(const SampledFunction& f, const GraphAction& a, const ProductIrrep& irrep) {
    double worst = 0.0;
    for (const GroupElement& el : a.group().elements()) {
        const SampledFunction moved = pull_back(f, a, el);
        const cplx w = 1.0 / irrep.value(el);
        for (EdgeId e = 0; e < f.graph().edge_count(); ++e) {
            for (std::size_t m = 0; m < f.samples_per_edge(); ++m) {
                worst = std::max(worst, std::abs(moved.on(e)[m] - w * f.on(e)[m]));
            }
        }
    }
    return worst;
}

}  // namespace qgraph
