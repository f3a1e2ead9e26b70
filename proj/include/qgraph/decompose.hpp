#pragma once

#include <functional>
#include <vector>

#include "qgraph/core_graph.hpp"
#include "qgraph/group_rep.hpp"
#include "qgraph/symmetry.hpp"

namespace qgraph {

/// A function on a metric graph sampled at the midpoint nodes
/// x_m = (m + 1/2) L / M of every edge, in the edge's own parameterization.
class SampledFunction {
public:
    SampledFunction(const MetricGraph& g, std::size_t samples_per_edge);

    /// Samples fn(edge, x) with x in (0, L_edge).
    static SampledFunction from(const MetricGraph& g, std::size_t samples_per_edge,
                                const std::function<cplx(EdgeId, double)>& fn);

    const MetricGraph& graph() const noexcept { return *graph_; }
    std::size_t samples_per_edge() const noexcept { return m_; }
    double node(EdgeId e, std::size_t m) const;

    std::vector<cplx>& on(EdgeId e) { return values_.at(e); }
    const std::vector<cplx>& on(EdgeId e) const { return values_.at(e); }

    SampledFunction& operator+=(const SampledFunction& other);
    SampledFunction& operator*=(cplx c);

private:
    const MetricGraph* graph_;
    std::size_t m_;
    std::vector<std::vector<cplx>> values_;
};

/// Midpoint-rule quadrature of sum_e integral |f|^2.
double l2_norm_sq(const SampledFunction& f);

/// Midpoint-rule quadrature of sum_e integral conj(f) g.
cplx inner_product(const SampledFunction& f, const SampledFunction& g);

/// Largest sample modulus.
double max_norm(const SampledFunction& f);

/// (result)|_e = f|_{g e}, with samples reversed where g reverses e.
/// Throws OrientationMismatch if an edge and its image differ in length.
SampledFunction pull_back(const SampledFunction& f, const GraphAction& a, GroupElement element);

/// (1 / |G|) sum_g tau(g) pull_back(f, g).
SampledFunction project(const SampledFunction& f, const GraphAction& a, const ProductIrrep& irrep);

/// max over g, e of max_m |f|_{g e} - tau(g)^{-1} f|_e|.
double quasi_periodicity_residual(const SampledFunction& f, const GraphAction& a, const ProductIrrep& irrep);

}  // namespace qgraph
