#include "qgraph/builders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "qgraph/group_rep.hpp"

namespace qgraph {

namespace {

void require_positive(double length, const char* what) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        std::ostringstream os;
        os << what << " = " << length;
        throw Error(ErrorCode::NonPositiveLength, os.str());
    }
}

}  // namespace

SymmetricGraph cycle_graph(int n, double length) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "cycle needs n >= 1");
    require_positive(length, "cycle edge length");
    const auto un = static_cast<std::size_t>(n);
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < un; ++i) edges.push_back({i, (i + 1) % un, length});
    MetricGraph g = MetricGraph::make(un, edges);

    ElementMap rot;
    rot.vertex.resize(un);
    rot.edge.resize(un);
    rot.reversed.assign(un, false);
    for (std::size_t i = 0; i < un; ++i) {
        rot.vertex[i] = (i + 1) % un;
        rot.edge[i] = (i + 1) % un;
    }
    SymmetricGraph out{std::move(g), GraphAction::cyclic(n, std::move(rot)), n < 3};
    require_valid_action(out.graph, out.action);
    return out;
}

SymmetricGraph circulant_graph(int n, const std::vector<int>& jumps, const std::vector<double>& lengths) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "circulant graph needs n >= 2");
    if (jumps.empty()) throw Error(ErrorCode::InvalidArgument, "no jumps given");
    if (jumps.size() != lengths.size()) {
        throw Error(ErrorCode::InvalidArgument, "need one length per jump class");
    }
    std::set<int> seen;
    for (int j : jumps) {
        if (j < 1 || 2 * j > n) {
            throw Error(ErrorCode::JumpOutOfRange,
                        "jump " + std::to_string(j) + " not in [1, " + std::to_string(n / 2) + "]");
        }
        if (!seen.insert(j).second) throw Error(ErrorCode::DuplicateJump, "jump " + std::to_string(j));
    }
    for (double l : lengths) require_positive(l, "circulant edge length");

    const auto un = static_cast<std::size_t>(n);
    std::vector<EdgeSpec> edges;
    std::vector<std::size_t> offset;
    for (std::size_t k = 0; k < jumps.size(); ++k) {
        offset.push_back(edges.size());
        const auto j = static_cast<std::size_t>(jumps[k]);
        const std::size_t count = 2 * j == un ? un / 2 : un;
        for (std::size_t i = 0; i < count; ++i) edges.push_back({i, (i + j) % un, lengths[k]});
    }
    MetricGraph g = MetricGraph::make(un, edges, Simplicity::simple);

    ElementMap rot;
    rot.vertex.resize(un);
    rot.edge.resize(edges.size());
    rot.reversed.assign(edges.size(), false);
    for (std::size_t i = 0; i < un; ++i) rot.vertex[i] = (i + 1) % un;
    for (std::size_t k = 0; k < jumps.size(); ++k) {
        const auto j = static_cast<std::size_t>(jumps[k]);
        if (2 * j == un) {
            // (n/2 - 1, n - 1) rotates onto (n/2, 0), the reverse of edge 0.
            const std::size_t half = un / 2;
            for (std::size_t i = 0; i < half; ++i) {
                rot.edge[offset[k] + i] = offset[k] + (i + 1) % half;
                rot.reversed[offset[k] + i] = i + 1 == half;
            }
        } else {
            for (std::size_t i = 0; i < un; ++i) rot.edge[offset[k] + i] = offset[k] + (i + 1) % un;
        }
    }
    SymmetricGraph out{std::move(g), GraphAction::cyclic(n, std::move(rot)), false};
    require_valid_action(out.graph, out.action);
    return out;
}

MetricGraph cartesian_product(const MetricGraph& g1, const MetricGraph& g2) {
    const std::size_t n1 = g1.vertex_count();
    const std::size_t n2 = g2.vertex_count();
    std::vector<EdgeSpec> edges;
    edges.reserve(n1 * g2.edge_count() + n2 * g1.edge_count());
    for (std::size_t i = 0; i < n1; ++i) {
        for (const Edge& e : g2.edges()) {
            edges.push_back({product_vertex(i, e.u, n2), product_vertex(i, e.v, n2), e.length});
        }
    }
    for (std::size_t j = 0; j < n2; ++j) {
        for (const Edge& e : g1.edges()) {
            edges.push_back({product_vertex(e.u, j, n2), product_vertex(e.v, j, n2), e.length});
        }
    }
    return MetricGraph::make(n1 * n2, edges);
}

SymmetricGraph product_torus(int n1, int n2, double g1_length, double g2_length) {
    const SymmetricGraph c1 = cycle_graph(n1, g1_length);
    const SymmetricGraph c2 = cycle_graph(n2, g2_length);
    MetricGraph g = cartesian_product(c1.graph, c2.graph);

    const auto a = static_cast<std::size_t>(n1);
    const auto b = static_cast<std::size_t>(n2);
    // Edge layout from cartesian_product: block one holds (i, e2) at i*b + e2,
    // block two holds (j, e1) at a*b + j*a + e1. Cycle edge e joins e and e+1.
    auto shift = [&](std::size_t di, std::size_t dj) {
        ElementMap m;
        m.vertex.resize(a * b);
        m.edge.resize(2 * a * b);
        m.reversed.assign(2 * a * b, false);
        for (std::size_t i = 0; i < a; ++i) {
            for (std::size_t j = 0; j < b; ++j) {
                m.vertex[product_vertex(i, j, b)] = product_vertex((i + di) % a, (j + dj) % b, b);
                m.edge[i * b + j] = ((i + di) % a) * b + (j + dj) % b;
                m.edge[a * b + j * a + i] = a * b + ((j + dj) % b) * a + (i + di) % a;
            }
        }
        return m;
    };
    GraphAction action({n1, n2}, shift(1, 0), shift(0, 1));
    SymmetricGraph out{std::move(g), std::move(action), c1.multigraph_warning || c2.multigraph_warning};
    require_valid_action(out.graph, out.action);
    return out;
}

SymmetricGraph quotient_torus(int n1, int n2, double l1_half, double l3_half) {
    require_positive(l1_half, "l1");
    require_positive(l3_half, "l3");
    return product_torus(n1, n2, 2.0 * l3_half, 2.0 * l1_half);
}

SymmetricGraph torus_action(int n1, int n2, double l1_half, double l3_half) {
    const SymmetricGraph base = quotient_torus(n1, n2, l1_half, l3_half);
    SymmetricGraph out{subdivide_midpoints(base.graph), subdivide_action(base.graph, base.action),
                       base.multigraph_warning};
    require_valid_action(out.graph, out.action);
    return out;
}

ProductCirculantIsomorphism product_circulant_isomorphism(int n1, int n2, double g1_length,
                                                         double g2_length) {
    if (std::gcd(n1, n2) != 1) {
        throw Error(ErrorCode::NotCoprime,
                    "gcd(" + std::to_string(n1) + ", " + std::to_string(n2) + ") != 1");
    }
    if (n1 < 3 || n2 < 3) throw Error(ErrorCode::InvalidArgument, "need n1, n2 >= 3");

    ProductCirculantIsomorphism iso;
    iso.product = product_torus(n1, n2, g1_length, g2_length).graph;
    iso.circulant = circulant_graph(n1 * n2, {n1, n2}, {g2_length, g1_length}).graph;

    const auto b = static_cast<std::size_t>(n2);
    iso.vertex_map.resize(iso.product.vertex_count());
    std::vector<bool> hit(iso.product.vertex_count(), false);
    for (int k = 0; k < n1; ++k) {
        for (int i = 0; i < n2; ++i) {
            const auto eps = static_cast<VertexId>(crt_index(n1, n2, k, i));
            iso.vertex_map[product_vertex(static_cast<std::size_t>(k), static_cast<std::size_t>(i), b)] = eps;
            if (hit[eps]) throw Error(ErrorCode::IsomorphismCheckFailed, "vertex map is not injective");
            hit[eps] = true;
        }
    }

    using Key = std::tuple<VertexId, VertexId, double, EdgeId>;
    auto canonical = [](VertexId x, VertexId y, double l, EdgeId id) {
        return Key{std::min(x, y), std::max(x, y), l, id};
    };
    std::vector<Key> mapped;
    for (const Edge& e : iso.product.edges()) {
        mapped.push_back(canonical(iso.vertex_map[e.u], iso.vertex_map[e.v], e.length, e.id));
    }
    std::vector<Key> target;
    for (const Edge& e : iso.circulant.edges()) target.push_back(canonical(e.u, e.v, e.length, e.id));
    auto by_ends = [](const Key& x, const Key& y) {
        return std::tie(std::get<0>(x), std::get<1>(x), std::get<2>(x)) <
               std::tie(std::get<0>(y), std::get<1>(y), std::get<2>(y));
    };
    std::sort(mapped.begin(), mapped.end(), by_ends);
    std::sort(target.begin(), target.end(), by_ends);
    if (mapped.size() != target.size()) {
        throw Error(ErrorCode::IsomorphismCheckFailed, "edge counts differ");
    }
    for (std::size_t k = 0; k < mapped.size(); ++k) {
        const auto& [u, v, l, id] = mapped[k];
        const auto& [cu, cv, cl, cid] = target[k];
        if (u != cu || v != cv || std::abs(l - cl) > 1e-12 * std::max(1.0, l)) {
            std::ostringstream os;
            os << "product edge " << id << " maps to {" << u << ", " << v << "} with length " << l
               << ", no matching circulant edge";
            throw Error(ErrorCode::IsomorphismCheckFailed, os.str());
        }
    }
    return iso;
}

}  // namespace qgraph
