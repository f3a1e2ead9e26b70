#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qgraph/core_graph.hpp"

namespace qgraph {

/// Vertex scattering of the standard condition at degree d:
/// sigma[j, j'] = 2/d - delta(j, j'). Rows index outgoing slots, columns the
/// slot of the reversed incoming bond. Throws ZeroDegree.
Eigen::MatrixXcd vertex_scattering_standard(std::size_t degree);

/// Pure transmission through a quasi-periodic degree-2 vertex: the wave
/// leaving along slot 2 is phase * (wave arriving on slot 1), the wave leaving
/// along slot 1 is phase^-1 * (wave arriving on slot 2). Throws NonUnitPhase.
Eigen::MatrixXcd vertex_scattering_quasiperiodic(cplx phase);

/// Bond scattering matrix and bond lengths of a graph with k-independent
/// vertex scattering. Amplitude a_b is taken at the origin of bond b, and
/// a = S D(k) a with D(k) = diag(exp(i k L_b)).
class SecularSystem {
public:
    SecularSystem(Eigen::MatrixXcd scattering, std::vector<double> bond_lengths);

    const Eigen::MatrixXcd& scattering() const noexcept { return s_; }
    const std::vector<double>& bond_lengths() const noexcept { return lengths_; }
    std::size_t bond_count() const noexcept { return lengths_.size(); }

    Eigen::VectorXcd phases(cplx k) const;
    /// I - S D(k)
    Eigen::MatrixXcd secular_matrix(cplx k) const;
    /// Max-norm of S S* - I.
    double unitarity_defect() const;
    /// Sum of bond lengths; the phase of det(S D(k)) grows at this rate in k.
    double total_bond_length() const noexcept;

private:
    Eigen::MatrixXcd s_;
    std::vector<double> lengths_;
};

/// Assembles S blockwise from per-vertex scattering in global bond order.
/// Every vertex needs a standard or quasi-periodic condition: throws
/// MissingCondition or UnsupportedCondition.
SecularSystem build_secular_system(const MetricGraph& g, std::span<const VertexCondition> conditions);

/// Standard conditions everywhere.
SecularSystem build_secular_system(const MetricGraph& g);

/// det(I - S D(k)) by dense LU with partial pivoting.
cplx secular_det(const SecularSystem& sys, cplx k);

}  // namespace qgraph
