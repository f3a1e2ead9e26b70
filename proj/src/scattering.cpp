#include "qgraph/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qgraph {

Eigen::MatrixXcd vertex_scattering_standard(std::size_t degree) {
    if (degree == 0) throw Error(ErrorCode::ZeroDegree, "vertex scattering needs degree >= 1");
    const auto d = static_cast<Eigen::Index>(degree);
    Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Constant(d, d, cplx(2.0 / static_cast<double>(d), 0.0));
    sigma.diagonal().array() -= 1.0;
    return sigma;
}

Eigen::MatrixXcd vertex_scattering_quasiperiodic(cplx phase) {
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "|phase| = " << std::abs(phase);
        throw Error(ErrorCode::NonUnitPhase, os.str());
    }
    Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Zero(2, 2);
    sigma(1, 0) = phase;
    sigma(0, 1) = std::conj(phase);
    return sigma;
}

SecularSystem::SecularSystem(Eigen::MatrixXcd scattering, std::vector<double> bond_lengths)
    : s_(std::move(scattering)), lengths_(std::move(bond_lengths)) {
    if (s_.rows() != s_.cols() || static_cast<std::size_t>(s_.rows()) != lengths_.size()) {
        throw Error(ErrorCode::InvalidArgument, "scattering matrix and bond lengths disagree in size");
    }
}

Eigen::VectorXcd SecularSystem::phases(cplx k) const {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(lengths_.size()));
    const cplx ik = cplx(0.0, 1.0) * k;
    for (std::size_t b = 0; b < lengths_.size(); ++b) d(static_cast<Eigen::Index>(b)) = std::exp(ik * lengths_[b]);
    return d;
}

Eigen::MatrixXcd SecularSystem::secular_matrix(cplx k) const {
    Eigen::MatrixXcd m = -(s_ * phases(k).asDiagonal());
    m.diagonal().array() += 1.0;
    return m;
}

double SecularSystem::unitarity_defect() const {
    const Eigen::MatrixXcd p = s_ * s_.adjoint() - Eigen::MatrixXcd::Identity(s_.rows(), s_.cols());
    return p.cwiseAbs().maxCoeff();
}

double SecularSystem::total_bond_length() const noexcept {
    return std::accumulate(lengths_.begin(), lengths_.end(), 0.0);
}

SecularSystem build_secular_system(const MetricGraph& g, std::span<const VertexCondition> conditions) {
    std::vector<const VertexCondition*> at(g.vertex_count(), nullptr);
    for (const VertexCondition& c : conditions) {
        if (c.vertex >= g.vertex_count()) {
            throw Error(ErrorCode::DanglingEndpoint, "condition for unknown vertex " + std::to_string(c.vertex));
        }
        at[c.vertex] = &c;
    }

    const auto nb = static_cast<Eigen::Index>(g.bond_count());
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(nb, nb);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const VertexCondition* c = at[v];
        if (c == nullptr) throw Error(ErrorCode::MissingCondition, "vertex " + std::to_string(v));

        const auto& out = g.outgoing(v);
        std::vector<BondId> sorted_slots = c->bonds;
        std::sort(sorted_slots.begin(), sorted_slots.end());
        if (sorted_slots != out) {
            throw Error(ErrorCode::InvalidArgument,
                        "condition at vertex " + std::to_string(v) + " does not list its outgoing bonds");
        }

        Eigen::MatrixXcd sigma;
        switch (c->kind) {
            case VertexCondition::Kind::standard: sigma = vertex_scattering_standard(c->bonds.size()); break;
            case VertexCondition::Kind::quasi_periodic: sigma = vertex_scattering_quasiperiodic(c->phase); break;
            case VertexCondition::Kind::general:
                throw Error(ErrorCode::UnsupportedCondition,
                            "vertex " + std::to_string(v) + " has an energy-dependent condition");
        }

        // Slot j is outgoing bond c->bonds[j]; the wave arriving through slot
        // j' travels on reversal(c->bonds[j']).
        const std::size_t d = c->bonds.size();
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t jp = 0; jp < d; ++jp) {
                const auto row = static_cast<Eigen::Index>(c->bonds[j]);
                const auto col = static_cast<Eigen::Index>(reversal(c->bonds[jp]));
                s(row, col) = sigma(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(jp));
            }
        }
    }

    std::vector<double> lengths(g.bond_count());
    for (BondId b = 0; b < g.bond_count(); ++b) lengths[b] = g.edge(b / 2).length;
    return SecularSystem(std::move(s), std::move(lengths));
}

SecularSystem build_secular_system(const MetricGraph& g) {
    const auto conditions = standard_conditions(g);
    return build_secular_system(g, conditions);
}

cplx secular_det(const SecularSystem& sys, cplx k) {
    return sys.secular_matrix(k).partialPivLu().determinant();
}

}  // namespace qgraph
