#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qgraph {

// Cyclic groups and their one-dimensional irreducible representations.
//
// Elements of G_n are residues 0..n-1 with 0 the identity (g^n = e). Every
// API reduces exponents mod n, so exponents n and 0 denote the same element.

struct CyclicGroup {
    int order = 1;

    int compose(std::int64_t a, std::int64_t b) const;
    int inverse(std::int64_t a) const;
};

/// Element (g1^kappa, g2^iota) of G_{n1} x G_{n2}.
struct GroupElement {
    int kappa = 0;
    int iota = 0;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// G_{n1} x G_{n2}; a plain cyclic group is the case n2 = 1.
struct ProductCyclicGroup {
    int n1 = 1;
    int n2 = 1;

    int order() const noexcept { return n1 * n2; }
    GroupElement compose(GroupElement a, GroupElement b) const;
    GroupElement inverse(GroupElement a) const;
    bool is_identity(GroupElement a) const;
    /// All elements, kappa-major.
    std::vector<GroupElement> elements() const;
    /// Dense index kappa * n2 + iota.
    int index(GroupElement a) const;
};

/// omega^(s * kappa) with omega = exp(2 pi i / n). Throws LabelOutOfRange.
std::complex<double> irrep_value(int n, int s, std::int64_t kappa);

/// omega1^(s kappa) * omega2^(t iota). Throws LabelOutOfRange.
std::complex<double> product_irrep_value(int n1, int n2, int s, int t, std::int64_t kappa,
                                         std::int64_t iota);

/// Sum over all n1*n2 product irreps evaluated at (kappa, iota).
std::complex<double> irrep_sum(int n1, int n2, std::int64_t kappa, std::int64_t iota);

/// (kappa * n2 + iota * n1) mod n1*n2. Throws NotCoprime unless gcd(n1, n2) = 1.
/// The same formula maps irrep labels (s, t) to the label r of G_{n1 n2}.
int crt_index(int n1, int n2, std::int64_t kappa, std::int64_t iota);

struct Irrep {
    int n = 1;
    int s = 0;

    std::complex<double> value(std::int64_t kappa) const { return irrep_value(n, s, kappa); }
};

struct ProductIrrep {
    int n1 = 1;
    int n2 = 1;
    int s = 0;
    int t = 0;

    std::complex<double> value(GroupElement g) const {
        return product_irrep_value(n1, n2, s, t, g.kappa, g.iota);
    }
    bool is_trivial() const noexcept { return s == 0 && t == 0; }
};

/// All n1*n2 labels, s-major.
std::vector<ProductIrrep> all_product_irreps(int n1, int n2);

}  // namespace qgraph
