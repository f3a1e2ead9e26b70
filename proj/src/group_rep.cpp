#include "qgraph/group_rep.hpp"

#include <numbers>
#include <numeric>
#include <string>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

std::int64_t reduce(std::int64_t a, std::int64_t n) {
    const std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

void check_order(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "group order must be >= 1");
}

void check_label(int n, int s) {
    check_order(n);
    if (s < 0 || s >= n) {
        throw Error(ErrorCode::LabelOutOfRange,
                    "label " + std::to_string(s) + " not in [0, " + std::to_string(n) + ")");
    }
}

std::complex<double> root_of_unity(std::int64_t numerator, std::int64_t n) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(reduce(numerator, n)) /
                         static_cast<double>(n);
    return std::polar(1.0, angle);
}

}  // namespace

int CyclicGroup::compose(std::int64_t a, std::int64_t b) const {
    check_order(order);
    return static_cast<int>(reduce(reduce(a, order) + reduce(b, order), order));
}

int CyclicGroup::inverse(std::int64_t a) const {
    check_order(order);
    return static_cast<int>(reduce(-a, order));
}

GroupElement ProductCyclicGroup::compose(GroupElement a, GroupElement b) const {
    return {static_cast<int>(reduce(std::int64_t{a.kappa} + b.kappa, n1)),
            static_cast<int>(reduce(std::int64_t{a.iota} + b.iota, n2))};
}

GroupElement ProductCyclicGroup::inverse(GroupElement a) const {
    return {static_cast<int>(reduce(-std::int64_t{a.kappa}, n1)),
            static_cast<int>(reduce(-std::int64_t{a.iota}, n2))};
}

bool ProductCyclicGroup::is_identity(GroupElement a) const {
    return reduce(a.kappa, n1) == 0 && reduce(a.iota, n2) == 0;
}

std::vector<GroupElement> ProductCyclicGroup::elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(order()));
    for (int k = 0; k < n1; ++k)
        for (int i = 0; i < n2; ++i) out.push_back({k, i});
    return out;
}

int ProductCyclicGroup::index(GroupElement a) const {
    return static_cast<int>(reduce(a.kappa, n1) * n2 + reduce(a.iota, n2));
}

std::complex<double> irrep_value(int n, int s, std::int64_t kappa) {
    check_label(n, s);
    // Reduce s*kappa mod n before forming the angle; large exponents stay exact.
    return root_of_unity(reduce(kappa, n) * s, n);
}

std::complex<double> product_irrep_value(int n1, int n2, int s, int t, std::int64_t kappa,
                                         std::int64_t iota) {
    check_label(n1, s);
    check_label(n2, t);
    // Combine into a single angle over the common denominator n1*n2.
    const std::int64_t n = std::int64_t{n1} * n2;
    const std::int64_t num = reduce(kappa, n1) * s * n2 + reduce(iota, n2) * t * n1;
    return root_of_unity(num, n);
}

std::complex<double> irrep_sum(int n1, int n2, std::int64_t kappa, std::int64_t iota) {
    std::complex<double> sum = 0.0;
    for (int s = 0; s < n1; ++s)
        for (int t = 0; t < n2; ++t) sum += product_irrep_value(n1, n2, s, t, kappa, iota);
    return sum;
}

int crt_index(int n1, int n2, std::int64_t kappa, std::int64_t iota) {
    check_order(n1);
    check_order(n2);
    if (std::gcd(n1, n2) != 1) {
        throw Error(ErrorCode::NotCoprime, "gcd(" + std::to_string(n1) + ", " +
                                               std::to_string(n2) + ") != 1");
    }
    const std::int64_t n = std::int64_t{n1} * n2;
    return static_cast<int>(reduce(reduce(kappa, n1) * n2 + reduce(iota, n2) * n1, n));
}

std::vector<ProductIrrep> all_product_irreps(int n1, int n2) {
    check_order(n1);
    check_order(n2);
    std::vector<ProductIrrep> out;
    for (int s = 0; s < n1; ++s)
        for (int t = 0; t < n2; ++t) out.push_back({n1, n2, s, t});
    return out;
}

}  // namespace qgraph
