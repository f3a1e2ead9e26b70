#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qgraph/quotient.hpp"
#include "qgraph/scattering.hpp"
#include "qgraph/spectral.hpp"

using namespace qgraph;
using std::numbers::pi;

namespace {

RootOptions options(double k_max, double h) {
    RootOptions o;
    o.k_max = k_max;
    o.grid_step = h;
    return o;
}

Spectrum from_roots(std::vector<std::pair<double, int>> roots, std::string label = "x") {
    Spectrum s;
    s.k_max = 100.0;
    for (auto [k, order] : roots) s.roots.push_back({k, order, {label}});
    return s;
}

Spectrum circle_spectrum(double k_max) {
    const std::vector<EdgeSpec> edges{{0, 1, 1.0}, {1, 0, 2.0}};
    const SecularSystem sys = build_secular_system(MetricGraph::make(2, edges));
    return find_roots_modulus([sys](cplx k) { return secular_det(sys, k); }, options(k_max, 0.02));
}

Spectrum interval_spectrum(double length, double k_max) {
    const std::vector<EdgeSpec> edges{{0, 1, length}};
    const SecularSystem sys = build_secular_system(MetricGraph::make(2, edges));
    return find_roots_modulus([sys](cplx k) { return secular_det(sys, k); }, options(k_max, 0.02));
}

}  // namespace

TEST_CASE("sine roots") {
    const Spectrum s = find_roots_real([](double k) { return std::sin(k); }, options(10.0, 0.05));
    REQUIRE(s.roots.size() == 3);
    for (int m = 1; m <= 3; ++m) {
        CHECK(std::abs(s.roots[m - 1].k - m * pi) < 1e-9);
        CHECK(s.roots[m - 1].order == 1);
    }
}

TEST_CASE("touching root") {
    const RealFunction f = [](double k) { return (k - 2.0) * (k - 2.0); };
    const Spectrum plain = find_roots_real(f, options(5.0, 0.03));
    REQUIRE(plain.roots.size() == 1);
    CHECK(plain.roots[0].order == 2);
    CHECK(std::abs(plain.roots[0].k - 2.0) < 1e-4);

    const ComplexFunction fc = [](cplx k) { return (k - 2.0) * (k - 2.0); };
    const Spectrum confirmed = find_roots_real(f, options(5.0, 0.03), fc);
    REQUIRE(confirmed.roots.size() == 1);
    CHECK(confirmed.roots[0].order == 2);
    CHECK(std::abs(confirmed.roots[0].k - 2.0) < 1e-10);

    // A positive local minimum is not a root.
    const RealFunction g = [](double k) { return (k - 2.0) * (k - 2.0) + 1e-3; };
    CHECK(find_roots_real(g, options(5.0, 0.03)).roots.empty());
}

TEST_CASE("trivial factor with equal lengths") {
    const QuotientSpec spec{1, 1, 1.0, 1.0, 0, 0};
    const Spectrum s = find_roots_real([spec](double k) { return quotient_dispersion_real(spec, k); },
                                       options(7.0, 0.02),
                                       [spec](cplx k) { return quotient_dispersion(spec, k); });
    const std::vector<std::pair<double, int>> expected{{pi / 2, 1}, {pi, 3}, {3 * pi / 2, 1}, {2 * pi, 3}};
    REQUIRE(s.roots.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(std::abs(s.roots[i].k - expected[i].first) < 1e-9);
        CHECK(s.roots[i].order == expected[i].second);
    }
}

TEST_CASE("real finder rejects a coarse grid") {
    const RealFunction f = [](double k) { return (k - 1.02) * (k - 1.08); };
    try {
        find_roots_real(f, options(3.0, 0.1));
        FAIL("expected GridTooCoarse");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GridTooCoarse);
    }
}

TEST_CASE("modulus finder resolves close roots by rescanning") {
    const ComplexFunction f = [](cplx k) { return (k - 2.0) * (k - 2.003) * (k - 2.9) * (k - 2.9); };
    const Spectrum s = find_roots_modulus(f, options(3.0, 0.01));
    REQUIRE(s.roots.size() == 3);
    CHECK(std::abs(s.roots[0].k - 2.0) < 1e-9);
    CHECK(std::abs(s.roots[1].k - 2.003) < 1e-9);
    CHECK(s.roots[2].order == 2);
}

TEST_CASE("real finder audit recovers a touching root next to a crossing") {
    // Double root at 1.0 and a simple root at 1.012: on a 0.01 grid the
    // touching minimum sits in a bracketed cell.
    const RealFunction f = [](double k) { return (k - 1.0) * (k - 1.0) * (k - 1.012); };
    const ComplexFunction fc = [](cplx k) { return (k - 1.0) * (k - 1.0) * (k - 1.012); };
    const Spectrum s = find_roots_real(f, options(2.0, 0.01), fc);
    int total = 0;
    for (const Root& r : s.roots) total += r.order;
    CHECK(total == 3);
}

TEST_CASE("modulus finder rejects unresolvable clusters") {
    const ComplexFunction f = [](cplx k) { return (k - 2.0) * (k - 2.000004); };
    try {
        find_roots_modulus(f, options(3.0, 0.01));
        FAIL("expected GridTooCoarse");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GridTooCoarse);
    }
}

TEST_CASE("contour analysis") {
    const ComplexFunction f = [](cplx z) { return (z - 1.0) * (z - 1.0) * (z - 1.0) * (z - 5.0) * std::exp(z); };
    const ContourInfo info = analyze_contour(f, 1.0001, 0.1);
    CHECK(info.winding == 3);
    CHECK(std::abs(info.centroid - 1.0) < 1e-12);
    CHECK(info.spread < 1e-6);
    CHECK(analyze_contour(f, 3.0, 0.5).winding == 0);
    const ContourInfo two = analyze_contour([](cplx z) { return (z - 0.9) * (z - 1.1); }, 1.0, 0.5);
    CHECK(two.winding == 2);
    CHECK(std::abs(two.spread - 0.1) < 1e-12);
}

TEST_CASE("circle of circumference 3") {
    const Spectrum s = circle_spectrum(20.0);
    REQUIRE(s.roots.size() == 9);
    for (std::size_t m = 1; m <= 9; ++m) {
        CHECK(std::abs(s.roots[m - 1].k - 2.0 * pi * static_cast<double>(m) / 3.0) < 1e-9);
        CHECK(s.roots[m - 1].order == 2);
    }
}

TEST_CASE("Neumann interval") {
    const Spectrum s = interval_spectrum(1.0, 10.0);
    REQUIRE(s.roots.size() == 3);
    for (int m = 1; m <= 3; ++m) {
        CHECK(std::abs(s.roots[m - 1].k - m * pi) < 1e-9);
        CHECK(s.roots[m - 1].order == 1);
    }
}

TEST_CASE("merge") {
    const Spectrum a = from_roots({{pi, 1}}, "a");
    const Spectrum b = from_roots({{pi + 1e-10, 1}}, "b");
    const Spectrum m = merge_spectra({a, b}, 1e-8);
    REQUIRE(m.roots.size() == 1);
    CHECK(m.roots[0].order == 2);
    CHECK(m.roots[0].sources == std::vector<std::string>{"a", "b"});

    const Spectrum d = merge_spectra({from_roots({{3.0, 1}, {1.0, 2}}), from_roots({{2.0, 1}})});
    REQUIRE(d.roots.size() == 3);
    CHECK(d.roots[0].k == 1.0);
    CHECK(d.roots[1].k == 2.0);
    CHECK(d.roots[2].k == 3.0);
}

TEST_CASE("merge is associative and commutative on separated roots") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> slot(1, 400);
    std::uniform_int_distribution<int> ord(1, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Spectrum> parts(3);
        for (Spectrum& s : parts) {
            std::set<int> slots;
            for (int i = 0; i < 30; ++i) slots.insert(slot(rng));
            for (int x : slots) s.roots.push_back({0.05 * x, ord(rng), {"r"}});
        }
        const Spectrum left = merge_spectra({merge_spectra({parts[0], parts[1]}), parts[2]});
        const Spectrum right = merge_spectra({parts[0], merge_spectra({parts[1], parts[2]})});
        const Spectrum flipped = merge_spectra({parts[2], parts[0], parts[1]});
        CHECK(compare_spectra(left, right, 1e-12).isospectral);
        CHECK(compare_spectra(left, flipped, 1e-12).isospectral);
        CHECK(left.roots.size() == right.roots.size());
    }
}

TEST_CASE("compare") {
    const Spectrum c = circle_spectrum(10.0);
    const SpectrumComparison self = compare_spectra(c, c, 1e-9);
    CHECK(self.isospectral);
    CHECK(self.max_distance == 0.0);

    const SpectrumComparison other = compare_spectra(c, interval_spectrum(3.0, 10.0), 1e-8);
    CHECK_FALSE(other.isospectral);
    CHECK_FALSE(other.unmatched_b.empty());
}

TEST_CASE("Weyl count") {
    const WeylReport circle = weyl_count_check(circle_spectrum(20.0), 20.0, 3.0, 2, 2);
    CHECK(circle.count == 18);
    CHECK(circle.ok);
    const WeylReport interval = weyl_count_check(interval_spectrum(1.0, 10.0), 10.0, 1.0, 1, 2);
    CHECK(interval.count == 3);
    CHECK(interval.ok);
    const WeylReport empty = weyl_count_check(Spectrum{}, 100.0, 3.0, 2, 2);
    CHECK_FALSE(empty.ok);
}

TEST_CASE("halving the grid step keeps every root") {
    for (const QuotientSpec& spec : all_factor_specs(3, 4, 0.5, 1.0)) {
        const RealFunction f = [spec](double k) { return quotient_dispersion_real(spec, k); };
        const ComplexFunction fc = [spec](cplx k) { return quotient_dispersion(spec, k); };
        const Spectrum coarse = find_roots_real(f, options(15.0, 0.01), fc);
        const Spectrum fine = find_roots_real(f, options(15.0, 0.005), fc);
        const SpectrumComparison c = compare_spectra(coarse, fine, 1e-9);
        CHECK(c.unmatched_a.empty());
    }
}

TEST_CASE("threaded scans match the serial result") {
    const QuotientSpec spec{3, 4, 0.5, 1.0, 1, 2};
    const QuotientGraph q = quotient_graph(spec);
    const SecularSystem sys = build_secular_system(q.graph, q.conditions);
    RootOptions o = options(12.0, 0.01);
    const ComplexFunction f = [&sys](cplx k) { return secular_det(sys, k); };
    const Spectrum serial = find_roots_modulus(f, o);
    o.threads = 4;
    const Spectrum threaded = find_roots_modulus(f, o);
    CHECK(serial.expanded() == threaded.expanded());
}

TEST_CASE("roots stay inside (0, k_max]") {
    const Spectrum s = find_roots_real([](double k) { return std::sin(k); }, options(3.0 * pi, 0.05));
    for (const Root& r : s.roots) {
        CHECK(r.k > 0.0);
        CHECK(r.k <= s.k_max);
    }
}
