#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qgraph/core_graph.hpp"

namespace qgraph {

using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<cplx(cplx)>;

struct Root {
    double k = 0.0;
    int order = 1;
    std::vector<std::string> sources;
};

/// Roots in (0, k_max], strictly increasing.
struct Spectrum {
    std::vector<Root> roots;
    double k_max = 0.0;
    double grid_step = 0.0;
    double tol = 0.0;
    double tol_touch = 0.0;

    /// Sum of orders of roots with k <= K.
    int count(double K) const;
    /// Root values repeated by order.
    std::vector<double> expanded() const;
};

struct RootOptions {
    double k_max = 10.0;
    double grid_step = 0.01;
    double tol = 1e-10;        // bisection / golden-section width
    double tol_touch = 1e-8;   // |f| threshold for touching roots
    double coalesce = 1e-7;    // merge distance
    unsigned threads = 1;      // 0 = hardware concurrency
    std::string label = "";    // source label attached to every root
};

/// Result of a contour analysis of an analytic function on the circle |z - c| = r.
struct ContourInfo {
    int winding = 0;
    cplx centroid;          // mean of the enclosed zeros, counted with multiplicity
    double spread = 0.0;    // standard deviation of the enclosed zeros
};

/// Winding number of f around the circle and the first two zero moments,
/// from the argument principle with f' taken from the sampled Taylor series.
ContourInfo analyze_contour(const ComplexFunction& f, cplx center, double radius);

/// Sign-change scan of a real function over (0, k_max] with bisection, plus
/// touching roots at small local minima of |f|. When `analytic` (the complex
/// extension of f) is given, orders come from its winding number on a circle
/// of radius grid_step/2 and multiple roots are refined by their contour
/// centroid; touching roots must be confirmed by a nonzero winding. With
/// `analytic`, each window between grid local maxima of |f| is audited: its
/// contour zero count must equal the orders found inside, otherwise the window
/// is rescanned on a grid 8x finer (at most 3 times).
/// Throws GridTooCoarse.
Spectrum find_roots_real(const RealFunction& f, const RootOptions& options,
                         const std::optional<ComplexFunction>& analytic = std::nullopt);

/// The grid is cut into windows at local maxima of |f|. A window whose contour
/// zero count is nonzero has its minimum refined by golden section and
/// checked on a circle of radius grid_step/2; the winding there is the order
/// and the contour centroid the position. If that winding falls short of the
/// window count, the window is rescanned on a grid 8x finer (at most 3 times).
/// Throws GridTooCoarse.
Spectrum find_roots_modulus(const ComplexFunction& f, const RootOptions& options);

/// Multiset union: roots closer than `tol` are coalesced with orders summed.
Spectrum merge_spectra(const std::vector<Spectrum>& spectra, double tol = 1e-7);

struct SpectrumComparison {
    bool isospectral = false;
    double max_distance = 0.0;
    std::vector<double> unmatched_a;
    std::vector<double> unmatched_b;
    std::size_t count_a = 0;
    std::size_t count_b = 0;
};

/// Greedy pairing of the two root multisets (expanded by order) in sorted order.
SpectrumComparison compare_spectra(const Spectrum& a, const Spectrum& b, double tol);

struct WeylReport {
    int count = 0;
    double expected = 0.0;
    double bound = 0.0;
    bool ok = false;
};

/// Checks |N(K) - total_length K / pi| <= |E| + |V|.
WeylReport weyl_count_check(const Spectrum& s, double K, double total_length, std::size_t edge_count,
                            std::size_t vertex_count);

/// Evaluates f at every point, split across `threads` workers.
template <class T>
std::vector<T> parallel_map(const std::function<T(double)>& f, const std::vector<double>& points,
                            unsigned threads);

}  // namespace qgraph
