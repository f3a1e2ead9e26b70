#include "qgraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace qgraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> grid(double k_max, double h, int extra_cells) {
    if (!(h > 0.0) || !(k_max > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "k_max and grid_step must be positive");
    }
    const auto n = static_cast<std::size_t>(std::ceil(k_max / h - 1e-12)) + static_cast<std::size_t>(extra_cells);
    std::vector<double> ks(n);
    for (std::size_t j = 0; j < n; ++j) ks[j] = static_cast<double>(j + 1) * h;
    return ks;
}

double golden_min(const std::function<double(double)>& g, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double gc = g(c);
    double gd = g(d);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        if (gc < gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    return gc < gd ? c : d;
}

double bisect(const RealFunction& f, double a, double b, double fa, double tol) {
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

// Contour check around a located root: the winding must be stable when the
// circle is halved, and the enclosed zeros must be one cluster.
struct Refined {
    double k = 0.0;
    int order = 0;
};

Refined refine_on_circle(const ComplexFunction& f, double center, double radius) {
    const ContourInfo outer = analyze_contour(f, center, radius);
    if (outer.winding <= 0) return {center, 0};
    const ContourInfo inner = analyze_contour(f, center, radius / 2.0);
    if (inner.winding != outer.winding) {
        std::ostringstream os;
        os << "near k = " << center << ": " << outer.winding << " zeros within " << radius << " but "
           << inner.winding << " within " << radius / 2.0;
        throw Error(ErrorCode::GridTooCoarse, os.str());
    }
    if (outer.spread > 1e-6) {
        std::ostringstream os;
        os << "near k = " << center << ": " << outer.winding << " distinct zeros spread by " << outer.spread;
        throw Error(ErrorCode::GridTooCoarse, os.str());
    }
    return {outer.centroid.real(), outer.winding};
}

void add_unique(std::vector<Root>& roots, double k, int order, double min_gap, const std::string& label) {
    for (const Root& r : roots) {
        if (std::abs(r.k - k) < min_gap) return;
    }
    roots.push_back({k, order, {label}});
}

Spectrum finish(std::vector<Root> roots, const RootOptions& o) {
    std::erase_if(roots, [&](const Root& r) { return !(r.k > 0.0) || r.k > o.k_max; });
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.k < b.k; });
    Spectrum s;
    s.roots = std::move(roots);
    s.k_max = o.k_max;
    s.grid_step = o.grid_step;
    s.tol = o.tol;
    s.tol_touch = o.tol_touch;
    return s;
}

}  // namespace

template <class T>
std::vector<T> parallel_map(const std::function<T(double)>& f, const std::vector<double>& points,
                            unsigned threads) {
    std::vector<T> out(points.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, points.size())));
    if (threads <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) out[i] = f(points[i]);
        return out;
    }
    std::vector<std::thread> workers;
    const std::size_t chunk = (points.size() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(points.size(), lo + chunk);
        workers.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = f(points[i]);
        });
    }
    for (auto& t : workers) t.join();
    return out;
}

template std::vector<double> parallel_map(const std::function<double(double)>&, const std::vector<double>&,
                                          unsigned);
template std::vector<cplx> parallel_map(const std::function<cplx(double)>&, const std::vector<double>&,
                                        unsigned);

int Spectrum::count(double K) const {
    int n = 0;
    for (const Root& r : roots) {
        if (r.k <= K) n += r.order;
    }
    return n;
}

std::vector<double> Spectrum::expanded() const {
    std::vector<double> out;
    for (const Root& r : roots) out.insert(out.end(), static_cast<std::size_t>(r.order), r.k);
    return out;
}

namespace {

constexpr std::size_t kMinSamples = 64;
constexpr std::size_t kMaxSamples = 4096;

cplx on_circle(const ComplexFunction& f, cplx center, double radius, std::size_t j, std::size_t n) {
    const cplx v = f(center + std::polar(radius, kTwoPi * static_cast<double>(j) / static_cast<double>(n)));
    if (v == 0.0) throw Error(ErrorCode::GridTooCoarse, "zero on the contour");
    return v;
}

// Samples on 2n nodes, reusing the n existing ones at the even nodes.
std::vector<cplx> refine_samples(const ComplexFunction& f, cplx center, double radius,
                                 const std::vector<cplx>& values) {
    const std::size_t n = values.size();
    std::vector<cplx> out(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        out[2 * j] = values[j];
        out[2 * j + 1] = on_circle(f, center, radius, 2 * j + 1, 2 * n);
    }
    return out;
}

bool phase_resolved(const std::vector<cplx>& values) {
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (std::abs(std::arg(values[(j + 1) % values.size()] / values[j])) > std::numbers::pi / 2.0) return false;
    }
    return true;
}

// Contour moments p1, p2 of (z - c)^p f'/f, normalized by 2 pi i. The scaled
// Taylor coefficients b_m = a_m r^m come from the DFT of the samples, and
// (z - c) f'(z) at node j is sum_m m b_m w^{mj}.
std::pair<cplx, cplx> moments(const std::vector<cplx>& values, double radius) {
    const std::size_t n = values.size();
    const auto dn = static_cast<double>(n);
    std::vector<cplx> unit(n);
    for (std::size_t j = 0; j < n; ++j) unit[j] = std::polar(1.0, kTwoPi * static_cast<double>(j) / dn);
    std::vector<cplx> b(n / 2);
    for (std::size_t m = 1; m < n / 2; ++m) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += values[j] * std::conj(unit[(m * j) % n]);
        b[m] = acc / dn;
    }
    cplx p1 = 0.0;
    cplx p2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        cplx zf = 0.0;
        for (std::size_t m = 1; m < n / 2; ++m) zf += static_cast<double>(m) * b[m] * unit[(m * j) % n];
        const cplx w = radius * unit[j];
        const cplx q = zf / values[j];
        p1 += w * q;
        p2 += w * w * q;
    }
    return {p1 / dn, p2 / dn};
}

// Sample count doubles until the phase steps are below pi/2 and, when moments
// are wanted, until they agree with the previous level (aliasing from zeros
// just outside the circle decays only geometrically).
ContourInfo contour(const ComplexFunction& f, cplx center, double radius, bool want_moments) {
    std::vector<cplx> values(kMinSamples);
    for (std::size_t j = 0; j < kMinSamples; ++j) values[j] = on_circle(f, center, radius, j, kMinSamples);
    while (!phase_resolved(values) && values.size() < kMaxSamples) values = refine_samples(f, center, radius, values);

    double total = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) total += std::arg(values[(j + 1) % values.size()] / values[j]);
    ContourInfo info;
    info.winding = static_cast<int>(std::lround(total / kTwoPi));
    info.centroid = center;
    if (!want_moments || info.winding <= 0) return info;

    // Stops at agreement or once the change no longer shrinks (rounding floor
    // of f near a multiple zero).
    auto [p1, p2] = moments(values, radius);
    double last_change = std::numeric_limits<double>::infinity();
    while (values.size() < kMaxSamples) {
        values = refine_samples(f, center, radius, values);
        const auto [q1, q2] = moments(values, radius);
        const double change = std::max(std::abs(q1 - p1) / radius, std::abs(q2 - p2) / (radius * radius));
        p1 = q1;
        p2 = q2;
        if (change <= 1e-13 || change > 0.5 * last_change) break;
        last_change = change;
    }
    const double m = info.winding;
    const cplx mean = p1 / m;
    info.centroid = center + mean;
    info.spread = std::sqrt(std::abs(p2 / m - mean * mean));
    return info;
}

}  // namespace

ContourInfo analyze_contour(const ComplexFunction& f, cplx center, double radius) {
    return contour(f, center, radius, true);
}

namespace {

constexpr int kMaxRescanDepth = 3;
constexpr int kRescanFactor = 8;

// Grid a, a + h, ..., b.
std::vector<double> subgrid(double a, double b, double h) {
    const auto n = static_cast<std::size_t>(std::lround((b - a) / h));
    std::vector<double> ks(n + 1);
    for (std::size_t i = 0; i <= n; ++i) ks[i] = a + static_cast<double>(i) * h;
    ks[n] = b;
    return ks;
}

// Windows between consecutive grid local maxima of |values|; every real zero
// inside the sampled range lies in exactly one window.
std::vector<std::pair<std::size_t, std::size_t>> windows(const std::vector<double>& values) {
    std::vector<std::size_t> cuts{0};
    for (std::size_t j = 1; j + 1 < values.size(); ++j) {
        const double a = std::abs(values[j]);
        if (a >= std::abs(values[j - 1]) && a > std::abs(values[j + 1])) cuts.push_back(j);
    }
    if (values.size() > 1) cuts.push_back(values.size() - 1);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.emplace_back(cuts[i], cuts[i + 1]);
    return out;
}

int window_winding(const ComplexFunction& f, double a, double b) {
    return contour(f, 0.5 * (a + b), 0.5 * (b - a), false).winding;
}

[[noreturn]] void unresolved(double a, double b, int expected, int found) {
    std::ostringstream os;
    os << "in [" << a << ", " << b << "]: " << expected << " zeros by contour count but " << found
       << " resolved";
    throw Error(ErrorCode::GridTooCoarse, os.str());
}

std::vector<Root> real_scan(const RealFunction& f, const std::optional<ComplexFunction>& analytic,
                            const std::vector<double>& ks, double h, const RootOptions& o, int depth) {
    const std::vector<double> fs = parallel_map<double>(f, ks, depth == 0 ? o.threads : 1);
    const double radius = h / 2.0;
    const double min_gap = h / 4.0;

    std::vector<Root> roots;
    std::vector<bool> bracketed(ks.size(), false);
    for (std::size_t j = 0; j + 1 < ks.size(); ++j) {
        const double a = ks[j];
        const double b = ks[j + 1];
        const int sa = sign(fs[j]);
        const int sb = sign(fs[j + 1]);
        if (sa == 0) {
            bracketed[j] = true;
            continue;
        }
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (sa == sb) {
            if (sign(fm) == -sa && std::abs(fm) > o.tol_touch) {
                std::ostringstream os;
                os << "two sign changes in [" << a << ", " << b << "]";
                throw Error(ErrorCode::GridTooCoarse, os.str());
            }
            continue;
        }
        if (sb == 0) continue;
        bracketed[j] = bracketed[j + 1] = true;
        double k = bisect(f, a, b, fs[j], o.tol);
        int order = 1;
        if (analytic) {
            const Refined r = refine_on_circle(*analytic, k, radius);
            if (r.order > 0) {
                order = r.order;
                if (order > 1) k = r.k;
            }
        }
        add_unique(roots, k, order, min_gap, o.label);
    }
    for (std::size_t j = 0; j < ks.size(); ++j) {
        if (fs[j] != 0.0) continue;
        int order = 1;
        if (analytic) order = std::max(1, refine_on_circle(*analytic, ks[j], radius).order);
        add_unique(roots, ks[j], order, min_gap, o.label);
    }

    // Touching roots: small local minima of |f| between cells without a sign change.
    for (std::size_t j = 1; j + 1 < ks.size(); ++j) {
        const double aj = std::abs(fs[j]);
        if (!(aj <= std::abs(fs[j - 1]) && aj <= std::abs(fs[j + 1]))) continue;
        if (bracketed[j] || bracketed[j - 1]) continue;
        const double k0 = golden_min([&](double k) { return std::abs(f(k)); }, ks[j - 1], ks[j + 1], o.tol);
        if (std::abs(f(k0)) >= o.tol_touch) continue;
        double k = k0;
        int order = 2;
        if (analytic) {
            const Refined r = refine_on_circle(*analytic, k0, radius);
            if (r.order == 0) continue;
            order = r.order;
            k = r.k;
        }
        add_unique(roots, k, order, min_gap, o.label);
    }
    if (!analytic) return roots;

    // Audit: the zero count of each window must match the orders found in it.
    for (const auto& [lo, hi] : windows(fs)) {
        const double a = ks[lo];
        const double b = ks[hi];
        const int expected = window_winding(*analytic, a, b);
        int found = 0;
        for (const Root& r : roots) {
            if (r.k > a && r.k < b) found += r.order;
        }
        if (found == expected) continue;
        if (depth >= kMaxRescanDepth) unresolved(a, b, expected, found);
        std::erase_if(roots, [&](const Root& r) { return r.k > a && r.k < b; });
        const double fine = h / kRescanFactor;
        for (Root& r : real_scan(f, analytic, subgrid(a, b, fine), fine, o, depth + 1)) {
            if (r.k > a && r.k < b) roots.push_back(std::move(r));
        }
    }
    return roots;
}

std::vector<Root> modulus_scan(const ComplexFunction& f, const std::vector<double>& ks, double h,
                               const RootOptions& o, int depth) {
    const std::function<double(double)> mod = [&](double k) { return std::abs(f(cplx(k, 0.0))); };
    const unsigned threads = depth == 0 ? o.threads : 1;
    const std::vector<double> ms = parallel_map<double>(mod, ks, threads);
    const auto parts = windows(ms);

    // Windows are independent; errors are rethrown after the join.
    std::vector<std::vector<Root>> found(parts.size());
    std::vector<std::string> errors(parts.size());
    std::vector<double> idx(parts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
    const std::function<double(double)> work = [&](double x) {
        const auto i = static_cast<std::size_t>(x);
        const auto [lo, hi] = parts[i];
        const double a = ks[lo];
        const double b = ks[hi];
        try {
            const int expected = window_winding(f, a, b);
            if (expected == 0) return 0.0;
            std::size_t m = lo;
            for (std::size_t j = lo; j <= hi; ++j) {
                if (ms[j] < ms[m]) m = j;
            }
            const double c = golden_min(mod, ks[m > lo ? m - 1 : lo], ks[m < hi ? m + 1 : hi], o.tol);
            Refined r;
            try {
                r = refine_on_circle(f, c, std::min(h / 2.0, c / 2.0));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::GridTooCoarse) throw;
                r.order = -1;
            }
            if (r.order == expected) {
                found[i].push_back({r.k, r.order, {o.label}});
                return 0.0;
            }
            if (depth >= kMaxRescanDepth) unresolved(a, b, expected, std::max(r.order, 0));
            const double fine = h / kRescanFactor;
            for (Root& root : modulus_scan(f, subgrid(a, b, fine), fine, o, depth + 1)) {
                if (root.k > a && root.k < b) found[i].push_back(std::move(root));
            }
        } catch (const Error& e) {
            errors[i] = e.what();
        }
        return 0.0;
    };
    parallel_map<double>(work, idx, threads);
    for (const std::string& e : errors) {
        if (!e.empty()) {
            const auto colon = e.find(": ");
            throw Error(ErrorCode::GridTooCoarse, colon == std::string::npos ? e : e.substr(colon + 2));
        }
    }
    std::vector<Root> roots;
    for (auto& part : found) roots.insert(roots.end(), part.begin(), part.end());
    return roots;
}

}  // namespace

Spectrum find_roots_real(const RealFunction& f, const RootOptions& o,
                         const std::optional<ComplexFunction>& analytic) {
    return finish(real_scan(f, analytic, grid(o.k_max, o.grid_step, 1), o.grid_step, o, 0), o);
}

Spectrum find_roots_modulus(const ComplexFunction& f, const RootOptions& o) {
    return finish(modulus_scan(f, grid(o.k_max, o.grid_step, 1), o.grid_step, o, 0), o);
}

Spectrum merge_spectra(const std::vector<Spectrum>& spectra, double tol) {
    std::vector<Root> all;
    Spectrum out;
    for (const Spectrum& s : spectra) {
        all.insert(all.end(), s.roots.begin(), s.roots.end());
        out.k_max = std::max(out.k_max, s.k_max);
        out.grid_step = std::max(out.grid_step, s.grid_step);
        out.tol = std::max(out.tol, s.tol);
        out.tol_touch = std::max(out.tol_touch, s.tol_touch);
    }
    std::sort(all.begin(), all.end(), [](const Root& a, const Root& b) { return a.k < b.k; });
    for (const Root& r : all) {
        if (!out.roots.empty() && r.k - out.roots.back().k < tol) {
            Root& c = out.roots.back();
            const double w = c.order + r.order;
            c.k = (c.k * c.order + r.k * r.order) / w;
            c.order += r.order;
            c.sources.insert(c.sources.end(), r.sources.begin(), r.sources.end());
        } else {
            out.roots.push_back(r);
        }
    }
    return out;
}

SpectrumComparison compare_spectra(const Spectrum& a, const Spectrum& b, double tol) {
    const std::vector<double> xa = a.expanded();
    const std::vector<double> xb = b.expanded();
    SpectrumComparison c;
    c.count_a = xa.size();
    c.count_b = xb.size();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < xa.size() && j < xb.size()) {
        const double d = std::abs(xa[i] - xb[j]);
        if (d < tol) {
            c.max_distance = std::max(c.max_distance, d);
            ++i;
            ++j;
        } else if (xa[i] < xb[j]) {
            c.unmatched_a.push_back(xa[i++]);
        } else {
            c.unmatched_b.push_back(xb[j++]);
        }
    }
    c.unmatched_a.insert(c.unmatched_a.end(), xa.begin() + static_cast<std::ptrdiff_t>(i), xa.end());
    c.unmatched_b.insert(c.unmatched_b.end(), xb.begin() + static_cast<std::ptrdiff_t>(j), xb.end());
    c.isospectral = c.count_a == c.count_b && c.unmatched_a.empty() && c.unmatched_b.empty();
    return c;
}

WeylReport weyl_count_check(const Spectrum& s, double K, double total_length, std::size_t edge_count,
                            std::size_t vertex_count) {
    WeylReport w;
    w.count = s.count(K);
    w.expected = total_length * K / std::numbers::pi;
    w.bound = static_cast<double>(edge_count + vertex_count);
    w.ok = std::abs(w.count - w.expected) <= w.bound;
    return w;
}

}  // namespace qgraph
