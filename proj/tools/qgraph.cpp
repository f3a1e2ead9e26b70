// qgraph: build symmetric metric graphs, extract secular spectra, compare them.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgraph/builders.hpp"
#include "qgraph/decompose.hpp"
#include "qgraph/io.hpp"
#include "qgraph/quotient.hpp"
#include "qgraph/scattering.hpp"
#include "qgraph/spectral.hpp"

using namespace qgraph;
using nlohmann::json;

namespace {

struct Globals {
    double k_max = 10.0;
    double grid = 0.0;  // 0: derived from the shortest edge
    double tol = 1e-10;
    unsigned threads = 1;
    std::string format = "csv";
    std::string output;
};

void emit(const Globals& g, const std::string& text) {
    if (g.output.empty() || g.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + g.output);
    out << text;
}

double default_grid(const Globals& g, double shortest) { return g.grid > 0.0 ? g.grid : shortest / 50.0; }

RootOptions root_options(const Globals& g, double shortest, const std::string& label) {
    RootOptions o;
    o.k_max = g.k_max;
    o.grid_step = default_grid(g, shortest);
    o.tol = g.tol;
    o.threads = g.threads;
    o.label = label;
    return o;
}

std::string spectrum_text(const Globals& g, const Spectrum& s) {
    if (g.format == "json") {
        json j;
        j["k_max"] = s.k_max;
        j["grid_step"] = s.grid_step;
        j["tol"] = s.tol;
        j["tol_touch"] = s.tol_touch;
        j["roots"] = json::array();
        for (const Root& r : s.roots) {
            j["roots"].push_back({{"k", r.k}, {"lambda", r.k * r.k}, {"order", r.order}, {"sources", r.sources}});
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    write_spectrum_csv(os, s);
    return os.str();
}

double shortest_edge(const MetricGraph& g) {
    double m = std::numeric_limits<double>::infinity();
    for (const Edge& e : g.edges()) m = std::min(m, e.length);
    return m;
}

std::string factor_label(int s, int t) { return "s=" + std::to_string(s) + " t=" + std::to_string(t); }

Spectrum document_spectrum(const Globals& g, const GraphDocument& doc, const std::string& label) {
    const SecularSystem sys = doc.conditions.empty() ? build_secular_system(doc.graph)
                                                     : build_secular_system(doc.graph, doc.conditions);
    const ComplexFunction f = [&sys](cplx k) { return secular_det(sys, k); };
    return find_roots_modulus(f, root_options(g, shortest_edge(doc.graph), label));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum graphs with cyclic symmetry: graph builders, secular spectra, factorization"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--kmax", g.k_max, "Upper end of the k interval (0, kmax]")->capture_default_str();
    app.add_option("--grid", g.grid, "Scan step in k (default: shortest edge / 50)");
    app.add_option("--tol", g.tol, "Root refinement width in k")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads for k scans (0: all cores)")->capture_default_str();
    app.add_option("--format", g.format, "Spectrum output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("-o,--output", g.output, "Output file (default: stdout)");

    // build
    auto* build = app.add_subcommand("build", "Write a graph document");
    build->require_subcommand(1);

    int cyc_n = 3;
    double cyc_len = 1.0;
    auto* cycle = build->add_subcommand("cycle", "Cycle C_n with its rotation action");
    cycle->add_option("--n", cyc_n)->required();
    cycle->add_option("--len", cyc_len)->required();

    int circ_n = 12;
    std::vector<int> circ_jumps;
    std::vector<double> circ_lens;
    auto* circulant = build->add_subcommand("circulant", "Circulant graph C_n(jumps)");
    circulant->add_option("--n", circ_n)->required();
    circulant->add_option("--jumps", circ_jumps)->required()->delimiter(',');
    circulant->add_option("--lens", circ_lens, "Edge length per jump class")->required()->delimiter(',');

    int n1 = 3;
    int n2 = 4;
    double l1 = 0.5;
    double l3 = 1.0;
    auto add_torus = [&](CLI::App* sub) {
        sub->add_option("--n1", n1)->required();
        sub->add_option("--n2", n2)->required();
        sub->add_option("--l1", l1, "Half-length of the g2-direction edges")->required();
        sub->add_option("--l3", l3, "Half-length of the g1-direction edges")->required();
    };
    auto* product = build->add_subcommand("product", "Torus C_n1 x C_n2 with edge lengths 2*l1 and 2*l3");
    add_torus(product);

    int qs = 0;
    int qt = 0;
    std::string pairing = "printed";
    auto add_pairing = [&](CLI::App* sub) {
        sub->add_option("--pairing", pairing, "Which phase sits on the l1 edges")
            ->check(CLI::IsMember({"printed", "swapped"}))
            ->capture_default_str();
    };
    auto* quotient = build->add_subcommand("quotient", "Quotient graph of the torus for irrep (s, t)");
    add_torus(quotient);
    quotient->add_option("--s", qs)->required();
    quotient->add_option("--t", qt)->required();
    add_pairing(quotient);

    // spectrum / scan
    std::string graph_path;
    auto* spectrum = app.add_subcommand("spectrum", "Roots of det(I - S D(k)) for a graph document");
    spectrum->add_option("graph", graph_path, "Graph document")->required()->check(CLI::ExistingFile);

    auto* scan = app.add_subcommand("scan", "Plot data k,|det(I - S D(k))| on the scan grid");
    scan->add_option("graph", graph_path, "Graph document")->required()->check(CLI::ExistingFile);

    // factors
    bool merged = false;
    auto* factors = app.add_subcommand("factors", "Roots of every quotient factor of the torus, labelled by (s, t)");
    add_torus(factors);
    add_pairing(factors);
    factors->add_flag("--merged", merged, "Coalesce the factor roots into one spectrum");

    // compare
    std::string spec_a;
    std::string spec_b;
    double cmp_tol = 1e-8;
    auto* compare = app.add_subcommand("compare", "Pair two spectrum CSV files root by root");
    compare->add_option("a", spec_a)->required()->check(CLI::ExistingFile);
    compare->add_option("b", spec_b)->required()->check(CLI::ExistingFile);
    compare->add_option("--tol", cmp_tol, "Pairing distance")->capture_default_str();

    // project
    std::size_t samples = 200;
    std::uint64_t seed = 1;
    auto* projectc = app.add_subcommand("project", "Project a random function on the torus onto irrep (s, t)");
    add_torus(projectc);
    projectc->add_option("--s", qs)->required();
    projectc->add_option("--t", qt)->required();
    projectc->add_option("--samples", samples, "Samples per edge")->capture_default_str();
    projectc->add_option("--seed", seed)->capture_default_str();

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::Success& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            throw Error(ErrorCode::InvalidArgument, e.what());
        }

        const PhasePairing pair = pairing == "swapped" ? PhasePairing::swapped : PhasePairing::as_printed;

        if (*build) {
            GraphDocument doc;
            if (*cycle) {
                SymmetricGraph sg = cycle_graph(cyc_n, cyc_len);
                if (sg.multigraph_warning) std::cerr << "warning: C_" << cyc_n << " is not a simple graph\n";
                doc = {sg.graph, standard_conditions(sg.graph), sg.action};
            } else if (*circulant) {
                SymmetricGraph sg = circulant_graph(circ_n, circ_jumps, circ_lens);
                doc = {sg.graph, standard_conditions(sg.graph), sg.action};
            } else if (*product) {
                SymmetricGraph sg = quotient_torus(n1, n2, l1, l3);
                doc = {sg.graph, standard_conditions(sg.graph), sg.action};
            } else {
                QuotientGraph q = quotient_graph({n1, n2, l1, l3, qs, qt, pair});
                doc = {q.graph, q.conditions, std::nullopt};
            }
            emit(g, to_json(doc));
        } else if (*spectrum) {
            const GraphDocument doc = read_graph(graph_path);
            emit(g, spectrum_text(g, document_spectrum(g, doc, "full")));
        } else if (*scan) {
            const GraphDocument doc = read_graph(graph_path);
            const SecularSystem sys = doc.conditions.empty() ? build_secular_system(doc.graph)
                                                             : build_secular_system(doc.graph, doc.conditions);
            const double h = default_grid(g, shortest_edge(doc.graph));
            std::vector<double> ks;
            for (double k = h; k <= g.k_max + 1e-12; k += h) ks.push_back(k);
            const std::function<double(double)> mod = [&](double k) { return std::abs(secular_det(sys, k)); };
            const std::vector<double> ms = parallel_map<double>(mod, ks, g.threads);
            std::ostringstream os;
            os << "k,abs_det\n";
            for (std::size_t i = 0; i < ks.size(); ++i) os << format_double(ks[i]) << "," << format_double(ms[i]) << "\n";
            emit(g, os.str());
        } else if (*factors) {
            std::vector<Spectrum> parts;
            for (const QuotientSpec& q : all_factor_specs(n1, n2, l1, l3, pair)) {
                const RealFunction f = [q](double k) { return quotient_dispersion_real(q, k); };
                const ComplexFunction fc = [q](cplx k) { return quotient_dispersion(q, k); };
                parts.push_back(find_roots_real(f, root_options(g, std::min(l1, l3), factor_label(q.s, q.t)), fc));
            }
            if (merged) {
                emit(g, spectrum_text(g, merge_spectra(parts)));
            } else {
                Spectrum all = merge_spectra(parts, 0.0);
                emit(g, spectrum_text(g, all));
            }
        } else if (*compare) {
            const Spectrum a = read_spectrum(spec_a);
            const Spectrum b = read_spectrum(spec_b);
            const SpectrumComparison c = compare_spectra(a, b, cmp_tol);
            json j{{"isospectral", c.isospectral},
                   {"max_distance", c.max_distance},
                   {"count_a", c.count_a},
                   {"count_b", c.count_b},
                   {"unmatched_a", c.unmatched_a},
                   {"unmatched_b", c.unmatched_b}};
            emit(g, j.dump(2) + "\n");
            return c.isospectral ? 0 : 1;
        } else if (*projectc) {
            const SymmetricGraph torus = torus_action(n1, n2, l1, l3);
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> normal;
            const SampledFunction f = SampledFunction::from(
                torus.graph, samples, [&](EdgeId, double) { return cplx(normal(rng), normal(rng)); });
            const ProductIrrep irrep{n1, n2, qs, qt};
            if (qs < 0 || qs >= n1 || qt < 0 || qt >= n2) {
                throw Error(ErrorCode::LabelOutOfRange, "(s, t) outside the label range");
            }
            const SampledFunction p = project(f, torus.action, irrep);
            std::ostringstream os;
            os << "# norm_sq=" << format_double(l2_norm_sq(f)) << "\n";
            os << "# projected_norm_sq=" << format_double(l2_norm_sq(p)) << "\n";
            os << "# residual=" << format_double(quasi_periodicity_residual(p, torus.action, irrep)) << "\n";
            os << "edge,m,x,re,im\n";
            for (EdgeId e = 0; e < torus.graph.edge_count(); ++e) {
                for (std::size_t m = 0; m < samples; ++m) {
                    const cplx v = p.on(e)[m];
                    os << e << "," << m << "," << format_double(p.node(e, m)) << "," << format_double(v.real()) << ","
                       << format_double(v.imag()) << "\n";
                }
            }
            emit(g, os.str());
        }
    } catch (const Error& e) {
        json err{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err{{"error", "InvalidArgument"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 0;
}
