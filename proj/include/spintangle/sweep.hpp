#pragma once

#include "spintangle/core.hpp"
#include "spintangle/entanglement.hpp"
#include "spintangle/evolution.hpp"
#include "spintangle/graph_state.hpp"
#include "spintangle/hamiltonian.hpp"
#include "spintangle/state.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace spintangle {

inline constexpr const char* kVersion = "0.1.0";

enum class InitialKind { BasisIndex, AllRotated, CenterRotated, SingleFlip };

struct InitialStateSpec {
    InitialKind kind = InitialKind::BasisIndex;
    double theta = 0.0;  // rotated kinds
    long index = 0;      // BasisIndex
    int site = 0;        // SingleFlip
};

struct TimeGrid {
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;

    void validate() const {
        require(steps >= 2, "times: steps must be >= 2");
        require(start < stop, "times: start must be below stop");
    }
    double at(int k) const { return start + (stop - start) * k / (steps - 1); }
};

struct OutputSpec {
    std::string path;
    std::string format = "csv";  // "csv" | "json"
};

// Metric identifiers in the fixed CSV column order.
enum class Metric {
    OverlapAbs,
    Concurrence,
    CAssist,
    SqrtTangleI,
    SqrtTangleJ,
    Eof,
    CkwResidualI,
    LeLowerBound,
};

inline const std::vector<std::pair<std::string, Metric>>& metric_names() {
    static const std::vector<std::pair<std::string, Metric>> names = {
        {"overlap_abs", Metric::OverlapAbs},
        {"concurrence", Metric::Concurrence},
        {"c_assist", Metric::CAssist},
        {"sqrt_tangle_i", Metric::SqrtTangleI},
        {"sqrt_tangle_j", Metric::SqrtTangleJ},
        {"eof", Metric::Eof},
        {"ckw_residual_i", Metric::CkwResidualI},
        {"le_lower_bound", Metric::LeLowerBound},
    };
    return names;
}

struct SweepConfig {
    HamiltonianSpec hamiltonian;
    bool ensemble = false;
    InitialStateSpec initial;
    std::optional<std::vector<double>> theta_grid;  // rotated kinds only
    TimeGrid times;
    std::vector<std::pair<int, int>> pairs;
    std::vector<Metric> metrics;  // empty = all
    std::vector<double> b_grid;   // singleton from `field` unless field_grid given
    std::vector<double> phi_grid;
    OutputSpec output;
    std::uint64_t seed = 0;

    std::vector<Metric> selected_metrics() const {
        if (!metrics.empty()) return metrics;
        std::vector<Metric> all;
        for (const auto& [name, m] : metric_names()) all.push_back(m);
        return all;
    }

    void validate() const {
        hamiltonian.validate();
        times.validate();
        require(!pairs.empty(), "pairs: at least one pair required");
        const int n = hamiltonian.graph.n_sites;
        for (auto [i, j] : pairs)
            require(i >= 0 && i < n && j >= 0 && j < n && i != j, "pairs: invalid pair");
        require(!b_grid.empty() && !phi_grid.empty(), "field_grid: empty grid");
        if (theta_grid) {
            require(!ensemble, "theta_grid: not applicable to ensemble sweeps");
            require(initial.kind == InitialKind::AllRotated ||
                        initial.kind == InitialKind::CenterRotated,
                    "theta_grid: requires a rotated initial kind");
            require(!theta_grid->empty(), "theta_grid: empty grid");
        }
        require(output.format == "csv" || output.format == "json",
                "output.format: must be \"csv\" or \"json\"");
    }
};

struct SweepRow {
    double B = 0, phi = 0, t = 0;
    long init_id = 0;  // basis index / flipped site / theta-grid index; -1 for ensemble rows
    int site_i = 0, site_j = 0;
    std::vector<double> values;  // matches SweepResult::columns
};

struct SweepResult {
    std::vector<std::string> columns;  // metric columns (after B,phi,t,init_id,site_i,site_j)
    std::vector<SweepRow> rows;
    nlohmann::ordered_json provenance;
};

inline StateVector make_initial(const InitialStateSpec& spec, int n_sites) {
    switch (spec.kind) {
        case InitialKind::BasisIndex:
            return basis_state(n_sites, spec.index);
        case InitialKind::AllRotated: {
            const Complex c = std::cos(spec.theta / 2.0), s = std::sin(spec.theta / 2.0);
            return product_state(std::vector<std::pair<Complex, Complex>>(n_sites, {c, s}));
        }
        case InitialKind::CenterRotated: {
            std::vector<std::pair<Complex, Complex>> locals(n_sites, {1.0, 0.0});
            locals[0] = {std::cos(spec.theta / 2.0), std::sin(spec.theta / 2.0)};
            return product_state(locals);
        }
        case InitialKind::SingleFlip: {
            require(spec.site >= 0 && spec.site < n_sites, "make_initial: flip site out of range");
            return basis_state(n_sites, 1L << (n_sites - 1 - spec.site));
        }
    }
    throw DomainError("make_initial: unknown kind");
}

namespace detail {

inline std::vector<double> evaluate_metrics(const StateVector& psi, const StateVector& psi0,
                                            int i, int j, const std::vector<Metric>& which) {
    std::vector<double> out;
    out.reserve(which.size());
    std::optional<std::array<double, 4>> lambdas;
    auto get_lambdas = [&]() -> const std::array<double, 4>& {
        if (!lambdas) lambdas = wootters_lambdas(partial_trace(psi, {i, j}));
        return *lambdas;
    };
    for (Metric m : which) {
        switch (m) {
            case Metric::OverlapAbs:
                out.push_back(std::abs(overlap(psi0, psi)));
                break;
            case Metric::Concurrence: {
                const auto& l = get_lambdas();
                out.push_back(std::max(0.0, l[0] - l[1] - l[2] - l[3]));
                break;
            }
            case Metric::CAssist: {
                const auto& l = get_lambdas();
                out.push_back(l[0] + l[1] + l[2] + l[3]);
                break;
            }
            case Metric::SqrtTangleI:
                out.push_back(std::sqrt(one_tangle(partial_trace(psi, {i}))));
                break;
            case Metric::SqrtTangleJ:
                out.push_back(std::sqrt(one_tangle(partial_trace(psi, {j}))));
                break;
            case Metric::Eof: {
                const auto& l = get_lambdas();
                out.push_back(entanglement_of_formation(std::max(0.0, l[0] - l[1] - l[2] - l[3])));
                break;
            }
            case Metric::CkwResidualI:
                out.push_back(ckw_residual(psi, i));
                break;
            case Metric::LeLowerBound:
                out.push_back(le_lower_bound(psi, i, j));
                break;
        }
    }
    return out;
}

inline std::string metric_name(Metric m) {
    for (const auto& [name, id] : metric_names())
        if (id == m) return name;
    return "?";
}

inline HamiltonianSpec with_field(HamiltonianSpec spec, double b, double phi) {
    spec.field = {b, phi};
    return spec;
}

}  // namespace detail

/// Time series of per-pair metrics for a single initial state (or a theta grid
/// of them). Rows are ordered by (B, phi, initial, t, pair).
inline SweepResult time_series(const SweepConfig& config) {
    config.validate();
    require(!config.ensemble, "time_series: single-initial config required");
    const auto metrics = config.selected_metrics();
    const int n = config.hamiltonian.graph.n_sites;

    SweepResult result;
    for (Metric m : metrics) result.columns.push_back(detail::metric_name(m));

    std::vector<std::pair<long, InitialStateSpec>> initials;
    if (config.theta_grid) {
        for (size_t k = 0; k < config.theta_grid->size(); ++k) {
            InitialStateSpec s = config.initial;
            s.theta = (*config.theta_grid)[k];
            initials.emplace_back(static_cast<long>(k), s);
        }
    } else {
        long id = config.initial.kind == InitialKind::BasisIndex ? config.initial.index
                  : config.initial.kind == InitialKind::SingleFlip ? config.initial.site
                                                                   : 0;
        initials.emplace_back(id, config.initial);
    }

    for (double b : config.b_grid) {
        for (double phi : config.phi_grid) {
            const Propagator prop =
                diagonalize(build_hamiltonian(detail::with_field(config.hamiltonian, b, phi)));
            for (const auto& [init_id, init_spec] : initials) {
                const StateVector psi0 = make_initial(init_spec, n);
                for (int k = 0; k < config.times.steps; ++k) {
                    const double t = config.times.at(k);
                    const StateVector psi = evolve(prop, psi0, t);
                    for (auto [i, j] : config.pairs) {
                        SweepRow row{b, phi, t, init_id, i, j,
                                     detail::evaluate_metrics(psi, psi0, i, j, metrics)};
                        result.rows.push_back(std::move(row));
                    }
                }
            }
        }
    }
    return result;
}

/// Mean and population standard deviation of each metric over all 2^N
/// computational-basis initial states, per (B, phi, t, pair).
inline SweepResult ensemble_stats(const SweepConfig& config) {
    config.validate();
    require(config.ensemble, "ensemble_stats: ensemble config required");
    const int n = config.hamiltonian.graph.n_sites;
    if (n > 12)
        throw NumericalError("ensemble_stats: resource limit exceeded (n_sites > 12)");
    const auto metrics = config.selected_metrics();
    const long n_states = dim_of(n);
    const size_t n_cells = static_cast<size_t>(config.times.steps) * config.pairs.size() *
                           metrics.size();

    SweepResult result;
    for (Metric m : metrics) {
        result.columns.push_back("mean_" + detail::metric_name(m));
        result.columns.push_back("std_" + detail::metric_name(m));
    }

    for (double b : config.b_grid) {
        for (double phi : config.phi_grid) {
            const Propagator prop =
                diagonalize(build_hamiltonian(detail::with_field(config.hamiltonian, b, phi)));
            std::vector<double> sum(n_cells, 0.0), sumsq(n_cells, 0.0);
            for (long m = 0; m < n_states; ++m) {
                const StateVector psi0 = basis_state(n, m);
                for (int k = 0; k < config.times.steps; ++k) {
                    const StateVector psi = evolve(prop, psi0, config.times.at(k));
                    for (size_t p = 0; p < config.pairs.size(); ++p) {
                        const auto [i, j] = config.pairs[p];
                        const auto vals =
                            detail::evaluate_metrics(psi, psi0, i, j, metrics);
                        const size_t base = (static_cast<size_t>(k) * config.pairs.size() + p) *
                                            metrics.size();
                        for (size_t q = 0; q < metrics.size(); ++q) {
                            sum[base + q] += vals[q];
                            sumsq[base + q] += vals[q] * vals[q];
                        }
                    }
                }
            }
            for (int k = 0; k < config.times.steps; ++k) {
                for (size_t p = 0; p < config.pairs.size(); ++p) {
                    const auto [i, j] = config.pairs[p];
                    SweepRow row{b, phi, config.times.at(k), -1, i, j, {}};
                    const size_t base =
                        (static_cast<size_t>(k) * config.pairs.size() + p) * metrics.size();
                    for (size_t q = 0; q < metrics.size(); ++q) {
                        const double mean = sum[base + q] / n_states;
                        double var = sumsq[base + q] / n_states - mean * mean;
                        if (var < 0.0) var = 0.0;  // roundoff
                        row.values.push_back(mean);
                        row.values.push_back(std::sqrt(var));
                    }
                    result.rows.push_back(std::move(row));
                }
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Config file handling (JSON) and result serialization.

namespace detail {

inline const nlohmann::json& at_key(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key)) throw DomainError("config: missing key `" + key + "`");
    return j.at(key);
}

inline Model parse_model(const std::string& s) {
    if (s == "ising") return Model::IsingXX;
    if (s == "xy") return Model::XY;
    if (s == "three_body") return Model::ThreeBodyXYX;
    throw DomainError("config: unknown `model` value \"" + s + "\"");
}

inline CouplingGraph parse_topology(const nlohmann::json& j, Model model) {
    const std::string topology = at_key(j, "topology").get<std::string>();
    if (topology == "ring") {
        const int n = at_key(j, "n_spins").get<int>();
        return model == Model::ThreeBodyXYX ? triple_ring(n) : ring_graph(n);
    }
    if (topology == "star") {
        require(model != Model::ThreeBodyXYX,
                "config: three_body model has no star topology");
        return star_graph(at_key(j, "n_outer").get<int>());
    }
    if (topology == "custom") {
        CouplingGraph g;
        g.n_sites = at_key(j, "n_spins").get<int>();
        if (model == Model::ThreeBodyXYX) {
            for (const auto& t : at_key(j, "triples")) {
                require(t.is_array() && t.size() == 3, "config: `triples` entries need 3 sites");
                g.triples.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
            }
        } else {
            for (const auto& e : at_key(j, "edges")) {
                require(e.is_array() && e.size() == 2, "config: `edges` entries need 2 sites");
                g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
        }
        g.validate();
        return g;
    }
    throw DomainError("config: unknown `topology` value \"" + topology + "\"");
}

inline InitialStateSpec parse_initial(const nlohmann::json& j) {
    InitialStateSpec spec;
    const std::string kind = at_key(j, "kind").get<std::string>();
    if (kind == "basis_index") {
        spec.kind = InitialKind::BasisIndex;
        spec.index = at_key(j, "index").get<long>();
    } else if (kind == "all_rotated") {
        spec.kind = InitialKind::AllRotated;
        spec.theta = j.value("theta", 0.0);
    } else if (kind == "center_rotated") {
        spec.kind = InitialKind::CenterRotated;
        spec.theta = j.value("theta", 0.0);
    } else if (kind == "single_flip") {
        spec.kind = InitialKind::SingleFlip;
        spec.site = at_key(j, "site").get<int>();
    } else {
        throw DomainError("config: unknown `initial.kind` value \"" + kind + "\"");
    }
    return spec;
}

}  // namespace detail

inline SweepConfig parse_config(const nlohmann::json& j) {
    SweepConfig config;
    config.hamiltonian.model = detail::parse_model(detail::at_key(j, "model").get<std::string>());
    config.hamiltonian.graph = detail::parse_topology(j, config.hamiltonian.model);

    if (j.contains("field_grid")) {
        const auto& g = j.at("field_grid");
        config.b_grid = detail::at_key(g, "B").get<std::vector<double>>();
        config.phi_grid = detail::at_key(g, "phi").get<std::vector<double>>();
    } else {
        FieldSpec f;
        if (j.contains("field")) {
            f.B = detail::at_key(j.at("field"), "B").get<double>();
            f.phi = detail::at_key(j.at("field"), "phi").get<double>();
        }
        config.b_grid = {f.B};
        config.phi_grid = {f.phi};
    }
    config.hamiltonian.field = {config.b_grid.front(), config.phi_grid.front()};

    const auto& init = detail::at_key(j, "initial");
    if (init.is_string() && init.get<std::string>() == "ensemble")
        config.ensemble = true;
    else if (init.is_object())
        config.initial = detail::parse_initial(init);
    else
        throw DomainError("config: `initial` must be \"ensemble\" or an object");

    const auto& times = detail::at_key(j, "times");
    config.times.start = detail::at_key(times, "start").get<double>();
    config.times.stop = detail::at_key(times, "stop").get<double>();
    config.times.steps = detail::at_key(times, "steps").get<int>();

    for (const auto& p : detail::at_key(j, "pairs")) {
        require(p.is_array() && p.size() == 2, "config: `pairs` entries need 2 sites");
        config.pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
    }

    if (j.contains("metrics")) {
        for (const auto& name : j.at("metrics")) {
            bool found = false;
            for (const auto& [known, id] : metric_names())
                if (name.get<std::string>() == known) {
                    config.metrics.push_back(id);
                    found = true;
                }
            if (!found)
                throw DomainError("config: unknown metric \"" + name.get<std::string>() + "\"");
        }
    }

    if (j.contains("theta_grid"))
        config.theta_grid = j.at("theta_grid").get<std::vector<double>>();

    const auto& out = detail::at_key(j, "output");
    config.output.path = detail::at_key(out, "path").get<std::string>();
    config.output.format = detail::at_key(out, "format").get<std::string>();

    config.seed = j.value("seed", std::uint64_t{0});
    config.validate();
    return config;
}

namespace detail {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace detail

inline std::string to_csv(const SweepResult& result) {
    std::ostringstream os;
    for (const auto& [key, value] : result.provenance.items())
        os << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
           << "\n";
    os << "B,phi,t,init_id,site_i,site_j";
    for (const auto& c : result.columns) os << "," << c;
    os << "\n";
    for (const auto& row : result.rows) {
        os << detail::format_double(row.B) << "," << detail::format_double(row.phi) << ","
           << detail::format_double(row.t) << "," << row.init_id << "," << row.site_i << ","
           << row.site_j;
        for (double v : row.values) os << "," << detail::format_double(v);
        os << "\n";
    }
    return os.str();
}

inline std::string to_json_text(const SweepResult& result) {
    nlohmann::ordered_json j;
    j["provenance"] = result.provenance;
    nlohmann::ordered_json cols = {"B", "phi", "t", "init_id", "site_i", "site_j"};
    for (const auto& c : result.columns) cols.push_back(c);
    j["columns"] = std::move(cols);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : result.rows) {
        auto r = nlohmann::ordered_json::array();
        r.push_back(row.B);
        r.push_back(row.phi);
        r.push_back(row.t);
        r.push_back(row.init_id);
        r.push_back(row.site_i);
        r.push_back(row.site_j);
        for (double v : row.values) r.push_back(v);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

/// Parse a config file, run the sweep it describes, and write the result.
/// Identical config (and seed) yields byte-identical output.
inline SweepResult run_config_json(const nlohmann::json& j) {
    const SweepConfig config = parse_config(j);
    SweepResult result = config.ensemble ? ensemble_stats(config) : time_series(config);
    result.provenance["tool"] = std::string("spintangle ") + kVersion;
    result.provenance["seed"] = config.seed;
    result.provenance["config"] = j;
    return result;
}

inline SweepResult run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("run_config: cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("run_config: config parse error: ") + e.what());
    }
    SweepResult result = run_config_json(j);
    const SweepConfig config = parse_config(j);
    const std::string text =
        config.output.format == "csv" ? to_csv(result) : to_json_text(result);
    std::ofstream out(config.output.path, std::ios::binary);
    if (!out) throw DomainError("run_config: cannot open output file " + config.output.path);
    out << text;
    return result;
}

/// Bundled configs reproducing the data behind the library's reference figures.
inline std::string figure_config(const std::string& name) {
    using nlohmann::ordered_json;
    auto times = [](double start, double stop, int steps) {
        return ordered_json{{"start", start}, {"stop", stop}, {"steps", steps}};
    };
    auto linspace = [](double a, double b, int n) {
        std::vector<double> v(n);
        for (int k = 0; k < n; ++k) v[k] = a + (b - a) * k / (n - 1);
        return v;
    };
    const double pi = std::numbers::pi;
    ordered_json j;
    if (name == "fig1") {
        // Entanglement oscillations of a 5-ring under zero-field Ising coupling.
        j = {{"model", "ising"},
             {"topology", "ring"},
             {"n_spins", 5},
             {"field", {{"B", 0.0}, {"phi", 0.0}}},
             {"initial", {{"kind", "basis_index"}, {"index", 0}}},
             {"times", times(0.0, pi / 2.0, 600)},
             {"pairs", {{0, 1}}},
             {"metrics", {"overlap_abs", "concurrence", "c_assist", "sqrt_tangle_i"}},
             {"output", {{"path", "fig1.csv"}, {"format", "csv"}}},
             {"seed", 1}};
    } else if (name == "fig2") {
        // XY star 6+1, central spin flipped down; center-outer and outer-outer pairs.
        j = {{"model", "xy"},
             {"topology", "star"},
             {"n_outer", 6},
             {"field", {{"B", 0.0}, {"phi", 0.0}}},
             {"initial", {{"kind", "single_flip"}, {"site", 0}}},
             {"times", times(0.0, 2.0, 600)},
             {"pairs", {{0, 1}, {1, 2}}},
             {"metrics", {"concurrence", "sqrt_tangle_i", "sqrt_tangle_j"}},
             {"output", {{"path", "fig2.csv"}, {"format", "csv"}}},
             {"seed", 1}};
    } else if (name == "fig3") {
        // XY star 6+1, all spins rotated by theta; outer pair versus theta and t.
        j = {{"model", "xy"},
             {"topology", "star"},
             {"n_outer", 6},
             {"field", {{"B", 0.0}, {"phi", 0.0}}},
             {"initial", {{"kind", "all_rotated"}}},
             {"theta_grid", linspace(0.0, 2.0 * pi, 60)},
             {"times", times(0.0, 2.0, 200)},
             {"pairs", {{1, 2}}},
             {"metrics", {"concurrence", "c_assist", "sqrt_tangle_i"}},
             {"output", {{"path", "fig3.csv"}, {"format", "csv"}}},
             {"seed", 1}};
    } else if (name == "fig4") {
        // Ising star 6+1, central spin rotated by theta.
        j = {{"model", "ising"},
             {"topology", "star"},
             {"n_outer", 6},
             {"field", {{"B", 0.0}, {"phi", 0.0}}},
             {"initial", {{"kind", "center_rotated"}}},
             {"theta_grid", linspace(0.0, 2.0 * pi, 60)},
             {"times", times(0.0, pi, 200)},
             {"pairs", {{1, 2}, {0, 1}}},
             {"metrics", {"concurrence", "c_assist", "sqrt_tangle_i"}},
             {"output", {{"path", "fig4.csv"}, {"format", "csv"}}},
             {"seed", 1}};
    } else if (name == "fig5") {
        // Three-body coupling ring of 6, all spins up initially.
        j = {{"model", "three_body"},
             {"topology", "ring"},
             {"n_spins", 6},
             {"initial", {{"kind", "basis_index"}, {"index", 0}}},
             {"times", times(0.0, pi, 600)},
             {"pairs", {{0, 1}}},
             {"metrics", {"c_assist", "sqrt_tangle_i"}},
             {"output", {{"path", "fig5.csv"}, {"format", "csv"}}},
             {"seed", 1}};
    } else if (name == "fig6") {
        // Ising star 4+1 with field, basis-ensemble statistics over B at phi = 0.
        j = {{"model", "ising"},
             {"topology", "star"},
             {"n_outer", 4},
             {"field_grid", {{"B", linspace(0.0, 2.0, 9)}, {"phi", {0.0}}}},
             {"initial", "ensemble"},
             {"times", times(0.0, 10.0, 200)},
             {"pairs", {{1, 2}}},
             {"metrics", {"c_assist"}},
             {"output", {{"path", "fig6.csv"}, {"format", "csv"}}},
             {"seed", 1}};
    } else if (name == "fig7") {
        // XY star 4+1 with field B = 1, ensemble statistics over the tilt angle.
        j = {{"model", "xy"},
             {"topology", "star"},
             {"n_outer", 4},
             {"field_grid", {{"B", {1.0}}, {"phi", linspace(0.0, pi / 2.0, 9)}}},
             {"initial", "ensemble"},
             {"times", times(0.0, 10.0, 200)},
             {"pairs", {{1, 2}}},
             {"metrics", {"concurrence", "c_assist"}},
             {"output", {{"path", "fig7.csv"}, {"format", "csv"}}},
             {"seed", 1}};
    } else {
        throw DomainError("figure_config: unknown figure \"" + name +
                          "\" (expected fig1..fig7)");
    }
    return j.dump(2) + "\n";
}

}  // namespace spintangle
