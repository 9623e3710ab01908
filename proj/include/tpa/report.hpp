#pragma once

// Scenario runners and file emission.  CSV carries one header row, data rows,
// and '#'-prefixed key=value footer lines for metadata; JSON carries
// {"meta": {...}, "columns": [...], "rows": [[...], ...]}.  Floats are always
// written with 17 significant digits so emitted files reproduce the doubles
// exactly.  Both formats round-trip through the parsers below.

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tpa/scenario.hpp"
#include "tpa/weak_values.hpp"
#include "tpa/wigner.hpp"

namespace tpa {

struct DataTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> meta;
};

inline std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// scenario runners

/// Bohm analysis table: one row per valid grid point, with both momentum
/// routes and their deviation reported per point.
inline DataTable run_bohm(const Scenario& sc) {
    if (sc.is_pauli()) throw std::invalid_argument("run_bohm: use run_pauli for spinor scenarios");
    const GridField psi = build_scalar_state(sc);
    const Grid g = psi.grid;
    const PolarField pol = polar_decompose(psi, sc.node_threshold);
    const BohmRecord rec = bohm_record(psi, sc.derivative, sc.node_threshold);
    const WignerTable w = wigner(psi);
    const MaskedField pb_moyal = bohm_momentum_moyal(w);
    const MaskedField kin_baker = kinetic_baker(w);
    const MaskedField wiseman = sc.decaying()
        ? wiseman_velocity(psi, sc.mass, std::vector<double>(g.n, 0.0), sc.derivative, sc.node_threshold)
        : MaskedField{std::vector<double>(g.n, 0.0), std::vector<bool>(g.n, false)};

    DataTable t;
    t.columns = {"x", "rho", "S", "p_bohm_weak", "p_bohm_moyal", "osmotic", "quantum_potential",
                 "kinetic_baker", "wiseman_velocity", "dev_p_routes", "dev_wiseman"};
    // quantities undefined at a point (e.g. the table-moment route below its
    // density floor) are emitted as NaN, never as a fabricated number
    const double undef = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < g.n; ++k) {
        if (!rec.valid[k]) continue;
        const double pb = rec.bohm_momentum.values[k];
        const double pbm = pb_moyal.valid[k] ? pb_moyal.values[k] : undef;
        const double wk = wiseman.valid[k] ? wiseman.values[k] : undef;
        t.rows.push_back({g.x(k), pol.density[k], pol.phase[k], pb, pbm,
                          rec.osmotic_momentum.values[k], rec.quantum_potential.values[k],
                          kin_baker.valid[k] ? kin_baker.values[k] : undef, wk,
                          pb_moyal.valid[k] ? std::abs(pb - pbm) : undef,
                          wiseman.valid[k] ? std::abs(wk - pb / sc.mass) : undef});
    }
    t.meta = scenario_meta(sc);
    return t;
}

/// Wigner table as (x, p, value) triples; marginal residuals go to the footer.
inline DataTable run_wigner(const Scenario& sc) {
    if (sc.is_pauli()) throw std::invalid_argument("run_wigner: use run_pauli for spinor scenarios");
    const GridField psi = build_scalar_state(sc);
    const Grid g = psi.grid;
    const WignerTable w = wigner(psi);
    DataTable t;
    t.columns = {"x", "p", "value"};
    t.rows.reserve(g.n * g.n);
    for (std::size_t k = 0; k < g.n; ++k)
        for (std::size_t i = 0; i < g.n; ++i)
            t.rows.push_back({g.x(k), g.p(i), w.at(k, i).real()});
    t.meta = scenario_meta(sc);

    const auto mp = marginal_p(w);
    const auto mx = marginal_x(w);
    const GridField phi = to_momentum(psi);
    double dev_p = 0.0, dev_x = 0.0, total = 0.0;
    for (std::size_t k = 0; k < g.n; ++k) {
        dev_p = std::max(dev_p, std::abs(mp[k] - std::norm(psi.values[k])));
        dev_x = std::max(dev_x, std::abs(mx[k] - std::norm(phi.values[k])));
        total += mp[k];
    }
    t.meta["marginal_p_max_dev"] = format17(dev_p);
    t.meta["marginal_x_max_dev"] = format17(dev_x);
    t.meta["total_integral"] = format17(total * g.dx());
    t.meta["imag_residue"] = format17(w.imag_residue);
    return t;
}

/// Pauli analysis table with the three momentum routes and the energy identity.
inline DataTable run_pauli(const Scenario& sc) {
    if (!sc.is_pauli()) throw std::invalid_argument("run_pauli: scenario is not pauli_ck");
    const SpinorField s = build_spinor_state(sc);
    const Grid g = s.c1.grid;
    const auto rho = spinor_density(s);
    const PauliBohm pb = bohm_momentum_pauli(s, sc.node_threshold);
    const CayleyKleinFields ck = cayley_klein_decompose(s, sc.node_threshold);
    const MaskedField bst = bst_momentum(ck);
    const MaskedField q = pauli_quantum_potential(ck);
    const PauliKinetic kin = pauli_kinetic(s, sc.node_threshold);

    DataTable t;
    t.columns = {"x", "rho", "theta", "p_bohm_components", "p_bohm_bst", "quantum_potential",
                 "kinetic_density", "dev_bst", "dev_energy"};
    const double undef = std::numeric_limits<double>::quiet_NaN();
    const double floor = default_density_floor * max_abs(rho);
    for (std::size_t k = 0; k < g.n; ++k) {
        if (!(pb.momentum.valid[k] && rho[k] > floor)) continue;
        const double pbv = pb.momentum.values[k];
        const double bstv = bst.valid[k] ? bst.values[k] : undef;
        const double qv = q.valid[k] ? q.values[k] : undef;
        const double kinv = kin.valid[k] ? kin.density[k] : undef;
        const bool energy_ok = kin.valid[k] && q.valid[k] && bst.valid[k];
        t.rows.push_back({g.x(k), rho[k], ck.theta[k], pbv, bstv, qv, kinv,
                          bst.valid[k] ? std::abs(pbv - bstv) : undef,
                          energy_ok ? std::abs(kinv / rho[k] - (bstv * bstv + qv)) : undef});
    }
    t.meta = scenario_meta(sc);
    t.meta["route_deviation_moment"] = format17(pb.route_deviation);
    t.meta["bracket_deviation"] = format17(kin.bracket_deviation);
    return t;
}

/// Single weak-value query <post|op|psi>/<post|psi>.
inline DataTable run_weak(const Scenario& sc, const Operator& op, const Scenario& post_sc) {
    const GridField psi = build_scalar_state(sc);
    Scenario post_on_grid = post_sc;
    post_on_grid.grid_n = sc.grid_n;
    post_on_grid.grid_length = sc.grid_length;
    post_on_grid.grid_center = sc.grid_center;
    const GridField post = build_scalar_state(post_on_grid);
    const cdouble wv = weak_value(op, post, psi);
    DataTable t;
    t.columns = {"re", "im"};
    t.rows.push_back({wv.real(), wv.imag()});
    t.meta = scenario_meta(sc);
    t.meta["post_scenario"] = scenario_label(post_on_grid);
    return t;
}

// ---------------------------------------------------------------------------
// CSV

inline void write_csv(const DataTable& t, std::ostream& os) {
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << t.columns[c];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format17(row[c]);
        os << "\n";
    }
    for (const auto& [k, v] : t.meta) os << "# " << k << "=" << v << "\n";
}

inline DataTable parse_csv(std::istream& is) {
    DataTable t;
    std::string line;
    bool header_done = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string kv = detail::trim(line.substr(1));
            const auto eq = kv.find('=');
            if (eq != std::string::npos)
                t.meta[detail::trim(kv.substr(0, eq))] = detail::trim(kv.substr(eq + 1));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!header_done) {
            t.columns = cells;
            header_done = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(std::stod(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// JSON (written by hand to keep the 17-digit float format; parsed with nlohmann)

inline void write_json(const DataTable& t, std::ostream& os) {
    auto escape = [](const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') { out.push_back('\\'); out.push_back(c); }
            else out.push_back(c);
        }
        return out;
    };
    os << "{\n  \"meta\": {";
    bool first = true;
    for (const auto& [k, v] : t.meta) {
        os << (first ? "" : ",") << "\n    \"" << escape(k) << "\": \"" << escape(v) << "\"";
        first = false;
    }
    os << "\n  },\n  \"columns\": [";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? ", " : "") << "\"" << escape(t.columns[c]) << "\"";
    os << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << (r ? ",\n    " : "\n    ") << "[";
        for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
            os << (c ? ", " : "");
            if (std::isnan(t.rows[r][c])) os << "null"; // NaN has no JSON literal
            else os << format17(t.rows[r][c]);
        }
        os << "]";
    }
    os << "\n  ]\n}\n";
}

inline DataTable parse_json(std::istream& is) {
    nlohmann::json j;
    is >> j;
    DataTable t;
    for (const auto& [k, v] : j.at("meta").items()) t.meta[k] = v.get<std::string>();
    for (const auto& c : j.at("columns")) t.columns.push_back(c.get<std::string>());
    for (const auto& row : j.at("rows")) {
        std::vector<double> r;
        for (const auto& v : row)
            r.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
        t.rows.push_back(std::move(r));
    }
    return t;
}

inline std::string table_to_string(const DataTable& t, const std::string& format) {
    std::ostringstream os;
    if (format == "csv") write_csv(t, os);
    else if (format == "json") write_json(t, os);
    else throw std::invalid_argument("unknown output format '" + format + "'");
    return os.str();
}

} // namespace tpa
