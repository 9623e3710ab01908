#pragma once

// Scenario configuration: a flat key=value file plus command-line overrides.
// Keys (defaults in parentheses):
//   kind            gaussian | two_gaussian | plane_wave | pauli_ck  (gaussian)
//   grid_n (256), grid_length (40), grid_center (0)
//   mass (1), derivative spectral|fd (spectral), node_threshold (1e-12)
//   gaussian:     x0 (0), p0 (2), sigma (1)
//   two_gaussian: x0a (-2), x0b (2), p0a (1), p0b (-1), sigma (0.8), rel_phase (0.7)
//   plane_wave:   mode_index (3)
//   pauli_ck:     envelope_sigma (1), p0 (0), theta0 (pi/3), theta_slope (0),
//                 phi0 (0.3), phi_slope (0.8)
// Lines starting with '#' are comments.

#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tpa/states.hpp"

namespace tpa {

struct Scenario {
    enum class Kind { gaussian, two_gaussian, plane_wave, pauli_ck };

    Kind kind = Kind::gaussian;
    std::size_t grid_n = 256;
    double grid_length = 40.0;
    double grid_center = 0.0;
    double mass = 1.0;
    DerivativeMode derivative = DerivativeMode::spectral;
    double node_threshold = 1e-12;

    double x0 = 0.0, p0 = 2.0, sigma = 1.0;
    double x0a = -2.0, x0b = 2.0, p0a = 1.0, p0b = -1.0, two_sigma = 0.8, rel_phase = 0.7;
    long mode_index = 3;
    double envelope_sigma = 1.0, ck_p0 = 0.0, theta0 = pi / 3.0, theta_slope = 0.0;
    double phi0 = 0.3, phi_slope = 0.8;

    std::string name;

    Grid grid() const { return build_grid(grid_n, grid_length, grid_center); }
    bool is_pauli() const { return kind == Kind::pauli_ck; }
    /// True when the state decays at the domain boundary, so that the position
    /// operator is well defined on the periodic grid.
    bool decaying() const { return kind != Kind::plane_wave; }
};

inline const char* kind_name(Scenario::Kind k) {
    switch (k) {
        case Scenario::Kind::gaussian: return "gaussian";
        case Scenario::Kind::two_gaussian: return "two_gaussian";
        case Scenario::Kind::plane_wave: return "plane_wave";
        case Scenario::Kind::pauli_ck: return "pauli_ck";
    }
    return "?";
}

namespace detail {

inline double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double d = 0.0;
    try {
        d = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("scenario: bad numeric value for " + key + ": '" + value + "'");
    }
    if (pos != value.size())
        throw std::invalid_argument("scenario: trailing characters in value for " + key);
    return d;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace detail

inline void scenario_set(Scenario& sc, const std::string& key, const std::string& value) {
    auto num = [&]() { return detail::parse_double(key, value); };
    if (key == "kind") {
        if (value == "gaussian") sc.kind = Scenario::Kind::gaussian;
        else if (value == "two_gaussian") sc.kind = Scenario::Kind::two_gaussian;
        else if (value == "plane_wave") sc.kind = Scenario::Kind::plane_wave;
        else if (value == "pauli_ck") sc.kind = Scenario::Kind::pauli_ck;
        else throw std::invalid_argument("scenario: unknown kind '" + value + "'");
    } else if (key == "grid_n") {
        const double d = num();
        if (d < 1.0 || d != std::floor(d)) throw std::invalid_argument("scenario: grid_n must be a positive integer");
        sc.grid_n = static_cast<std::size_t>(d);
    } else if (key == "grid_length") sc.grid_length = num();
    else if (key == "grid_center") sc.grid_center = num();
    else if (key == "mass") {
        sc.mass = num();
        if (!(sc.mass > 0.0)) throw std::invalid_argument("scenario: mass must be positive");
    } else if (key == "derivative") {
        if (value == "spectral") sc.derivative = DerivativeMode::spectral;
        else if (value == "fd" || value == "fd4") sc.derivative = DerivativeMode::fd4;
        else if (value == "fd2") sc.derivative = DerivativeMode::fd2;
        else throw std::invalid_argument("scenario: derivative must be spectral or fd");
    } else if (key == "node_threshold") {
        sc.node_threshold = num();
        if (!(sc.node_threshold > 0.0 && sc.node_threshold < 1.0))
            throw std::invalid_argument("scenario: node_threshold must be in (0,1)");
    } else if (key == "x0") sc.x0 = num();
    else if (key == "p0") { sc.p0 = num(); sc.ck_p0 = sc.p0; }
    else if (key == "sigma") { sc.sigma = num(); sc.two_sigma = sc.sigma; }
    else if (key == "x0a") sc.x0a = num();
    else if (key == "x0b") sc.x0b = num();
    else if (key == "p0a") sc.p0a = num();
    else if (key == "p0b") sc.p0b = num();
    else if (key == "rel_phase") sc.rel_phase = num();
    else if (key == "mode_index") sc.mode_index = static_cast<long>(num());
    else if (key == "envelope_sigma") sc.envelope_sigma = num();
    else if (key == "theta0") sc.theta0 = num();
    else if (key == "theta_slope") sc.theta_slope = num();
    else if (key == "phi0") sc.phi0 = num();
    else if (key == "phi_slope") sc.phi_slope = num();
    else if (key == "name") sc.name = value;
    else throw std::invalid_argument("scenario: unknown key '" + key + "'");
}

inline Scenario parse_scenario(std::istream& in, Scenario sc = {}) {
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("scenario: expected key=value, got '" + t + "'");
        scenario_set(sc, detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
    }
    return sc;
}

inline GridField build_scalar_state(const Scenario& sc) {
    const Grid g = sc.grid();
    switch (sc.kind) {
        case Scenario::Kind::gaussian:
            return gaussian_packet(g, sc.x0, sc.p0, sc.sigma);
        case Scenario::Kind::two_gaussian:
            return two_gaussian(g, sc.x0a, sc.x0b, sc.p0a, sc.p0b, sc.two_sigma, sc.rel_phase);
        case Scenario::Kind::plane_wave:
            return plane_wave(g, sc.mode_index);
        case Scenario::Kind::pauli_ck:
            break;
    }
    throw std::invalid_argument("build_scalar_state: scenario is not a scalar state");
}

inline SpinorField build_spinor_state(const Scenario& sc) {
    if (!sc.is_pauli()) throw std::invalid_argument("build_spinor_state: scenario is not pauli_ck");
    return pauli_ck_state(sc.grid(), sc.envelope_sigma, sc.ck_p0, sc.theta0, sc.theta_slope,
                          sc.phi0, sc.phi_slope);
}

inline std::string scenario_label(const Scenario& sc) {
    if (!sc.name.empty()) return sc.name;
    std::ostringstream os;
    os << kind_name(sc.kind);
    switch (sc.kind) {
        case Scenario::Kind::gaussian: os << "(" << sc.x0 << "," << sc.p0 << "," << sc.sigma << ")"; break;
        case Scenario::Kind::two_gaussian: os << "(" << sc.x0a << "," << sc.x0b << ")"; break;
        case Scenario::Kind::plane_wave: os << "(" << sc.mode_index << ")"; break;
        case Scenario::Kind::pauli_ck:
            os << "(theta0=" << sc.theta0 << ",phi_slope=" << sc.phi_slope << ")";
            break;
    }
    return os.str();
}

/// Scenario description for output metadata.
inline std::map<std::string, std::string> scenario_meta(const Scenario& sc) {
    std::map<std::string, std::string> m;
    auto put = [&](const std::string& k, double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        m[k] = os.str();
    };
    m["kind"] = kind_name(sc.kind);
    m["scenario"] = scenario_label(sc);
    put("grid_n", static_cast<double>(sc.grid_n));
    put("grid_length", sc.grid_length);
    put("grid_center", sc.grid_center);
    put("mass", sc.mass);
    put("node_threshold", sc.node_threshold);
    m["derivative"] = (sc.derivative == DerivativeMode::spectral)
                          ? "spectral"
                          : (sc.derivative == DerivativeMode::fd4 ? "fd4" : "fd2");
    switch (sc.kind) {
        case Scenario::Kind::gaussian:
            put("x0", sc.x0); put("p0", sc.p0); put("sigma", sc.sigma);
            break;
        case Scenario::Kind::two_gaussian:
            put("x0a", sc.x0a); put("x0b", sc.x0b); put("p0a", sc.p0a); put("p0b", sc.p0b);
            put("sigma", sc.two_sigma); put("rel_phase", sc.rel_phase);
            break;
        case Scenario::Kind::plane_wave:
            put("mode_index", static_cast<double>(sc.mode_index));
            break;
        case Scenario::Kind::pauli_ck:
            put("envelope_sigma", sc.envelope_sigma); put("p0", sc.ck_p0);
            put("theta0", sc.theta0); put("theta_slope", sc.theta_slope);
            put("phi0", sc.phi0); put("phi_slope", sc.phi_slope);
            break;
    }
    // numeric conventions, echoed for auditability
    m["fourier_forward_kernel"] = "exp(-i p x)/sqrt(2 pi)";
    m["wigner_normalization"] = "1/(2 pi)";
    m["mass_convention"] = "kinetic marginals and quantum potential use mass 1/2";
    m["hbar"] = "1";
    return m;
}

} // namespace tpa
