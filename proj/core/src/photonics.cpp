#include "qmh/photonics.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qmh::photonics {

double ModeState::weight() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

ModeState ModeState::single_photon(std::size_t n_modes, std::size_t mode) {
    if (mode >= n_modes) throw std::out_of_range("single_photon: mode index out of range");
    ModeState s;
    s.amps.assign(n_modes, cxd{});
    s.amps[mode] = 1.0;
    return s;
}

OpticalElement tritter() { return {ElementKind::Tritter, {0, 1, 2}, 0.0}; }

OpticalElement beamsplitter(int mode_a, int mode_b, double reflectivity) {
    if (reflectivity < 0.0 || reflectivity > 1.0)
        throw std::invalid_argument("beamsplitter: reflectivity outside [0,1]");
    return {ElementKind::Beamsplitter, {mode_a, mode_b}, reflectivity};
}

OpticalElement loss_port(int mode, int dump_mode) {
    return {ElementKind::LossPort, {mode, dump_mode}, 0.0};
}

OpticalElement phase_shift(int mode, double angle) {
    return {ElementKind::Phase, {mode}, angle};
}

namespace {

void check_modes(const OpticalElement& e, int total, std::size_t expected) {
    if (e.modes.size() != expected)
        throw std::invalid_argument("optical element: wrong mode count");
    for (int m : e.modes)
        if (m < 0 || m >= total) throw std::out_of_range("optical element: mode index out of range");
}

Operator element_unitary(const OpticalElement& e, int total) {
    Operator u = Operator::identity(total);
    switch (e.kind) {
        case ElementKind::Tritter: {
            check_modes(e, total, 3);
            const cxd omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
            const double norm = 1.0 / std::sqrt(3.0);
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    u.at(e.modes[j], e.modes[k]) = norm * std::pow(omega, j * k);
            break;
        }
        case ElementKind::Beamsplitter: {
            check_modes(e, total, 2);
            const double t = std::sqrt(1.0 - e.param), r = std::sqrt(e.param);
            u.at(e.modes[0], e.modes[0]) = t;
            u.at(e.modes[0], e.modes[1]) = r;
            u.at(e.modes[1], e.modes[0]) = r;
            u.at(e.modes[1], e.modes[1]) = -t;
            break;
        }
        case ElementKind::LossPort: {
            check_modes(e, total, 2);
            u.at(e.modes[0], e.modes[0]) = 0.0;
            u.at(e.modes[1], e.modes[1]) = 0.0;
            u.at(e.modes[0], e.modes[1]) = 1.0;
            u.at(e.modes[1], e.modes[0]) = 1.0;
            break;
        }
        case ElementKind::Phase: {
            check_modes(e, total, 1);
            u.at(e.modes[0], e.modes[0]) = std::polar(1.0, e.param);
            break;
        }
    }
    return u;
}

}  // namespace

Operator circuit_unitary(const OpticalCircuit& circuit) {
    Operator u = Operator::identity(circuit.total_modes());
    for (const auto& e : circuit.elements) u = element_unitary(e, circuit.total_modes()) * u;
    return u;
}

RunResult run_circuit(const OpticalCircuit& circuit, const ModeState& input) {
    const int total = circuit.total_modes();
    if (static_cast<int>(input.n_modes()) != circuit.n_signal_modes &&
        static_cast<int>(input.n_modes()) != total)
        throw std::invalid_argument("run_circuit: input mode count mismatch");

    Ket in(total);
    for (std::size_t i = 0; i < input.n_modes(); ++i) in[i] = input.amps[i];
    const Ket out = qlinalg::apply(circuit_unitary(circuit), in);

    std::vector<bool> blocked(total, false);
    for (int m : circuit.postselect_empty) {
        if (m < 0 || m >= total) throw std::out_of_range("run_circuit: postselect mode out of range");
        blocked[m] = true;
    }

    double prob = 0.0;
    ModeState conditional;
    conditional.amps.assign(circuit.n_signal_modes, cxd{});
    for (int m = 0; m < total; ++m) {
        if (blocked[m]) continue;
        if (circuit.filter_mode >= 0 && m != circuit.filter_mode) continue;
        prob += std::norm(out[m]);
        if (m < circuit.n_signal_modes) conditional.amps[m] = out[m];
    }

    RunResult res{prob, std::nullopt};
    if (prob >= 1e-15) {
        const double scale = 1.0 / std::sqrt(prob);
        for (auto& a : conditional.amps) a *= scale;
        res.conditional_state = std::move(conditional);
    }
    return res;
}

OpticalCircuit design_discard_circuit() {
    OpticalCircuit c;
    c.n_signal_modes = 3;
    c.n_ancilla_modes = 3;  // 3 = B dump, 4 = A attenuation, 5 = C attenuation
    c.elements = {loss_port(1, 3), beamsplitter(0, 4, 0.5), beamsplitter(2, 5, 0.5)};
    c.postselect_empty = {3, 4, 5};
    return c;
}

Operator effective_kraus(const OpticalCircuit& circuit) {
    const int n = circuit.n_signal_modes;
    const Operator u = circuit_unitary(circuit);
    std::vector<bool> blocked(circuit.total_modes(), false);
    for (int m : circuit.postselect_empty) blocked[m] = true;

    Operator k(n);
    for (int j = 0; j < n; ++j)
        for (int r = 0; r < n; ++r) {
            if (blocked[r]) continue;
            if (circuit.filter_mode >= 0 && r != circuit.filter_mode) continue;
            k.at(r, j) = u.at(r, j);
        }
    return k;
}

Ket phase_aligned(const Ket& v) {
    std::size_t imax = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            imax = i;
        }
    if (best == 0.0) return v;
    const cxd rot = std::conj(v[imax]) / best;
    Ket out(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) out[i] = rot * v[i];
    return out;
}

OpticalCircuit parse_circuit(std::istream& in) {
    OpticalCircuit c;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("circuit line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string word;
        if (!(ss >> word)) continue;
        if (word == "signal") {
            if (!(ss >> c.n_signal_modes) || c.n_signal_modes <= 0) fail("expected: signal N");
        } else if (word == "ancilla") {
            if (!(ss >> c.n_ancilla_modes) || c.n_ancilla_modes < 0) fail("expected: ancilla N");
        } else if (word == "tritter") {
            OpticalElement e{ElementKind::Tritter, {0, 0, 0}, 0.0};
            if (!(ss >> e.modes[0] >> e.modes[1] >> e.modes[2])) fail("expected: tritter a b c");
            c.elements.push_back(e);
        } else if (word == "beamsplitter") {
            int a = 0, b = 0;
            double r = 0.0;
            if (!(ss >> a >> b >> r)) fail("expected: beamsplitter i j R");
            if (r < 0.0 || r > 1.0) fail("reflectivity outside [0,1]");
            c.elements.push_back(beamsplitter(a, b, r));
        } else if (word == "loss") {
            int a = 0, b = 0;
            if (!(ss >> a >> b)) fail("expected: loss i j");
            c.elements.push_back(loss_port(a, b));
        } else if (word == "phase") {
            int m = 0;
            double theta = 0.0;
            if (!(ss >> m >> theta)) fail("expected: phase i theta");
            c.elements.push_back(phase_shift(m, theta));
        } else if (word == "postselect_empty") {
            int m = 0;
            while (ss >> m) c.postselect_empty.push_back(m);
        } else if (word == "filter_mode") {
            if (!(ss >> c.filter_mode)) fail("expected: filter_mode i");
        } else {
            fail("unknown directive '" + word + "'");
        }
    }
    if (c.n_signal_modes <= 0) throw std::invalid_argument("circuit: missing 'signal N' directive");
    // validate all references now so run time never sees an out-of-range mode
    for (const auto& e : c.elements)
        for (int m : e.modes)
            if (m < 0 || m >= c.total_modes())
                throw std::invalid_argument("circuit: element mode index out of range");
    for (int m : c.postselect_empty)
        if (m < 0 || m >= c.total_modes())
            throw std::invalid_argument("circuit: postselect mode index out of range");
    if (c.filter_mode >= c.total_modes())
        throw std::invalid_argument("circuit: filter mode index out of range");
    return c;
}

OpticalCircuit parse_circuit_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open circuit file: " + path);
    return parse_circuit(f);
}

}  // namespace qmh::photonics
