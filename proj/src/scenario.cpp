// Copyright 2026 The qihe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qihe/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qihe/oracle.hpp"

namespace qihe {

namespace {

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ScenarioError("scenario: cannot parse " + what + " '" + text + "' as a number");
    }
}

int parse_int(const std::string& text, const std::string& what) {
    try {
        size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ScenarioError("scenario: cannot parse " + what + " '" + text + "' as an integer");
    }
}

// "|10>" or "|10⟩" -> "10"; empty optional when not a ket.
std::optional<std::string> ket_label(const std::string& name) {
    if (!starts_with(name, "|")) return std::nullopt;
    std::string body = name.substr(1);
    if (ends_with(body, ">"))
        body.pop_back();
    else if (ends_with(body, "⟩"))
        body.resize(body.size() - std::string("⟩").size());
    else
        return std::nullopt;
    if (body.empty()) return std::nullopt;
    return body;
}

std::optional<int> trailing_digits(const std::string& s) {
    size_t k = s.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
    if (k == s.size()) return std::nullopt;
    return std::stoi(s.substr(k));
}

HilbertSpace space_for_dim(int dim, const HilbertSpace& preferred) {
    if (dim == preferred.dim()) return preferred;
    if (dim > 1 && (dim & (dim - 1)) == 0)
        return HilbertSpace::distinguishable(static_cast<int>(std::lround(std::log2(dim))));
    return HilbertSpace::qudit(dim);
}

DensityMatrix werner(double p) {
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const ComplexMatrix m = (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0 + p * phi * phi.adjoint();
    return DensityMatrix(HilbertSpace::distinguishable(2), m);
}

} // namespace

Statistics parse_statistics(const std::string& s) {
    if (s == "distinguishable") return Statistics::distinguishable;
    if (s == "boson" || s == "bosonic") return Statistics::boson;
    if (s == "fermion" || s == "fermionic") return Statistics::fermion;
    throw ScenarioError("scenario: statistics must be one of distinguishable, boson, fermion (got '" + s + "')");
}

WorkMode parse_mode(const std::string& s) {
    if (s == "swap") return WorkMode::swap;
    if (s == "feedback") return WorkMode::feedback;
    throw ScenarioError("scenario: mode must be swap or feedback (got '" + s + "')");
}

int scenario_particles(const Scenario& sc) {
    if (sc.n) return *sc.n;
    if (sc.control_set)
        if (auto d = trailing_digits(*sc.control_set)) return *d;
    if (sc.state_name && sc.statistics == Statistics::distinguishable)
        if (auto k = ket_label(*sc.state_name)) return static_cast<int>(k->size());
    return 2;
}

HilbertSpace scenario_space(const Scenario& sc) {
    const int n = scenario_particles(sc);
    switch (sc.statistics) {
    case Statistics::distinguishable:
        return HilbertSpace::distinguishable(n);
    case Statistics::boson:
        return HilbertSpace::boson(n);
    case Statistics::fermion:
        return HilbertSpace::fermion(n);
    }
    throw ScenarioError("scenario: unknown statistics");
}

ControlSet control_set_by_name(const std::string& name, Statistics statistics) {
    if (name == "C2") return ControlSet::c2();
    const auto n = trailing_digits(name);
    if (!n || name.size() < 2)
        throw ScenarioError("scenario: control set must be one of L<N>, G<N>, F<N>, C2 (got '" + name + "')");
    const char kind = name[0];
    if (kind == 'F') {
        switch (statistics) {
        case Statistics::distinguishable:
            return ControlSet::collective_z(HilbertSpace::distinguishable(*n));
        case Statistics::boson:
            return ControlSet::collective_z(HilbertSpace::boson(*n));
        case Statistics::fermion:
            return ControlSet::collective_z(HilbertSpace::fermion(*n));
        }
    }
    if (statistics != Statistics::distinguishable)
        throw IncompatibleControlSetError("control set " + name + " requires distinguishable statistics (got " +
                                          to_string(statistics) + ")");
    if (kind == 'L') return ControlSet::local_independent(*n);
    if (kind == 'G') return ControlSet::local_common(*n);
    throw ScenarioError("scenario: control set must be one of L<N>, G<N>, F<N>, C2 (got '" + name + "')");
}

DensityMatrix named_state(const std::string& name, const HilbertSpace& space, std::uint64_t seed,
                          const Tolerances& tol) {
    if (auto label = ket_label(name)) {
        if (space.statistics() == Statistics::distinguishable) {
            if (static_cast<int>(label->size()) != space.n_particles() || !space.is_qubits())
                throw ScenarioError("scenario: ket " + name + " must have one digit per qubit (N = " +
                                    std::to_string(space.n_particles()) + ")");
            int index = 0;
            for (char ch : *label) {
                if (ch != '0' && ch != '1') throw ScenarioError("scenario: qubit ket digits must be 0 or 1");
                index = 2 * index + (ch - '0');
            }
            return DensityMatrix::basis_state(space, index);
        }
        const int index = parse_int(*label, "occupation index");
        if (index < 0 || index >= space.dim())
            throw ScenarioError("scenario: occupation index " + *label + " outside [0, " +
                                std::to_string(space.dim() - 1) + "]");
        return DensityMatrix::basis_state(space, index);
    }
    if (name == "bell-phi+") {
        Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
        phi(0) = phi(3) = 1.0;
        return DensityMatrix::pure(HilbertSpace::distinguishable(2), phi);
    }
    if (name == "mixed") return DensityMatrix::maximally_mixed(space);
    if (starts_with(name, "werner:")) {
        const double p = parse_double(name.substr(7), "Werner weight");
        if (p < -1.0 / 3.0 || p > 1.0) throw ScenarioError("scenario: Werner weight p must lie in [-1/3, 1]");
        return werner(p);
    }
    if (starts_with(name, "occupation:")) {
        if (space.statistics() == Statistics::distinguishable)
            throw ScenarioError("scenario: occupation states require boson or fermion statistics");
        const int index = parse_int(name.substr(11), "occupation index");
        if (index < 0 || index >= space.dim())
            throw ScenarioError("scenario: occupation index outside [0, " + std::to_string(space.dim() - 1) + "]");
        return DensityMatrix::basis_state(space, index);
    }
    if (starts_with(name, "spectrum:")) {
        std::vector<double> p;
        std::stringstream ss(name.substr(9));
        std::string item;
        while (std::getline(ss, item, ',')) p.push_back(parse_double(item, "spectrum entry"));
        if (p.empty()) throw ScenarioError("scenario: spectrum needs at least one entry");
        const HilbertSpace sp = space_for_dim(static_cast<int>(p.size()), space);
        ComplexMatrix m = ComplexMatrix::Zero(sp.dim(), sp.dim());
        for (size_t j = 0; j < p.size(); ++j) m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = p[j];
        return DensityMatrix(sp, std::move(m), tol);
    }
    if (name == "rho-x-rho" || name == "rho⊗rho") {
        const auto one = random_density_matrix(HilbertSpace::distinguishable(1), 2, seed);
        return tensor(one, one);
    }
    if (starts_with(name, "random:")) {
        const int rank = parse_int(name.substr(7), "rank");
        return random_density_matrix(space, rank, seed);
    }
    throw ScenarioError("scenario: unknown named state '" + name + "'");
}

DensityMatrix inline_state(const nlohmann::json& rows, const HilbertSpace& space, const Tolerances& tol,
                           std::vector<std::string>& warnings) {
    if (!rows.is_array() || rows.empty()) throw ScenarioError("scenario: inline state must be a non-empty array of rows");
    const auto d = static_cast<Eigen::Index>(rows.size());
    ComplexMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
            throw ScenarioError("scenario: inline state must be square");
        for (Eigen::Index j = 0; j < d; ++j) {
            const auto& e = row[static_cast<size_t>(j)];
            if (e.is_number())
                m(i, j) = Complex(e.get<double>(), 0.0);
            else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
                m(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
            else
                throw ScenarioError("scenario: matrix entries must be numbers or [re, im] pairs");
        }
    }
    const double trace = m.trace().real();
    const double deviation = std::abs(trace - 1.0);
    if (deviation > 1e-10 && deviation <= 1e-6) {
        std::ostringstream os;
        os.precision(3);
        os << "input state renormalized (trace deviation " << deviation << ")";
        warnings.push_back(os.str());
        m /= trace;
    } else if (deviation > 1e-10 && deviation > tol.trace) {
        std::ostringstream os;
        os << "density matrix invariant violated: trace = 1 within tolerance (trace = " << trace << ")";
        throw InvalidDensityMatrixError(os.str());
    }
    return DensityMatrix(space_for_dim(static_cast<int>(d), space), std::move(m), tol);
}

DensityMatrix scenario_state(const Scenario& sc, std::vector<std::string>& warnings) {
    const HilbertSpace space = scenario_space(sc);
    if (sc.state_matrix) return inline_state(*sc.state_matrix, space, sc.tol, warnings);
    if (sc.state_name) return named_state(*sc.state_name, space, sc.seed, sc.tol);
    throw ScenarioError("scenario: an input state is required (--state or \"state\")");
}

Scenario parse_scenario(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ScenarioError("scenario: document must be a JSON object");
    if (!doc.contains("schema") || doc["schema"] != 1)
        throw ScenarioError("scenario: top-level \"schema\": 1 is required");
    static const std::set<std::string> known{"schema", "engine", "mode",  "statistics", "n",     "control_set",
                                             "state",  "c",      "beta",  "steps",      "seed",  "clamp",
                                             "tolerances"};
    for (const auto& [key, value] : doc.items())
        if (!known.contains(key)) throw ScenarioError("scenario: unknown field \"" + key + "\"");

    Scenario sc;
    try {
        if (doc.contains("engine")) sc.engine = doc["engine"].get<std::string>();
        if (doc.contains("mode")) sc.mode = parse_mode(doc["mode"].get<std::string>());
        if (doc.contains("statistics")) sc.statistics = parse_statistics(doc["statistics"].get<std::string>());
        if (doc.contains("n")) sc.n = doc["n"].get<int>();
        if (doc.contains("control_set")) sc.control_set = doc["control_set"].get<std::string>();
        if (doc.contains("state")) {
            if (doc["state"].is_string())
                sc.state_name = doc["state"].get<std::string>();
            else
                sc.state_matrix = doc["state"];
        }
        if (doc.contains("c")) sc.polarization = doc["c"].get<double>();
        if (doc.contains("beta")) sc.beta = doc["beta"].get<double>();
        if (doc.contains("steps")) sc.steps = doc["steps"].get<int>();
        if (doc.contains("seed")) sc.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("clamp")) sc.clamp = doc["clamp"].get<bool>();
        if (doc.contains("tolerances")) {
            const auto& t = doc["tolerances"];
            if (t.contains("hermiticity")) sc.tol.hermiticity = t["hermiticity"].get<double>();
            if (t.contains("psd")) sc.tol.psd = t["psd"].get<double>();
            if (t.contains("trace")) sc.tol.trace = t["trace"].get<double>();
            if (t.contains("eigenvalue_floor")) sc.tol.eigenvalue_floor = t["eigenvalue_floor"].get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ScenarioError(std::string("scenario: malformed field (") + e.what() + ")");
    }
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("scenario: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError(std::string("scenario: malformed JSON (") + e.what() + ")");
    }
    return parse_scenario(doc);
}

} // namespace qihe
