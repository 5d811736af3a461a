#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "design.hpp"
#include "errors.hpp"
#include "gramian.hpp"
#include "matrix.hpp"
#include "signal.hpp"
#include "simulate.hpp"
#include "stability.hpp"
#include "state_space.hpp"

namespace lti {

using json = nlohmann::json;

/// Model file: time domain tag, the (A, B, C) triple and optional
/// metadata. Parsing and serialization are exact inverses byte for byte.
struct ModelFile {
    StateSpaceModel model;
    std::string name;         // optional, empty when absent
    std::string units_note;   // optional, empty when absent
};

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << text;
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw ParseError(what + ": expected a non-empty array of rows");
    std::size_t cols = 0;
    std::vector<std::vector<double>> rows;
    for (const auto& row : j) {
        if (!row.is_array() || row.empty()) {
            throw ParseError(what + ": expected non-empty numeric rows");
        }
        if (cols == 0) cols = row.size();
        if (row.size() != cols) throw DimensionError(what + ": rows have unequal lengths");
        std::vector<double> r;
        for (const auto& v : row) {
            if (!v.is_number()) throw ParseError(what + ": entries must be numbers");
            r.push_back(v.get<double>());
        }
        rows.push_back(std::move(r));
    }
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    if (!m.all_finite()) throw ParseError(what + ": entries must be finite");
    return m;
}

inline json vector_to_json(const Vector& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

inline Vector vector_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": expected a numeric array");
    Vector v;
    for (const auto& x : j) {
        if (!x.is_number()) throw ParseError(what + ": entries must be numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

inline ModelFile model_file_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("model file: expected a JSON object");
    for (const char* key : {"time_domain", "A", "B", "C"}) {
        if (!j.contains(key)) throw ParseError(std::string("model file: missing field '") + key + "'");
    }
    if (!j.at("time_domain").is_string()) {
        throw ParseError("model file: time_domain must be a string");
    }
    const std::string domain_text = j.at("time_domain").get<std::string>();
    TimeDomain domain;
    if (domain_text == "continuous") domain = TimeDomain::Continuous;
    else if (domain_text == "discrete") domain = TimeDomain::Discrete;
    else throw ParseError("model file: time_domain must be 'continuous' or 'discrete'");

    const Matrix a = matrix_from_json(j.at("A"), "A");
    const Matrix b = matrix_from_json(j.at("B"), "B");
    const Matrix c = matrix_from_json(j.at("C"), "C");

    ModelFile file;
    try {
        file.model = StateSpaceModel(domain, a, b, c);
    } catch (const DimensionMismatch& e) {
        throw DimensionError(e.what());
    }
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ParseError("model file: name must be a string");
        file.name = j.at("name").get<std::string>();
    }
    if (j.contains("units_note")) {
        if (!j.at("units_note").is_string()) throw ParseError("model file: units_note must be a string");
        file.units_note = j.at("units_note").get<std::string>();
    }
    return file;
}

inline json model_file_to_json(const ModelFile& file) {
    json j;
    j["time_domain"] = to_string(file.model.domain);
    j["A"] = matrix_to_json(file.model.A);
    j["B"] = matrix_to_json(file.model.B);
    j["C"] = matrix_to_json(file.model.C);
    if (!file.name.empty()) j["name"] = file.name;
    if (!file.units_note.empty()) j["units_note"] = file.units_note;
    return j;
}

inline std::string model_file_to_string(const ModelFile& file) {
    return model_file_to_json(file).dump(2) + "\n";
}

inline ModelFile parse_model_file(const std::string& path) {
    const std::string text = read_text_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError("model file '" + path + "': " + e.what());
    }
    return model_file_from_json(j);
}

/// Parses and validates a model file, returning just the system.
inline StateSpaceModel parse_model(const std::string& path) {
    return parse_model_file(path).model;
}

namespace detail {

inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    fields.push_back(field);
    return fields;
}

} // namespace detail

/// CSV with header t,x1..xn,y1..yp, one row per grid point, 17
/// significant digits, LF line endings.
inline std::string trajectory_to_csv(const Trajectory& traj) {
    if (traj.size() == 0) return "";
    const std::size_t n = traj.states.front().size();
    const std::size_t p = traj.outputs.front().size();
    std::string out = "t";
    for (std::size_t i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
    for (std::size_t i = 1; i <= p; ++i) out += ",y" + std::to_string(i);
    out += "\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out += detail::format_full(traj.times[k]);
        for (double v : traj.states[k]) out += "," + detail::format_full(v);
        for (double v : traj.outputs[k]) out += "," + detail::format_full(v);
        out += "\n";
    }
    return out;
}

inline Trajectory trajectory_from_csv(const std::string& text, std::size_t n, std::size_t p) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("trajectory csv: empty input");
    const auto header = detail::split_csv_line(line);
    if (header.size() != 1 + n + p || header[0] != "t") {
        throw ParseError("trajectory csv: header must be t,x1..x" + std::to_string(n) +
                         ",y1..y" + std::to_string(p));
    }
    Trajectory traj;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 1 + n + p) throw ParseError("trajectory csv: wrong column count");
        std::vector<double> row;
        for (const auto& f : fields) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(f, &pos));
                if (pos != f.size()) throw std::invalid_argument(f);
            } catch (const std::exception&) {
                throw ParseError("trajectory csv: bad number '" + f + "'");
            }
        }
        traj.times.push_back(row[0]);
        traj.states.emplace_back(row.begin() + 1, row.begin() + 1 + static_cast<long>(n));
        traj.outputs.emplace_back(row.begin() + 1 + static_cast<long>(n), row.end());
    }
    if (traj.size() == 0) throw ParseError("trajectory csv: no data rows");
    return traj;
}

/// CSV with header t,u1..um for zero-order-hold sample tables.
inline std::string samples_to_csv(const InputSignal& u) {
    if (u.kind() != InputSignal::Kind::Samples) {
        throw ParseError("samples_to_csv: signal is not a sample table");
    }
    const std::size_t m = u.channels();
    std::string out = "t";
    for (std::size_t i = 1; i <= m; ++i) out += ",u" + std::to_string(i);
    out += "\n";
    for (std::size_t k = 0; k < u.sample_times().size(); ++k) {
        out += detail::format_full(u.sample_times()[k]);
        for (double v : u.sample_values()[k]) out += "," + detail::format_full(v);
        out += "\n";
    }
    return out;
}

inline InputSignal samples_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("samples csv: empty input");
    const auto header = detail::split_csv_line(line);
    if (header.size() < 2 || header[0] != "t") {
        throw ParseError("samples csv: header must be t,u1..um");
    }
    const std::size_t m = header.size() - 1;
    std::vector<double> times;
    std::vector<Vector> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != m + 1) throw ParseError("samples csv: wrong column count");
        std::vector<double> row;
        for (const auto& f : fields) {
            try {
                row.push_back(std::stod(f));
            } catch (const std::exception&) {
                throw ParseError("samples csv: bad number '" + f + "'");
            }
        }
        times.push_back(row[0]);
        values.emplace_back(row.begin() + 1, row.end());
    }
    return InputSignal::samples(std::move(times), std::move(values));
}

/// CSV with header t,I_11,... (row-major channel pairs).
inline std::string bibo_profile_to_csv(const BiboProfile& profile) {
    if (profile.integral_values.empty()) return "";
    const std::size_t p = profile.integral_values.front().rows();
    const std::size_t m = profile.integral_values.front().cols();
    std::string out = "t";
    for (std::size_t i = 1; i <= p; ++i)
        for (std::size_t j = 1; j <= m; ++j)
            out += ",I_" + std::to_string(i) + std::to_string(j);
    out += "\n";
    for (std::size_t k = 0; k < profile.sample_times.size(); ++k) {
        out += detail::format_full(profile.sample_times[k]);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < m; ++j)
                out += "," + detail::format_full(profile.integral_values[k](i, j));
        out += "\n";
    }
    return out;
}

inline json spectrum_to_json(const Spectrum& spec) {
    json a = json::array();
    for (const auto& v : spec.values) {
        a.push_back(json{{"re", v.real()}, {"im", v.imag()}});
    }
    return a;
}

inline json gramian_report_to_json(const GramianReport& report) {
    json j;
    j["kind"] = to_string(report.kind);
    j["horizon"] = json::array({report.t0, report.t1});
    j["W"] = matrix_to_json(report.W);
    j["det"] = report.det;
    j["nonsingular"] = report.nonsingular;
    j["min_eigenvalue"] = report.min_eigenvalue;
    return j;
}

inline json stability_report_to_json(const StabilityReport& report) {
    json j;
    j["eigenvalues"] = spectrum_to_json(report.eigenvalues);
    j["classification"] = to_string(report.classification);
    j["bibo_by_theorem33"] = report.bibo_by_theorem33;
    if (report.lyapunov_certificate) {
        const auto& cert = *report.lyapunov_certificate;
        j["lyapunov_certificate"] = json{{"P", matrix_to_json(cert.P)},
                                         {"verdict", to_string(cert.verdict)},
                                         {"derivative_form", matrix_to_json(cert.derivative_form)},
                                         {"min_eig_P", cert.min_eig_P},
                                         {"max_eig_S", cert.max_eig_S}};
    }
    return j;
}

inline json feedback_gain_to_json(const FeedbackGain& gain) {
    json j;
    j["F"] = matrix_to_json(gain.F);
    if (gain.canonical_gain) j["canonical_gain"] = matrix_to_json(*gain.canonical_gain);
    j["desired_poly"] = vector_to_json(gain.desired_poly.coefficients);
    return j;
}

inline json lqr_solution_to_json(const LqrSolution& sol) {
    json gains = json::array();
    for (const auto& f : sol.gains) gains.push_back(matrix_to_json(f));
    json riccati = json::array();
    for (const auto& p : sol.riccati) riccati.push_back(matrix_to_json(p));
    json j;
    j["horizon"] = json::array({sol.i0, sol.i1});
    j["gains"] = std::move(gains);
    j["riccati"] = std::move(riccati);
    return j;
}

inline json trajectory_to_json(const Trajectory& traj) {
    json times = json::array();
    json states = json::array();
    json outputs = json::array();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        times.push_back(traj.times[k]);
        states.push_back(vector_to_json(traj.states[k]));
        outputs.push_back(vector_to_json(traj.outputs[k]));
    }
    json j;
    j["times"] = std::move(times);
    j["states"] = std::move(states);
    j["outputs"] = std::move(outputs);
    return j;
}

inline json input_samples_to_json(const InputSignal& u) {
    json times = json::array();
    json values = json::array();
    for (std::size_t k = 0; k < u.sample_times().size(); ++k) {
        times.push_back(u.sample_times()[k]);
        values.push_back(vector_to_json(u.sample_values()[k]));
    }
    json j;
    j["times"] = std::move(times);
    j["values"] = std::move(values);
    return j;
}

} // namespace lti
