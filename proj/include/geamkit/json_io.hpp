// json_io.hpp — JSON (de)serialization of measurements, configs, states, and
// reports. Numbers are written with 17 significant digits so files round-trip
// bit-exactly; parsing uses nlohmann/json.

#pragma once

#include "geamkit/entanglement.hpp"
#include "geamkit/geam.hpp"
#include "geamkit/states.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace geamkit {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Serializer with a fixed 17-significant-digit float format and stable key order.
inline void dump_json(const Json& j, std::string& out) {
    switch (j.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += Json(it.key()).dump();
                out += ':';
                dump_json(it.value(), out);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                dump_json(v, out);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            break;
        default:
            out += j.dump();
    }
}

}  // namespace detail

inline std::string to_string(const Json& j) {
    std::string out;
    detail::dump_json(j, out);
    out += '\n';
    return out;
}

// Atomic write: temp file in the same directory, then rename.
inline void write_json(const Json& j, const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << to_string(j);
    }
    fs::rename(tmp, target);
}

inline Json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return Json::parse(in);
}

inline Json matrix_to_json(const Matrix& M) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Json rrow = Json::array(), irow = Json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            rrow.push_back(M(i, j).real());
            irow.push_back(M(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

inline Matrix matrix_from_json(const Json& j) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const auto rows = re.size();
    if (rows == 0) throw std::runtime_error("empty matrix");
    const auto cols = re[0].size();
    Matrix M(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            M(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
    return M;
}

inline Json geam_to_json(const Geam& geam) {
    Json frames = Json::array();
    for (const auto& fr : geam.frames) {
        Json ops = Json::array();
        for (const auto& P : fr.operators) ops.push_back(matrix_to_json(P));
        frames.push_back(Json{{"gamma", fr.gamma}, {"operators", std::move(ops)}});
    }
    return Json{{"dim", geam.dim}, {"frames", std::move(frames)}};
}

// Frame metadata (a, b, c, tau) is re-measured from the operators so that
// hand-edited files are validated on their actual content.
inline Geam geam_from_json(const Json& jin) {
    // Accept both a bare measurement and the wrapped form written by the CLI.
    const Json& j = jin.contains("geam") ? jin.at("geam") : jin;
    Geam geam;
    geam.dim = j.at("dim").get<int>();
    const int d = geam.dim;
    for (const auto& jf : j.at("frames")) {
        Frame fr;
        fr.gamma = jf.at("gamma").get<double>();
        for (const auto& jop : jf.at("operators"))
            fr.operators.push_back(matrix_from_json(jop));
        const int M = static_cast<int>(fr.operators.size());
        double a = 0, b2 = 0, c2 = 0;
        for (const auto& P : fr.operators) {
            a += P.trace().real();
            b2 += (P * P).trace().real();
        }
        a /= M;
        fr.a = a;
        fr.b = b2 / (M * a * a);
        if (M > 1) {
            int pairs = 0;
            for (int k = 0; k < M; ++k)
                for (int l = k + 1; l < M; ++l, ++pairs)
                    c2 += (fr.operators[k] * fr.operators[l]).trace().real();
            fr.c = c2 / (pairs * a * a);
        }
        const double S_alpha = fr.a * fr.a * (fr.b - fr.c);
        const double sM = std::sqrt(double(M));
        fr.tau = std::sqrt(std::max(0.0, S_alpha) / (M * (sM + 1) * (sM + 1)));
        geam.frames.push_back(std::move(fr));
    }
    return geam;
}

inline Json config_to_json(const GeamConfig& cfg) {
    Json frames = Json::array();
    for (const auto& f : cfg.frames)
        frames.push_back(Json{{"M", f.M}, {"gamma", f.gamma}, {"b", f.b}});
    Json j{{"dim", cfg.dim}, {"frames", std::move(frames)}};
    if (cfg.target_S) j["target_S"] = *cfg.target_S;
    if (!cfg.tau_signs.empty()) j["tau_signs"] = cfg.tau_signs;
    return j;
}

inline GeamConfig config_from_json(const Json& j) {
    GeamConfig cfg;
    cfg.dim = j.at("dim").get<int>();
    for (const auto& jf : j.at("frames")) {
        FrameSpec f;
        f.M = jf.at("M").get<int>();
        f.gamma = jf.at("gamma").get<double>();
        f.b = jf.value("b", 0.0);
        cfg.frames.push_back(f);
    }
    if (j.contains("target_S")) cfg.target_S = j.at("target_S").get<double>();
    if (j.contains("tau_signs")) cfg.tau_signs = j.at("tau_signs").get<std::vector<int>>();
    return cfg;
}

inline Json state_to_json(const DensityMatrix& rho) {
    Json m = matrix_to_json(rho.matrix);
    return Json{{"dim", rho.dim},
                {"bipartite", rho.bipartite},
                {"re", std::move(m["re"])},
                {"im", std::move(m["im"])}};
}

inline DensityMatrix state_from_json(const Json& j) {
    DensityMatrix rho;
    rho.dim = j.at("dim").get<int>();
    rho.bipartite = j.at("bipartite").get<bool>();
    rho.matrix = matrix_from_json(j);
    if (rho.matrix.rows() != rho.dim)
        throw std::runtime_error("state dim does not match matrix size");
    return rho;
}

inline Json design_params_to_json(const DesignParams& p) {
    return Json{{"S", p.S}, {"mu", p.mu}, {"C_max", p.C_max},
                {"kappa_plus", p.kappa_plus}, {"kappa_minus", p.kappa_minus}};
}

inline Json validation_report_to_json(const ValidationReport& r) {
    return Json{{"pass", r.pass},
                {"tol", r.tol},
                {"dev_trace", r.dev_trace},
                {"dev_purity", r.dev_purity},
                {"dev_within_frame", r.dev_within},
                {"dev_cross_frame", r.dev_cross},
                {"dev_frame_resolution", r.dev_frame_resolution},
                {"dev_total_resolution", r.dev_total_resolution},
                {"min_eigenvalue", r.min_eigenvalue}};
}

inline Json detection_report_to_json(const DetectionReport& r) {
    Json bounds = Json::array();
    for (const auto& b : r.schmidt_bounds)
        bounds.push_back(Json{{"r", b.r}, {"bound", b.bound}, {"violated", b.violated}});
    return Json{{"trace_norm", r.trace_norm},
                {"schmidt_bounds", std::move(bounds)},
                {"min_schmidt_number_certified", r.min_schmidt_number_certified},
                {"concurrence_lower_bound", r.concurrence_bound}};
}

}  // namespace geamkit
