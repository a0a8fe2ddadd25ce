#include "dualsolver/params_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dualsolver/report.hpp"

namespace dualsolver {

using nlohmann::json;

namespace {

void require_finite(const std::vector<double>& arr, const std::string& path) {
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!std::isfinite(arr[i])) {
            throw std::invalid_argument("params file: non-finite value at " + path + "[" +
                                        std::to_string(i) + "]");
        }
    }
}

json group_to_json(const ParamArrays& g) {
    json j;
    j["gamma"] = g.gamma;
    j["tau_u_raw"] = g.tau_u_raw;
    j["tau_v_raw"] = g.tau_v_raw;
    j["kappa_u"] = g.kappa_u;
    j["kappa_v"] = g.kappa_v;
    return j;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw std::invalid_argument("params file: unknown field " + path + "." + it.key());
        }
    }
}

std::vector<double> read_array(const json& obj, const std::string& key, std::size_t expected,
                               const std::string& path) {
    if (!obj.contains(key)) {
        throw std::invalid_argument("params file: missing field " + path + "." + key);
    }
    const json& arr = obj.at(key);
    if (!arr.is_array() || arr.size() != expected) {
        throw std::invalid_argument("params file: length mismatch at " + path + "." + key +
                                    ", expected " + std::to_string(expected));
    }
    std::vector<double> out;
    out.reserve(expected);
    for (const json& v : arr) {
        if (!v.is_number()) {
            throw std::invalid_argument("params file: non-numeric value at " + path + "." +
                                        key);
        }
        out.push_back(v.get<double>());
    }
    require_finite(out, path + "." + key);
    return out;
}

ParamArrays group_from_json(const json& obj, std::size_t n, const std::string& path) {
    reject_unknown(obj, {"gamma", "tau_u_raw", "tau_v_raw", "kappa_u", "kappa_v"}, path);
    ParamArrays g;
    g.gamma = read_array(obj, "gamma", n, path);
    g.tau_u_raw = read_array(obj, "tau_u_raw", n, path);
    g.tau_v_raw = read_array(obj, "tau_v_raw", n, path);
    g.kappa_u = read_array(obj, "kappa_u", n, path);
    g.kappa_v = read_array(obj, "kappa_v", n, path);
    return g;
}

json schedule_to_json(const ScheduleSpec& s) {
    json j;
    j["kind"] = schedule_kind_name(s.kind);
    j["t_min"] = s.t_min;
    j["t_max"] = s.t_max;
    j["T"] = s.T;
    switch (s.kind) {
        case ScheduleKind::VpLinearBeta:
            j["beta_min"] = s.beta_min;
            j["beta_max"] = s.beta_max;
            break;
        case ScheduleKind::Ve:
            j["sigma_min"] = s.sigma_min;
            j["sigma_max"] = s.sigma_max;
            break;
        default:
            break;
    }
    return j;
}

ScheduleSpec schedule_from_json(const json& j) {
    reject_unknown(j, {"kind", "t_min", "t_max", "T", "beta_min", "beta_max", "sigma_min",
                       "sigma_max"},
                   "schedule");
    ScheduleSpec s;
    s.kind = schedule_kind_from_name(j.at("kind").get<std::string>());
    s.t_min = j.at("t_min").get<double>();
    s.t_max = j.at("t_max").get<double>();
    if (j.contains("T")) s.T = j.at("T").get<double>();
    if (j.contains("beta_min")) s.beta_min = j.at("beta_min").get<double>();
    if (j.contains("beta_max")) s.beta_max = j.at("beta_max").get<double>();
    if (j.contains("sigma_min")) s.sigma_min = j.at("sigma_min").get<double>();
    if (j.contains("sigma_max")) s.sigma_max = j.at("sigma_max").get<double>();
    return s;
}

}  // namespace

std::string encode_params(const ParamsFile& file) {
    const std::size_t M = file.params.steps();
    file.params.validate(M);
    require_finite(file.params.pred.gamma, "pred.gamma");
    require_finite(file.params.pred.tau_u_raw, "pred.tau_u_raw");
    require_finite(file.params.pred.tau_v_raw, "pred.tau_v_raw");
    require_finite(file.params.pred.kappa_u, "pred.kappa_u");
    require_finite(file.params.pred.kappa_v, "pred.kappa_v");
    require_finite(file.params.corr.gamma, "corr.gamma");
    require_finite(file.params.corr.tau_u_raw, "corr.tau_u_raw");
    require_finite(file.params.corr.tau_v_raw, "corr.tau_v_raw");
    require_finite(file.params.corr.kappa_u, "corr.kappa_u");
    require_finite(file.params.corr.kappa_v, "corr.kappa_v");
    require_finite(file.params.raw_steps, "raw_steps");

    json j;
    j["format_version"] = file.format_version;
    j["schedule"] = schedule_to_json(file.schedule);
    j["M"] = M;
    j["pred"] = group_to_json(file.params.pred);
    j["corr"] = group_to_json(file.params.corr);
    j["raw_steps"] = file.params.raw_steps;
    j["provenance"] = {{"seed", file.provenance.seed},
                       {"loss_kind", file.provenance.loss_kind},
                       {"iterations", file.provenance.iterations}};
    return j.dump(2) + "\n";
}

ParamsFile decode_params(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("params file: malformed document: ") + e.what());
    }
    reject_unknown(j, {"format_version", "schedule", "M", "pred", "corr", "raw_steps",
                       "provenance"},
                   "<root>");
    if (!j.contains("format_version") || !j.at("format_version").is_number_integer()) {
        throw std::invalid_argument("params file: missing format_version");
    }
    const int version = j.at("format_version").get<int>();
    if (version != 1) {
        throw std::invalid_argument("params file: unsupported format_version " +
                                    std::to_string(version));
    }
    const std::size_t M = j.at("M").get<std::size_t>();
    if (M < 1) throw std::invalid_argument("params file: M must be >= 1");

    ParamsFile file;
    file.format_version = version;
    file.schedule = schedule_from_json(j.at("schedule"));
    file.params.pred = group_from_json(j.at("pred"), M, "pred");
    file.params.corr = group_from_json(j.at("corr"), M - 1, "corr");
    {
        json root_steps;
        root_steps["raw_steps"] = j.at("raw_steps");
        file.params.raw_steps = read_array(root_steps, "raw_steps", M, "<root>");
    }
    if (j.contains("provenance")) {
        const json& p = j.at("provenance");
        reject_unknown(p, {"seed", "loss_kind", "iterations"}, "provenance");
        if (p.contains("seed")) file.provenance.seed = p.at("seed").get<std::uint64_t>();
        if (p.contains("loss_kind")) {
            file.provenance.loss_kind = p.at("loss_kind").get<std::string>();
        }
        if (p.contains("iterations")) {
            file.provenance.iterations = p.at("iterations").get<std::uint64_t>();
        }
    }
    file.params.validate(M);
    return file;
}

void save_params(const ParamsFile& file, const std::string& path) {
    atomic_write_file(path, encode_params(file));
}

ParamsFile load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open params file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return decode_params(buf.str());
}

}  // namespace dualsolver
