#include "lab/config.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetalab/errors.hpp"

namespace lab {

using nlohmann::json;
using zetalab::ConfigError;

std::string kind_name(Kind kind) {
    switch (kind) {
        case Kind::Eval: return "eval";
        case Kind::Zeros: return "zeros";
        case Kind::BoundSweep: return "bound-sweep";
        case Kind::Kronecker: return "kronecker";
        case Kind::Density: return "density";
        case Kind::Pipeline: return "pipeline";
        case Kind::RemarkDemo: return "remark-demo";
    }
    throw ConfigError("kind_name: unhandled kind");
}

Kind kind_from_name(const std::string& name) {
    if (name == "eval") return Kind::Eval;
    if (name == "zeros") return Kind::Zeros;
    if (name == "bound-sweep") return Kind::BoundSweep;
    if (name == "kronecker") return Kind::Kronecker;
    if (name == "density") return Kind::Density;
    if (name == "pipeline") return Kind::Pipeline;
    if (name == "remark-demo") return Kind::RemarkDemo;
    throw ConfigError("unknown kind \"" + name + "\"; expected one of eval, zeros, "
                      "bound-sweep, kronecker, density, pipeline, remark-demo");
}

namespace {

// Location-aware error reporting.  JSON positions are gone after parsing, so
// the line is recovered by scanning the source text for the quoted key in key
// position (followed by a colon); for the flat schema here the first such
// occurrence is the right one.  String *values* that happen to spell a key
// name, like "kind": "kronecker" vs the "kronecker" section, are skipped.
struct Source {
    const std::string& text;
    const std::string& filename;

    [[noreturn]] void fail(const std::string& key, const std::string& message) const {
        std::size_t line = 1;
        const std::string quoted = "\"" + key + "\"";
        std::size_t pos = text.find(quoted);
        while (pos != std::string::npos) {
            std::size_t after = pos + quoted.size();
            while (after < text.size() && (text[after] == ' ' || text[after] == '\t'))
                ++after;
            if (after < text.size() && text[after] == ':') break;
            pos = text.find(quoted, pos + 1);
        }
        if (pos != std::string::npos)
            line = 1 + static_cast<std::size_t>(
                           std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos),
                                      '\n'));
        throw ConfigError(filename + ":" + std::to_string(line) + ": " + message);
    }
};

double get_number(const Source& src, const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) src.fail(key, "\"" + key + "\" must be a number");
    return v.get<double>();
}

std::int64_t get_integer(const Source& src, const json& obj, const std::string& key,
                         std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) src.fail(key, "\"" + key + "\" must be an integer");
    return v.get<std::int64_t>();
}

std::uint64_t get_seed(const Source& src, const json& obj, const std::string& key,
                       std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        src.fail(key, "\"" + key + "\" must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string get_string(const Source& src, const json& obj, const std::string& key,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) src.fail(key, "\"" + key + "\" must be a string");
    return v.get<std::string>();
}

const json* get_object(const Source& src, const json& obj, const std::string& key) {
    if (!obj.contains(key)) return nullptr;
    const json& v = obj.at(key);
    if (!v.is_object()) src.fail(key, "\"" + key + "\" must be an object");
    return &v;
}

void reject_unknown(const Source& src, const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* name : allowed)
            if (item.key() == name) ok = true;
        if (!ok) src.fail(item.key(), "unknown key \"" + item.key() + "\" in " + where);
    }
}

zetalab::RationalShift get_shift(const Source& src, const json& obj, const std::string& key,
                                 const zetalab::RationalShift& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
        src.fail(key, "\"" + key + "\" must be an [a, b] pair of integers");
    try {
        return zetalab::RationalShift(v[0].get<std::int64_t>(), v[1].get<std::int64_t>());
    } catch (const std::invalid_argument& e) {
        src.fail(key, e.what());
    }
}

zetalab::EvalParams parse_params(const Source& src, const json& root) {
    zetalab::EvalParams params;
    const json* obj = get_object(src, root, "params");
    if (!obj) return params;
    reject_unknown(src, *obj, "\"params\"",
                   {"series_terms_n", "bernoulli_order", "target_abs_err"});
    params.series_terms_n =
        static_cast<int>(get_integer(src, *obj, "series_terms_n", params.series_terms_n));
    params.bernoulli_order =
        static_cast<int>(get_integer(src, *obj, "bernoulli_order", params.bernoulli_order));
    params.target_abs_err = get_number(src, *obj, "target_abs_err", params.target_abs_err);
    return params;
}

zetalab::RectRegion parse_rect(const Source& src, const json& obj,
                               const zetalab::RectRegion& fallback) {
    reject_unknown(src, obj, "a rectangle", {"sigma_min", "sigma_max", "t_min", "t_max"});
    zetalab::RectRegion rect = fallback;
    rect.sigma_min = get_number(src, obj, "sigma_min", rect.sigma_min);
    rect.sigma_max = get_number(src, obj, "sigma_max", rect.sigma_max);
    rect.t_min = get_number(src, obj, "t_min", rect.t_min);
    rect.t_max = get_number(src, obj, "t_max", rect.t_max);
    return rect;
}

zetalab::CompactSetSpec parse_set(const Source& src, const json& obj,
                                  const zetalab::CompactSetSpec& fallback) {
    reject_unknown(src, obj, "\"set\"", {"shape", "center", "radius", "rect", "grid_points"});
    zetalab::CompactSetSpec spec = fallback;
    const std::string shape = get_string(
        src, obj, "shape",
        spec.shape == zetalab::CompactSetSpec::Shape::Disk ? "disk" : "rectangle");
    if (shape == "disk") {
        spec.shape = zetalab::CompactSetSpec::Shape::Disk;
    } else if (shape == "rectangle") {
        spec.shape = zetalab::CompactSetSpec::Shape::Rectangle;
    } else {
        src.fail("shape", "\"shape\" must be \"disk\" or \"rectangle\"");
    }
    if (obj.contains("center")) {
        const json& c = obj.at("center");
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
            src.fail("center", "\"center\" must be a [sigma, t] pair");
        spec.center = zetalab::Complex(c[0].get<double>(), c[1].get<double>());
    }
    spec.radius = get_number(src, obj, "radius", spec.radius);
    if (const json* rect = get_object(src, obj, "rect")) spec.rect = parse_rect(src, *rect, spec.rect);
    spec.grid_points = static_cast<int>(get_integer(src, obj, "grid_points", spec.grid_points));
    return spec;
}

zetalab::ShiftMode parse_mode(const Source& src, const json& obj,
                              const zetalab::ShiftMode& fallback) {
    reject_unknown(src, obj, "\"mode\"", {"kind", "shift", "d"});
    const std::string kind = get_string(src, obj, "kind", "rational");
    if (kind == "rational")
        return zetalab::ShiftMode::rational(get_shift(src, obj, "shift", fallback.shift));
    if (kind == "real") {
        if (!obj.contains("d")) src.fail("kind", "mode \"real\" requires \"d\"");
        return zetalab::ShiftMode::real(get_number(src, obj, "d", 0.0));
    }
    if (kind == "bagchi") return zetalab::ShiftMode::bagchi();
    src.fail("kind", "mode kind must be \"rational\", \"real\", or \"bagchi\"");
}

zetalab::KroneckerQuery parse_query(const Source& src, const json& obj,
                                    const zetalab::KroneckerQuery& fallback) {
    reject_unknown(src, obj, "a scan query", {"z", "shift", "delta", "T", "step"});
    zetalab::KroneckerQuery query = fallback;
    query.z = get_number(src, obj, "z", query.z);
    query.shift = get_shift(src, obj, "shift", query.shift);
    query.delta = get_number(src, obj, "delta", query.delta);
    query.T = get_number(src, obj, "T", query.T);
    query.step = get_number(src, obj, "step", query.step);
    return query;
}

}  // namespace

void ExperimentConfig::validate() const {
    try {
        params.validate();
        switch (kind) {
            case Kind::Eval:
                break;
            case Kind::Zeros:
                zeros_region.validate();
                break;
            case Kind::BoundSweep:
                sweep.validate();
                break;
            case Kind::Kronecker:
                kronecker.validate();
                break;
            case Kind::Density:
                density.validate();
                break;
            case Kind::Pipeline:
                pipeline.validate();
                break;
            case Kind::RemarkDemo:
                remark.validate();
                break;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

ExperimentConfig parse_config(const std::string& text, const std::string& filename) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        const std::size_t limit = std::min(e.byte, text.size());
        line += static_cast<std::size_t>(
            std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(limit), '\n'));
        throw ConfigError(filename + ":" + std::to_string(line) + ": " + e.what());
    }

    const Source src{text, filename};
    if (!root.is_object()) src.fail("kind", "top level must be a JSON object");

    const std::string schema = get_string(src, root, "schema", "v1");
    if (schema != "v1") src.fail("schema", "unsupported schema \"" + schema + "\" (want \"v1\")");

    if (!root.contains("kind")) src.fail("kind", "missing required key \"kind\"");
    ExperimentConfig config;
    try {
        config.kind = kind_from_name(get_string(src, root, "kind", ""));
    } catch (const ConfigError& e) {
        src.fail("kind", e.what());
    }
    const std::string section = kind_name(config.kind);
    reject_unknown(src, root, "the top level",
                   {"schema", "kind", "params", section.c_str()});

    config.params = parse_params(src, root);

    if (const json* obj = get_object(src, root, section)) {
        switch (config.kind) {
            case Kind::Eval: {
                reject_unknown(src, *obj, "\"eval\"", {"sigma", "t"});
                config.eval_s = zetalab::Complex(
                    get_number(src, *obj, "sigma", config.eval_s.real()),
                    get_number(src, *obj, "t", config.eval_s.imag()));
                break;
            }
            case Kind::Zeros:
                config.zeros_region = parse_rect(src, *obj, config.zeros_region);
                break;
            case Kind::BoundSweep: {
                reject_unknown(src, *obj, "\"bound-sweep\"",
                               {"count", "seed", "sigma_min", "sigma_max", "t_max", "z_values",
                                "shifts"});
                config.sweep.count = get_integer(src, *obj, "count", config.sweep.count);
                config.sweep.seed = get_seed(src, *obj, "seed", config.sweep.seed);
                config.sweep.sigma_min = get_number(src, *obj, "sigma_min", config.sweep.sigma_min);
                config.sweep.sigma_max = get_number(src, *obj, "sigma_max", config.sweep.sigma_max);
                config.sweep.t_max = get_number(src, *obj, "t_max", config.sweep.t_max);
                if (obj->contains("z_values")) {
                    const json& arr = obj->at("z_values");
                    if (!arr.is_array() || arr.empty())
                        src.fail("z_values", "\"z_values\" must be a non-empty array");
                    config.sweep.z_values.clear();
                    for (const json& v : arr) {
                        if (!v.is_number())
                            src.fail("z_values", "\"z_values\" entries must be numbers");
                        config.sweep.z_values.push_back(v.get<double>());
                    }
                }
                if (obj->contains("shifts")) {
                    const json& arr = obj->at("shifts");
                    if (!arr.is_array() || arr.empty())
                        src.fail("shifts", "\"shifts\" must be a non-empty array of [a, b] pairs");
                    config.sweep.shifts.clear();
                    for (const json& v : arr) {
                        if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
                            !v[1].is_number_integer())
                            src.fail("shifts", "\"shifts\" entries must be [a, b] integer pairs");
                        try {
                            config.sweep.shifts.emplace_back(v[0].get<std::int64_t>(),
                                                             v[1].get<std::int64_t>());
                        } catch (const std::invalid_argument& e) {
                            src.fail("shifts", e.what());
                        }
                    }
                }
                break;
            }
            case Kind::Kronecker:
                config.kronecker = parse_query(src, *obj, config.kronecker);
                break;
            case Kind::Density: {
                reject_unknown(src, *obj, "\"density\"",
                               {"target", "mode", "epsilon", "T", "tau_step", "set"});
                const std::string target = get_string(
                    src, *obj, "target",
                    config.density.target == zetalab::Target::Zeta ? "zeta" : "log-zeta");
                if (target == "zeta") {
                    config.density.target = zetalab::Target::Zeta;
                } else if (target == "log-zeta") {
                    config.density.target = zetalab::Target::LogZeta;
                } else {
                    src.fail("target", "\"target\" must be \"zeta\" or \"log-zeta\"");
                }
                if (const json* mode = get_object(src, *obj, "mode"))
                    config.density.mode = parse_mode(src, *mode, config.density.mode);
                config.density.epsilon = get_number(src, *obj, "epsilon", config.density.epsilon);
                config.density.T = get_number(src, *obj, "T", config.density.T);
                config.density.tau_step = get_number(src, *obj, "tau_step", config.density.tau_step);
                if (const json* set = get_object(src, *obj, "set"))
                    config.density.K = parse_set(src, *set, config.density.K);
                break;
            }
            case Kind::Pipeline: {
                reject_unknown(src, *obj, "\"pipeline\"",
                               {"query", "set", "hit_count", "random_count", "seed"});
                if (const json* query = get_object(src, *obj, "query"))
                    config.pipeline.query = parse_query(src, *query, config.pipeline.query);
                if (const json* set = get_object(src, *obj, "set"))
                    config.pipeline.K = parse_set(src, *set, config.pipeline.K);
                config.pipeline.hit_count =
                    static_cast<int>(get_integer(src, *obj, "hit_count", config.pipeline.hit_count));
                config.pipeline.random_count = static_cast<int>(
                    get_integer(src, *obj, "random_count", config.pipeline.random_count));
                config.pipeline.seed = get_seed(src, *obj, "seed", config.pipeline.seed);
                break;
            }
            case Kind::RemarkDemo: {
                reject_unknown(src, *obj, "\"remark-demo\"",
                               {"set", "d", "tau_min", "tau_max", "tau_step"});
                if (const json* set = get_object(src, *obj, "set"))
                    config.remark.K = parse_set(src, *set, config.remark.K);
                config.remark.d = get_number(src, *obj, "d", config.remark.d);
                config.remark.tau_min = get_number(src, *obj, "tau_min", config.remark.tau_min);
                config.remark.tau_max = get_number(src, *obj, "tau_max", config.remark.tau_max);
                config.remark.tau_step = get_number(src, *obj, "tau_step", config.remark.tau_step);
                break;
            }
        }
    }

    try {
        config.validate();
    } catch (const ConfigError& e) {
        src.fail(root.contains(section) ? section : std::string("kind"), e.what());
    }
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw ConfigError("cannot open config file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

namespace {

json shift_json(const zetalab::RationalShift& shift) {
    return json::array({shift.a(), shift.b()});
}

json rect_json(const zetalab::RectRegion& rect) {
    return json{{"sigma_min", rect.sigma_min},
                {"sigma_max", rect.sigma_max},
                {"t_min", rect.t_min},
                {"t_max", rect.t_max}};
}

json set_json(const zetalab::CompactSetSpec& spec) {
    if (spec.shape == zetalab::CompactSetSpec::Shape::Disk)
        return json{{"shape", "disk"},
                    {"center", json::array({spec.center.real(), spec.center.imag()})},
                    {"radius", spec.radius},
                    {"grid_points", spec.grid_points}};
    return json{{"shape", "rectangle"}, {"rect", rect_json(spec.rect)},
                {"grid_points", spec.grid_points}};
}

json mode_json(const zetalab::ShiftMode& mode) {
    switch (mode.kind) {
        case zetalab::ShiftMode::Kind::Rational:
            return json{{"kind", "rational"}, {"shift", shift_json(mode.shift)}};
        case zetalab::ShiftMode::Kind::Real:
            return json{{"kind", "real"}, {"d", mode.d_real}};
        case zetalab::ShiftMode::Kind::Bagchi:
            return json{{"kind", "bagchi"}};
    }
    throw ConfigError("mode_json: unhandled mode kind");
}

json query_json(const zetalab::KroneckerQuery& query) {
    return json{{"z", query.z},
                {"shift", shift_json(query.shift)},
                {"delta", query.delta},
                {"T", query.T},
                {"step", query.step}};
}

}  // namespace

json serialize_config(const ExperimentConfig& config) {
    json root;
    root["schema"] = "v1";
    root["kind"] = kind_name(config.kind);
    root["params"] = json{{"series_terms_n", config.params.series_terms_n},
                          {"bernoulli_order", config.params.bernoulli_order},
                          {"target_abs_err", config.params.target_abs_err}};
    switch (config.kind) {
        case Kind::Eval:
            root["eval"] = json{{"sigma", config.eval_s.real()}, {"t", config.eval_s.imag()}};
            break;
        case Kind::Zeros:
            root["zeros"] = rect_json(config.zeros_region);
            break;
        case Kind::BoundSweep: {
            json shifts = json::array();
            for (const auto& s : config.sweep.shifts) shifts.push_back(shift_json(s));
            root["bound-sweep"] = json{{"count", config.sweep.count},
                                       {"seed", config.sweep.seed},
                                       {"sigma_min", config.sweep.sigma_min},
                                       {"sigma_max", config.sweep.sigma_max},
                                       {"t_max", config.sweep.t_max},
                                       {"z_values", config.sweep.z_values},
                                       {"shifts", shifts}};
            break;
        }
        case Kind::Kronecker:
            root["kronecker"] = query_json(config.kronecker);
            break;
        case Kind::Density:
            root["density"] =
                json{{"target", config.density.target == zetalab::Target::Zeta ? "zeta"
                                                                               : "log-zeta"},
                     {"mode", mode_json(config.density.mode)},
                     {"epsilon", config.density.epsilon},
                     {"T", config.density.T},
                     {"tau_step", config.density.tau_step},
                     {"set", set_json(config.density.K)}};
            break;
        case Kind::Pipeline:
            root["pipeline"] = json{{"query", query_json(config.pipeline.query)},
                                    {"set", set_json(config.pipeline.K)},
                                    {"hit_count", config.pipeline.hit_count},
                                    {"random_count", config.pipeline.random_count},
                                    {"seed", config.pipeline.seed}};
            break;
        case Kind::RemarkDemo:
            root["remark-demo"] = json{{"set", set_json(config.remark.K)},
                                       {"d", config.remark.d},
                                       {"tau_min", config.remark.tau_min},
                                       {"tau_max", config.remark.tau_max},
                                       {"tau_step", config.remark.tau_step}};
            break;
    }
    return root;
}

namespace {

bool same_params(const zetalab::EvalParams& x, const zetalab::EvalParams& y) {
    return x.series_terms_n == y.series_terms_n && x.bernoulli_order == y.bernoulli_order &&
           x.target_abs_err == y.target_abs_err;
}

bool same_rect(const zetalab::RectRegion& x, const zetalab::RectRegion& y) {
    return x.sigma_min == y.sigma_min && x.sigma_max == y.sigma_max && x.t_min == y.t_min &&
           x.t_max == y.t_max;
}

bool same_set(const zetalab::CompactSetSpec& x, const zetalab::CompactSetSpec& y) {
    if (x.shape != y.shape || x.grid_points != y.grid_points) return false;
    if (x.shape == zetalab::CompactSetSpec::Shape::Disk)
        return x.center == y.center && x.radius == y.radius;
    return same_rect(x.rect, y.rect);
}

bool same_mode(const zetalab::ShiftMode& x, const zetalab::ShiftMode& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case zetalab::ShiftMode::Kind::Rational: return x.shift == y.shift;
        case zetalab::ShiftMode::Kind::Real: return x.d_real == y.d_real;
        case zetalab::ShiftMode::Kind::Bagchi: return true;
    }
    return false;
}

bool same_query(const zetalab::KroneckerQuery& x, const zetalab::KroneckerQuery& y) {
    return x.z == y.z && x.shift == y.shift && x.delta == y.delta && x.T == y.T &&
           x.step == y.step;
}

}  // namespace

bool operator==(const ExperimentConfig& lhs, const ExperimentConfig& rhs) {
    if (lhs.kind != rhs.kind || !same_params(lhs.params, rhs.params)) return false;
    switch (lhs.kind) {
        case Kind::Eval: return lhs.eval_s == rhs.eval_s;
        case Kind::Zeros: return same_rect(lhs.zeros_region, rhs.zeros_region);
        case Kind::BoundSweep:
            return lhs.sweep.count == rhs.sweep.count && lhs.sweep.seed == rhs.sweep.seed &&
                   lhs.sweep.sigma_min == rhs.sweep.sigma_min &&
                   lhs.sweep.sigma_max == rhs.sweep.sigma_max &&
                   lhs.sweep.t_max == rhs.sweep.t_max &&
                   lhs.sweep.z_values == rhs.sweep.z_values &&
                   lhs.sweep.shifts == rhs.sweep.shifts;
        case Kind::Kronecker: return same_query(lhs.kronecker, rhs.kronecker);
        case Kind::Density:
            return lhs.density.target == rhs.density.target &&
                   same_mode(lhs.density.mode, rhs.density.mode) &&
                   lhs.density.epsilon == rhs.density.epsilon && lhs.density.T == rhs.density.T &&
                   lhs.density.tau_step == rhs.density.tau_step &&
                   same_set(lhs.density.K, rhs.density.K);
        case Kind::Pipeline:
            return same_query(lhs.pipeline.query, rhs.pipeline.query) &&
                   same_set(lhs.pipeline.K, rhs.pipeline.K) &&
                   lhs.pipeline.hit_count == rhs.pipeline.hit_count &&
                   lhs.pipeline.random_count == rhs.pipeline.random_count &&
                   lhs.pipeline.seed == rhs.pipeline.seed;
        case Kind::RemarkDemo:
            return same_set(lhs.remark.K, rhs.remark.K) && lhs.remark.d == rhs.remark.d &&
                   lhs.remark.tau_min == rhs.remark.tau_min &&
                   lhs.remark.tau_max == rhs.remark.tau_max &&
                   lhs.remark.tau_step == rhs.remark.tau_step;
    }
    return false;
}

}  // namespace lab
