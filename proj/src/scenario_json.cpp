#include "spso_ipf/scenario_json.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace spso_ipf::cli {

using nlohmann::ordered_json;

namespace {

// DOM parse that rejects duplicate object keys (nlohmann silently keeps the
// last one otherwise).
ordered_json parse_strict(const std::string& text) {
    std::vector<std::set<std::string>> key_stack;
    const auto callback = [&](int /*depth*/, ordered_json::parse_event_t event,
                              ordered_json& parsed) {
        switch (event) {
            case ordered_json::parse_event_t::object_start:
                key_stack.emplace_back();
                break;
            case ordered_json::parse_event_t::object_end:
                key_stack.pop_back();
                break;
            case ordered_json::parse_event_t::key: {
                const std::string key = parsed.get<std::string>();
                if (!key_stack.back().insert(key).second) {
                    throw ParseError("duplicate field \"" + key + "\"");
                }
                break;
            }
            default:
                break;
        }
        return true;
    };
    try {
        return ordered_json::parse(text, callback);
    } catch (const ordered_json::parse_error& e) {
        throw ParseError(e.what());
    }
}

void reject_unknown(const ordered_json& obj, const std::set<std::string>& allowed,
                    const std::string& path) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ParseError(path + ": unknown field \"" + item.key() + "\"");
        }
    }
}

const ordered_json& require(const ordered_json& obj, const std::string& key,
                            const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(path + ": missing required field \"" + key + "\"");
    }
    return *it;
}

double read_number(const ordered_json& j, const std::string& path) {
    if (!j.is_number()) {
        throw ParseError(path + ": expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ParseError(path + ": number must be finite");
    }
    return v;
}

int read_int(const ordered_json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        throw ParseError(path + ": expected an integer");
    }
    return j.get<int>();
}

bool read_bool(const ordered_json& j, const std::string& path) {
    if (!j.is_boolean()) {
        throw ParseError(path + ": expected a boolean");
    }
    return j.get<bool>();
}

std::string read_string(const ordered_json& j, const std::string& path) {
    if (!j.is_string()) {
        throw ParseError(path + ": expected a string");
    }
    return j.get<std::string>();
}

Vec2 read_vec2(const ordered_json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError(path + ": expected [x, y]");
    }
    return {read_number(j[0], path + "[0]"), read_number(j[1], path + "[1]")};
}

sim::MotionScript read_motion(const ordered_json& j, const std::string& path) {
    sim::MotionScript motion;
    if (!j.is_object()) {
        throw ParseError(path + ": expected an object");
    }
    const std::string type = read_string(require(j, "type", path), path + ".type");
    if (type == "static") {
        reject_unknown(j, {"type"}, path);
        motion.type = sim::MotionType::Static;
    } else if (type == "velocity") {
        reject_unknown(j, {"type", "velocity"}, path);
        motion.type = sim::MotionType::ConstantVelocity;
        motion.velocity = read_vec2(require(j, "velocity", path), path + ".velocity");
    } else if (type == "waypoints") {
        reject_unknown(j, {"type", "points", "speed"}, path);
        motion.type = sim::MotionType::Waypoints;
        const ordered_json& points = require(j, "points", path);
        if (!points.is_array()) {
            throw ParseError(path + ".points: expected an array of [x, y]");
        }
        for (std::size_t i = 0; i < points.size(); ++i) {
            motion.waypoints.push_back(
                read_vec2(points[i], path + ".points[" + std::to_string(i) + "]"));
        }
        motion.speed = read_number(require(j, "speed", path), path + ".speed");
    } else {
        throw ParseError(path + ".type: must be \"static\", \"velocity\" or \"waypoints\"");
    }
    return motion;
}

void read_knowledge(const ordered_json& j, const std::string& path, sim::ObstacleSpec& spec) {
    if (!j.is_object()) {
        throw ParseError(path + ": expected an object");
    }
    const std::string type = read_string(require(j, "type", path), path + ".type");
    if (type == "exact") {
        reject_unknown(j, {"type"}, path);
        spec.knowledge = VelocityKnowledge::Exact;
    } else if (type == "max_speed") {
        reject_unknown(j, {"type", "max_speed"}, path);
        spec.knowledge = VelocityKnowledge::MaxSpeed;
        spec.max_speed = read_number(require(j, "max_speed", path), path + ".max_speed");
    } else if (type == "unknown") {
        reject_unknown(j, {"type"}, path);
        spec.knowledge = VelocityKnowledge::Unknown;
    } else {
        throw ParseError(path + ".type: must be \"exact\", \"max_speed\" or \"unknown\"");
    }
}

}  // namespace

sim::Scenario parse_scenario(const std::string& text) {
    const ordered_json doc = parse_strict(text);
    if (!doc.is_object()) {
        throw ParseError("scenario: top level must be an object");
    }
    reject_unknown(doc,
                   {"workspace", "start", "goal", "goal_tolerance", "robot", "limits",
                    "obstacles", "ipf", "pso", "sim", "objective", "seed"},
                   "scenario");

    sim::Scenario sc;

    const ordered_json& ws = require(doc, "workspace", "scenario");
    reject_unknown(ws, {"min", "max"}, "workspace");
    sc.workspace.min = read_vec2(require(ws, "min", "workspace"), "workspace.min");
    sc.workspace.max = read_vec2(require(ws, "max", "workspace"), "workspace.max");

    sc.start = read_vec2(require(doc, "start", "scenario"), "start");
    sc.goal = read_vec2(require(doc, "goal", "scenario"), "goal");

    if (doc.contains("goal_tolerance")) {
        sc.goal_tolerance = read_number(doc["goal_tolerance"], "goal_tolerance");
    }
    if (doc.contains("robot")) {
        const ordered_json& robot = doc["robot"];
        reject_unknown(robot, {"radius"}, "robot");
        if (robot.contains("radius")) {
            sc.robot_radius = read_number(robot["radius"], "robot.radius");
        }
    }
    if (doc.contains("limits")) {
        const ordered_json& limits = doc["limits"];
        reject_unknown(limits, {"v_max", "omega_max"}, "limits");
        if (limits.contains("v_max")) {
            sc.limits.v_max = read_number(limits["v_max"], "limits.v_max");
        }
        if (limits.contains("omega_max")) {
            sc.limits.omega_max = read_number(limits["omega_max"], "limits.omega_max");
        }
    }
    if (doc.contains("obstacles")) {
        const ordered_json& obstacles = doc["obstacles"];
        if (!obstacles.is_array()) {
            throw ParseError("obstacles: expected an array");
        }
        for (std::size_t i = 0; i < obstacles.size(); ++i) {
            const std::string path = "obstacles[" + std::to_string(i) + "]";
            const ordered_json& o = obstacles[i];
            if (!o.is_object()) {
                throw ParseError(path + ": expected an object");
            }
            reject_unknown(o, {"position", "radius", "motion", "knowledge"}, path);
            sim::ObstacleSpec spec;
            spec.position = read_vec2(require(o, "position", path), path + ".position");
            spec.radius = read_number(require(o, "radius", path), path + ".radius");
            if (o.contains("motion")) {
                spec.motion = read_motion(o["motion"], path + ".motion");
            }
            if (o.contains("knowledge")) {
                read_knowledge(o["knowledge"], path + ".knowledge", spec);
            }
            sc.obstacles.push_back(std::move(spec));
        }
    }
    if (doc.contains("ipf")) {
        const ordered_json& ipf = doc["ipf"];
        reject_unknown(ipf, {"epsilon", "eta", "n", "d_goal_star", "d01", "epsilon0"}, "ipf");
        if (ipf.contains("epsilon")) sc.ipf.epsilon = read_number(ipf["epsilon"], "ipf.epsilon");
        if (ipf.contains("eta")) sc.ipf.eta = read_number(ipf["eta"], "ipf.eta");
        if (ipf.contains("n")) sc.ipf.n = read_number(ipf["n"], "ipf.n");
        if (ipf.contains("d_goal_star")) {
            sc.ipf.d_goal_star = read_number(ipf["d_goal_star"], "ipf.d_goal_star");
        }
        if (ipf.contains("d01")) sc.ipf.d01 = read_number(ipf["d01"], "ipf.d01");
        if (ipf.contains("epsilon0")) {
            sc.ipf.epsilon0 = read_number(ipf["epsilon0"], "ipf.epsilon0");
        }
    }
    if (doc.contains("pso")) {
        const ordered_json& pso = doc["pso"];
        reject_unknown(pso,
                       {"num_particles", "max_iterations", "w", "c1", "c2", "target_fitness",
                        "per_dimension_r"},
                       "pso");
        if (pso.contains("num_particles")) {
            sc.pso.num_particles = read_int(pso["num_particles"], "pso.num_particles");
        }
        if (pso.contains("max_iterations")) {
            sc.pso.max_iterations = read_int(pso["max_iterations"], "pso.max_iterations");
        }
        if (pso.contains("w")) sc.pso.w = read_number(pso["w"], "pso.w");
        if (pso.contains("c1")) sc.pso.c1 = read_number(pso["c1"], "pso.c1");
        if (pso.contains("c2")) sc.pso.c2 = read_number(pso["c2"], "pso.c2");
        if (pso.contains("target_fitness") && !pso["target_fitness"].is_null()) {
            sc.pso.target_fitness = read_number(pso["target_fitness"], "pso.target_fitness");
        }
        if (pso.contains("per_dimension_r")) {
            sc.pso.per_dimension_r = read_bool(pso["per_dimension_r"], "pso.per_dimension_r");
        }
    }
    if (doc.contains("sim")) {
        const ordered_json& s = doc["sim"];
        reject_unknown(s, {"dt", "max_epochs"}, "sim");
        if (s.contains("dt")) sc.dt = read_number(s["dt"], "sim.dt");
        if (s.contains("max_epochs")) sc.max_epochs = read_int(s["max_epochs"], "sim.max_epochs");
    }
    if (doc.contains("objective")) {
        const ordered_json& obj = doc["objective"];
        reject_unknown(obj, {"one_sided_penalties"}, "objective");
        if (obj.contains("one_sided_penalties")) {
            sc.one_sided_penalties =
                read_bool(obj["one_sided_penalties"], "objective.one_sided_penalties");
        }
    }
    if (doc.contains("seed")) {
        const ordered_json& seed = doc["seed"];
        if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
            throw ParseError("seed: expected a non-negative integer");
        }
        if (seed.is_number_integer() && seed.get<std::int64_t>() < 0) {
            throw ParseError("seed: expected a non-negative integer");
        }
        sc.pso.seed = seed.get<std::uint64_t>();
    }

    sc.validate();
    return sc;
}

sim::Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read scenario file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

nlohmann::ordered_json scenario_to_json(const sim::Scenario& sc) {
    ordered_json doc;
    doc["workspace"] = {{"min", {sc.workspace.min.x, sc.workspace.min.y}},
                        {"max", {sc.workspace.max.x, sc.workspace.max.y}}};
    doc["start"] = {sc.start.x, sc.start.y};
    doc["goal"] = {sc.goal.x, sc.goal.y};
    doc["goal_tolerance"] = sc.goal_tolerance;
    doc["robot"] = {{"radius", sc.robot_radius}};
    doc["limits"] = {{"v_max", sc.limits.v_max}, {"omega_max", sc.limits.omega_max}};
    doc["obstacles"] = ordered_json::array();
    for (const sim::ObstacleSpec& spec : sc.obstacles) {
        ordered_json o;
        o["position"] = {spec.position.x, spec.position.y};
        o["radius"] = spec.radius;
        switch (spec.motion.type) {
            case sim::MotionType::Static:
                o["motion"] = {{"type", "static"}};
                break;
            case sim::MotionType::ConstantVelocity:
                o["motion"] = {{"type", "velocity"},
                               {"velocity", {spec.motion.velocity.x, spec.motion.velocity.y}}};
                break;
            case sim::MotionType::Waypoints: {
                ordered_json points = ordered_json::array();
                for (const Vec2& wp : spec.motion.waypoints) {
                    points.push_back({wp.x, wp.y});
                }
                o["motion"] = {{"type", "waypoints"}, {"points", points},
                               {"speed", spec.motion.speed}};
                break;
            }
        }
        switch (spec.knowledge) {
            case VelocityKnowledge::Exact:
                o["knowledge"] = {{"type", "exact"}};
                break;
            case VelocityKnowledge::MaxSpeed:
                o["knowledge"] = {{"type", "max_speed"}, {"max_speed", spec.max_speed}};
                break;
            case VelocityKnowledge::Unknown:
                o["knowledge"] = {{"type", "unknown"}};
                break;
        }
        doc["obstacles"].push_back(std::move(o));
    }
    doc["ipf"] = {{"epsilon", sc.ipf.epsilon},   {"eta", sc.ipf.eta},
                  {"n", sc.ipf.n},               {"d_goal_star", sc.ipf.d_goal_star},
                  {"d01", sc.ipf.d01},           {"epsilon0", sc.ipf.epsilon0}};
    doc["pso"] = {{"num_particles", sc.pso.num_particles},
                  {"max_iterations", sc.pso.max_iterations},
                  {"w", sc.pso.w},
                  {"c1", sc.pso.c1},
                  {"c2", sc.pso.c2},
                  {"target_fitness",
                   sc.pso.target_fitness ? ordered_json(*sc.pso.target_fitness) : ordered_json()},
                  {"per_dimension_r", sc.pso.per_dimension_r}};
    doc["sim"] = {{"dt", sc.dt}, {"max_epochs", sc.max_epochs}};
    doc["objective"] = {{"one_sided_penalties", sc.one_sided_penalties}};
    doc["seed"] = sc.pso.seed;
    return doc;
}

void apply_override(sim::Scenario& sc, const std::string& key_value) {
    const std::size_t eq = key_value.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ValidationError("override must have the form key=value: " + key_value);
    }
    const std::string key = key_value.substr(0, eq);
    const std::string value = key_value.substr(eq + 1);

    const auto as_number = [&] {
        try {
            std::size_t used = 0;
            const double v = std::stod(value, &used);
            if (used != value.size() || !std::isfinite(v)) {
                throw std::invalid_argument(value);
            }
            return v;
        } catch (const std::exception&) {
            throw ValidationError("override " + key + ": \"" + value + "\" is not a number");
        }
    };
    const auto as_int = [&] {
        const double v = as_number();
        if (v != std::floor(v)) {
            throw ValidationError("override " + key + ": \"" + value + "\" is not an integer");
        }
        return static_cast<int>(v);
    };
    const auto as_bool = [&] {
        if (value == "true") return true;
        if (value == "false") return false;
        throw ValidationError("override " + key + ": \"" + value + "\" is not a boolean");
    };

    if (key == "seed") {
        try {
            sc.pso.seed = std::stoull(value);
        } catch (const std::exception&) {
            throw ValidationError("override seed: \"" + value + "\" is not an unsigned integer");
        }
    } else if (key == "goal_tolerance") {
        sc.goal_tolerance = as_number();
    } else if (key == "robot.radius") {
        sc.robot_radius = as_number();
    } else if (key == "limits.v_max") {
        sc.limits.v_max = as_number();
    } else if (key == "limits.omega_max") {
        sc.limits.omega_max = as_number();
    } else if (key == "ipf.epsilon") {
        sc.ipf.epsilon = as_number();
    } else if (key == "ipf.eta") {
        sc.ipf.eta = as_number();
    } else if (key == "ipf.n") {
        sc.ipf.n = as_number();
    } else if (key == "ipf.d_goal_star") {
        sc.ipf.d_goal_star = as_number();
    } else if (key == "ipf.d01") {
        sc.ipf.d01 = as_number();
    } else if (key == "ipf.epsilon0") {
        sc.ipf.epsilon0 = as_number();
    } else if (key == "pso.num_particles") {
        sc.pso.num_particles = as_int();
    } else if (key == "pso.max_iterations") {
        sc.pso.max_iterations = as_int();
    } else if (key == "pso.w") {
        sc.pso.w = as_number();
    } else if (key == "pso.c1") {
        sc.pso.c1 = as_number();
    } else if (key == "pso.c2") {
        sc.pso.c2 = as_number();
    } else if (key == "pso.target_fitness") {
        sc.pso.target_fitness = as_number();
    } else if (key == "pso.per_dimension_r") {
        sc.pso.per_dimension_r = as_bool();
    } else if (key == "sim.dt") {
        sc.dt = as_number();
    } else if (key == "sim.max_epochs") {
        sc.max_epochs = as_int();
    } else if (key == "objective.one_sided_penalties") {
        sc.one_sided_penalties = as_bool();
    } else {
        throw ValidationError("unknown override key: " + key);
    }
}

}  // namespace spso_ipf::cli
