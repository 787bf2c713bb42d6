#include "spso_ipf/outputs.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "spso_ipf/scenario_json.hpp"

namespace spso_ipf::cli {

using nlohmann::ordered_json;

namespace {

std::string g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

ordered_json json_metric(double v) {
    // nlohmann serializes non-finite numbers as null already; keep the value.
    return ordered_json(v);
}

ordered_json metrics_fields(const sim::PathMetrics& m) {
    ordered_json j;
    j["length"] = json_metric(m.length);
    j["smoothness"] = json_metric(m.smoothness);
    j["max_turn_rate"] = json_metric(m.max_turn_rate);
    j["min_clearance"] = json_metric(m.min_clearance);
    j["epochs"] = m.epochs;
    j["success"] = m.success;
    return j;
}

ordered_json aggregate_json(const sim::Aggregate& a) {
    return ordered_json{{"mean", json_metric(a.mean)},
                        {"min", json_metric(a.min)},
                        {"max", json_metric(a.max)}};
}

}  // namespace

std::string trace_csv(const sim::PlanTrace& trace) {
    std::ostringstream out;
    out << "epoch,x,y,heading,gbest_fitness";
    const std::size_t num_obstacles =
        trace.records.empty() ? 0 : trace.records.front().obstacle_positions.size();
    for (std::size_t i = 0; i < num_obstacles; ++i) {
        out << ",obs" << i << "_x,obs" << i << "_y";
    }
    out << "\n";
    for (const sim::EpochRecord& record : trace.records) {
        out << record.epoch << ',' << g9(record.robot.position.x) << ','
            << g9(record.robot.position.y) << ',' << g9(record.robot.heading) << ','
            << g9(record.gbest_fitness);
        for (const Vec2& p : record.obstacle_positions) {
            out << ',' << g9(p.x) << ',' << g9(p.y);
        }
        out << "\n";
    }
    return out.str();
}

ordered_json metrics_json(const sim::PathMetrics& metrics, sim::Termination termination,
                          const sim::Scenario& scenario, const std::string& scenario_path,
                          sim::Algorithm algorithm, std::uint64_t seed,
                          const std::vector<std::string>& overrides) {
    ordered_json j;
    j["metrics"] = metrics_fields(metrics);
    j["termination"] = sim::to_string(termination);
    ordered_json config;
    config["scenario_path"] = scenario_path;
    config["algorithm"] = sim::to_string(algorithm);
    config["seed"] = seed;
    config["overrides"] = overrides;
    config["scenario"] = scenario_to_json(scenario);
    j["config"] = std::move(config);
    return j;
}

std::string comparison_csv(const sim::ComparisonTable& table) {
    std::ostringstream out;
    out << "algorithm,seed,termination,success,length,smoothness,max_turn_rate,"
           "min_clearance,epochs\n";
    for (const sim::ComparisonRow& row : table.rows) {
        out << sim::to_string(row.algorithm) << ',' << row.seed << ',';
        if (!row.error.empty()) {
            out << "Error,0,,,,,\n";
            continue;
        }
        out << sim::to_string(row.termination) << ',' << (row.metrics.success ? 1 : 0) << ','
            << g9(row.metrics.length) << ',' << g9(row.metrics.smoothness) << ','
            << g9(row.metrics.max_turn_rate) << ',' << g9(row.metrics.min_clearance) << ','
            << row.metrics.epochs << "\n";
    }
    return out.str();
}

ordered_json summary_json(const sim::ComparisonTable& table, const std::string& scenario_path,
                          const std::vector<std::uint64_t>& seeds) {
    ordered_json j;
    j["scenario_path"] = scenario_path;
    j["seeds"] = seeds;
    ordered_json algorithms = ordered_json::object();
    for (const sim::AlgorithmSummary& s : table.summaries) {
        ordered_json a;
        a["runs"] = s.runs;
        a["success_rate"] = s.success_rate;
        a["length"] = aggregate_json(s.length);
        a["smoothness"] = aggregate_json(s.smoothness);
        a["max_turn_rate"] = aggregate_json(s.max_turn_rate);
        a["min_clearance"] = aggregate_json(s.min_clearance);
        a["epochs"] = aggregate_json(s.epochs);
        algorithms[sim::to_string(s.algorithm)] = std::move(a);
    }
    j["algorithms"] = std::move(algorithms);
    return j;
}

namespace {

// World-to-SVG mapping with the y axis flipped so plots read like standard
// x/y figures.
struct SvgFrame {
    double scale;
    double margin = 20.0;
    double width, height;
    Rect world;

    explicit SvgFrame(const Rect& ws) : world(ws) {
        const double usable = 760.0;
        scale = usable / std::max(ws.width(), ws.height());
        width = ws.width() * scale + 2.0 * margin;
        height = ws.height() * scale + 2.0 * margin;
    }
    double x(double wx) const { return margin + (wx - world.min.x) * scale; }
    double y(double wy) const { return margin + (world.max.y - wy) * scale; }
};

std::string f2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

void svg_open(std::ostringstream& out, const SvgFrame& frame) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << f2(frame.width) << ' '
        << f2(frame.height) << "\">\n"
        << "<rect x=\"" << f2(frame.x(frame.world.min.x)) << "\" y=\""
        << f2(frame.y(frame.world.max.y)) << "\" width=\"" << f2(frame.world.width() * frame.scale)
        << "\" height=\"" << f2(frame.world.height() * frame.scale)
        << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
}

void svg_polyline(std::ostringstream& out, const SvgFrame& frame, const std::vector<Vec2>& pts,
                  const std::string& stroke, double width, double opacity) {
    if (pts.size() < 2) {
        return;
    }
    out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << f2(width)
        << "\" stroke-opacity=\"" << f2(opacity)
        << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) {
            out << ' ';
        }
        out << f2(frame.x(pts[i].x)) << ',' << f2(frame.y(pts[i].y));
    }
    out << "\"/>\n";
}

void svg_obstacles(std::ostringstream& out, const SvgFrame& frame, const sim::PlanTrace& trace,
                   const sim::Scenario& scenario) {
    const std::size_t n = scenario.obstacles.size();
    // Motion trails first ("cream tubes"), then the discs at their final pose.
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Vec2> trail;
        trail.reserve(trace.records.size());
        for (const sim::EpochRecord& r : trace.records) {
            trail.push_back(r.obstacle_positions[i]);
        }
        svg_polyline(out, frame, trail, "#efe0c0",
                     2.0 * scenario.obstacles[i].radius * frame.scale, 0.8);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = trace.records.empty() ? scenario.obstacles[i].position
                                             : trace.records.back().obstacle_positions[i];
        out << "<circle cx=\"" << f2(frame.x(p.x)) << "\" cy=\"" << f2(frame.y(p.y)) << "\" r=\""
            << f2(scenario.obstacles[i].radius * frame.scale)
            << "\" fill=\"#d64545\" fill-opacity=\"0.85\" stroke=\"#7a1f1f\" "
               "stroke-width=\"1\"/>\n";
    }
}

void svg_star(std::ostringstream& out, const SvgFrame& frame, const Vec2& at) {
    const double cx = frame.x(at.x);
    const double cy = frame.y(at.y);
    const double outer = 10.0;
    const double inner = 4.0;
    out << "<polygon fill=\"#e2b007\" stroke=\"#8a6d00\" stroke-width=\"1\" points=\"";
    for (int k = 0; k < 10; ++k) {
        const double r = (k % 2 == 0) ? outer : inner;
        const double a = -kPi / 2.0 + k * kPi / 5.0;
        if (k > 0) {
            out << ' ';
        }
        out << f2(cx + r * std::cos(a)) << ',' << f2(cy + r * std::sin(a));
    }
    out << "\"/>\n";
}

std::vector<Vec2> robot_path(const sim::PlanTrace& trace) {
    std::vector<Vec2> path;
    path.reserve(trace.records.size());
    for (const sim::EpochRecord& r : trace.records) {
        path.push_back(r.robot.position);
    }
    return path;
}

}  // namespace

std::string path_svg(const sim::PlanTrace& trace, const sim::Scenario& scenario) {
    SvgFrame frame(scenario.workspace);
    std::ostringstream out;
    svg_open(out, frame);
    svg_obstacles(out, frame, trace, scenario);
    svg_polyline(out, frame, robot_path(trace), "#e2b007", 2.5, 1.0);
    out << "<circle cx=\"" << f2(frame.x(scenario.start.x)) << "\" cy=\""
        << f2(frame.y(scenario.start.y))
        << "\" r=\"5\" fill=\"#2f8f2f\" stroke=\"#145214\" stroke-width=\"1\"/>\n";
    svg_star(out, frame, scenario.goal);
    out << "</svg>\n";
    return out.str();
}

std::string overlay_svg(const std::vector<std::pair<sim::Algorithm, sim::PlanTrace>>& traces,
                        const sim::Scenario& scenario) {
    static const char* kColors[] = {"#e2b007", "#2f6fb3", "#8a4fb3"};
    SvgFrame frame(scenario.workspace);
    std::ostringstream out;
    svg_open(out, frame);
    if (!traces.empty()) {
        svg_obstacles(out, frame, traces.front().second, scenario);
    }
    double legend_y = frame.y(frame.world.max.y) + 16.0;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const char* color = kColors[i % 3];
        svg_polyline(out, frame, robot_path(traces[i].second), color, 2.5, 1.0);
        out << "<text x=\"" << f2(frame.x(frame.world.min.x) + 8.0) << "\" y=\"" << f2(legend_y)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
            << sim::to_string(traces[i].first) << "</text>\n";
        legend_y += 14.0;
    }
    out << "<circle cx=\"" << f2(frame.x(scenario.start.x)) << "\" cy=\""
        << f2(frame.y(scenario.start.y))
        << "\" r=\"5\" fill=\"#2f8f2f\" stroke=\"#145214\" stroke-width=\"1\"/>\n";
    svg_star(out, frame, scenario.goal);
    out << "</svg>\n";
    return out.str();
}

}  // namespace spso_ipf::cli
