#include "pik/render.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pik/json_util.hpp"

namespace pik {
namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

const char* body_fill(const PuzzleSpec& puzzle, const BodySpec& body) {
    if (body.id == kActionBodyId) return "#d62728";  // placed action object
    if (const auto* region = std::get_if<RegionGoal>(&puzzle.goal)) {
        if (body.id == region->target) return "#1f77b4";
    } else {
        const auto& contact = std::get<ContactGoal>(puzzle.goal);
        if (body.id == contact.body_a) return "#2ca02c";
        if (body.id == contact.body_b) return "#1f77b4";
    }
    return body.dynamic ? "#9467bd" : "#7f7f7f";
}

}  // namespace

std::string scene_svg(const PuzzleSpec& puzzle, const SceneState& state) {
    const double x0 = puzzle.action_space.x_range[0];
    const double x1 = puzzle.action_space.x_range[1];
    const double y0 = puzzle.action_space.y_range[0];
    const double y1 = puzzle.action_space.y_range[1];
    const double pad = 0.05 * std::max(x1 - x0, y1 - y0);
    const double w = (x1 - x0) + 2 * pad;
    const double h = (y1 - y0) + 2 * pad;
    // World y points up; SVG y points down.
    const auto sx = [&](double x) { return x - x0 + pad; };
    const auto sy = [&](double y) { return (y1 + pad) - y; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\""
        << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n";
    svg << "  <rect x=\"0\" y=\"0\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
        << "\" fill=\"#ffffff\"/>\n";

    if (const auto* region = std::get_if<RegionGoal>(&puzzle.goal)) {
        svg << "  <rect x=\"" << fmt(sx(region->x0)) << "\" y=\"" << fmt(sy(region->y1))
            << "\" width=\"" << fmt(region->x1 - region->x0) << "\" height=\""
            << fmt(region->y1 - region->y0)
            << "\" fill=\"#2ca02c\" fill-opacity=\"0.3\" stroke=\"#2ca02c\"/>\n";
    }

    for (const BodySpec& body : state.bodies) {
        const char* fill = body_fill(puzzle, body);
        if (const auto* c = std::get_if<CircleShape>(&body.shape)) {
            svg << "  <circle cx=\"" << fmt(sx(body.position.x)) << "\" cy=\""
                << fmt(sy(body.position.y)) << "\" r=\"" << fmt(c->radius) << "\" fill=\"" << fill
                << "\"/>\n";
        } else if (const auto* p = std::get_if<PolygonShape>(&body.shape)) {
            svg << "  <polygon points=\"";
            for (std::size_t i = 0; i < p->vertices.size(); ++i) {
                const Vec2 v = body.position + rotated(p->vertices[i], body.angle);
                svg << (i ? " " : "") << fmt(sx(v.x)) << "," << fmt(sy(v.y));
            }
            svg << "\" fill=\"" << fill << "\"/>\n";
        } else {
            const auto& s = std::get<SegmentShape>(body.shape);
            const Vec2 a = body.position + rotated(s.a, body.angle);
            const Vec2 b = body.position + rotated(s.b, body.angle);
            svg << "  <line x1=\"" << fmt(sx(a.x)) << "\" y1=\"" << fmt(sy(a.y)) << "\" x2=\""
                << fmt(sx(b.x)) << "\" y2=\"" << fmt(sy(b.y)) << "\" stroke=\"" << fill
                << "\" stroke-width=\"2\"/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

RenderSummary render_rollout(const PuzzleSpec& puzzle, const Action& action,
                             const std::string& out_dir, int stride) {
    if (stride < 1) stride = 1;
    const ExecuteResult result = execute(puzzle, action, std::nullopt, /*collect_states=*/true);

    std::filesystem::create_directories(out_dir);
    RenderSummary summary;
    for (std::size_t i = 0; i < result.trajectory.states.size();
         i += static_cast<std::size_t>(stride)) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%06zu.svg", i);
        std::ofstream out(std::filesystem::path(out_dir) / name);
        out << scene_svg(puzzle, result.trajectory.states[i]);
        ++summary.frames_written;
    }

    summary.success = result.trajectory.success;
    summary.closest_distance = result.trajectory.closest_distance;
    summary.score = result.score;

    jsonutil::ordered_json doc;
    doc["puzzle"] = puzzle.name;
    doc["frames"] = summary.frames_written;
    doc["stride"] = stride;
    doc["success"] = summary.success;
    doc["closest_distance"] = summary.closest_distance;
    doc["score"] = summary.score;
    if (result.trajectory.solved_at_t)
        doc["solved_at_t"] = *result.trajectory.solved_at_t;
    else
        doc["solved_at_t"] = nullptr;
    std::ofstream out(std::filesystem::path(out_dir) / "summary.json");
    out << doc.dump(2) << "\n";
    return summary;
}

}  // namespace pik
