#include "tspsd/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace tspsd {

namespace {

struct Frame {
    double lo_x, lo_y, scale;
    int size;
    double margin = 20.0;

    double x(double v) const { return margin + (v - lo_x) * scale; }
    double y(double v) const { return size - margin - (v - lo_y) * scale; }
};

Frame frame_for(const Instance& inst, int size)
{
    double lo_x = 0.0, lo_y = 0.0, hi_x = 1.0, hi_y = 1.0;
    auto grow = [&](Point2 p) {
        lo_x = std::min(lo_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_x = std::max(hi_x, p.x);
        hi_y = std::max(hi_y, p.y);
    };
    for (auto p : inst.customers) {
        grow(p);
    }
    for (auto p : inst.drone_bases) {
        grow(p);
    }
    const double span = std::max(hi_x - lo_x, hi_y - lo_y);
    return Frame{lo_x, lo_y, (size - 40.0) / span, size};
}

std::string fmt(const char* pattern, double a, double b)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

}  // namespace

std::string render_svg(const Instance& inst, const Plan& plan, int size_px)
{
    const Frame f = frame_for(inst, size_px);
    auto at = [&](Point2 p) { return fmt("%.2f,%.2f", f.x(p.x), f.y(p.y)); };

    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(size_px) + "\" height=\""
                  + std::to_string(size_px) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto& t : plan.drone_trips) {
        // base -> center -> z1 -> center -> z2 ... -> base
        std::string pts = at(inst.drone_bases[t.drone]) + " " + at(t.center);
        for (std::size_t k = 0; k < t.visits.size(); ++k) {
            pts += " " + at(inst.customers[t.visits[k]]);
            if (k + 1 < t.visits.size()) {
                pts += " " + at(t.center);
            }
        }
        pts += " " + at(inst.drone_bases[t.drone]);
        s += "<polyline points=\"" + pts
           + "\" fill=\"none\" stroke=\"#3a7bd5\" stroke-width=\"0.8\" stroke-dasharray=\"3,2\"/>\n";
    }
    if (plan.truck_stops.size() >= 2) {
        std::string pts;
        for (const auto& stop : plan.truck_stops) {
            pts += at(stop.location) + " ";
        }
        s += "<polygon points=\"" + pts + "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
    }
    for (auto p : inst.drone_bases) {
        s += "<rect x=\"" + fmt("%.2f\" y=\"%.2f", f.x(p.x) - 3, f.y(p.y) - 3)
           + "\" width=\"6\" height=\"6\" fill=\"#27ae60\"/>\n";
    }
    for (auto p : inst.customers) {
        s += "<circle cx=\"" + fmt("%.2f\" cy=\"%.2f", f.x(p.x), f.y(p.y)) + "\" r=\"3\" fill=\"#333\"/>\n";
    }
    for (const auto& stop : plan.truck_stops) {
        s += "<circle cx=\"" + fmt("%.2f\" cy=\"%.2f", f.x(stop.location.x), f.y(stop.location.y))
           + "\" r=\"6\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace tspsd
