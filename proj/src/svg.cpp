#include "elac/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "elac/sampling.hpp"

namespace elac {

namespace {

std::string num(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
    return std::string(buf, r.ptr);
}

struct Box {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    void add(PlanePoint p) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    bool empty() const { return x0 > x1; }
    double diagonal() const { return std::hypot(x1 - x0, y1 - y0); }
};

std::string xy(PlanePoint p) { return num(p.x) + "," + num(-p.y); }

}  // namespace

std::string export_svg(const Chain& chain, const SvgStyle& style) {
    const std::string head = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (chain.segments.empty())
        return head + "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\"/>\n";

    SampleSpec coarse;
    coarse.n = 64;
    Box box;
    for (const auto& p : sample_polyline(chain, coarse).points) box.add(p);
    const double diag = std::max(box.diagonal(), 1e-300);

    SampleSpec fine;
    fine.mode = SampleSpec::Mode::chord;
    fine.chord_tol = style.chord_tol.value_or(1e-3 * diag);
    const Polyline line = sample_polyline(chain, fine);
    for (const auto& p : line.points) box.add(p);

    const double d = box.diagonal();
    const double stroke = style.stroke_width > 0.0 ? style.stroke_width : 2e-3 * d;
    const double arrow = 0.08 * d;

    std::string body;
    body += "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" + num(stroke) + "\" d=\"M";
    for (std::size_t i = 0; i < line.points.size(); ++i) body += (i ? " L" : "") + xy(line.points[i]);
    body += "\"/>\n";

    auto marker = [&](PlanePoint p, const char* color) {
        box.add(p);
        body += "  <circle cx=\"" + num(p.x) + "\" cy=\"" + num(-p.y) + "\" r=\"" + num(3 * stroke) +
                "\" fill=\"" + color + "\"/>\n";
    };
    auto line_to = [&](PlanePoint p, PlaneVector v, const char* color) {
        const PlanePoint q = p + v;
        box.add(q);
        body += "  <line x1=\"" + num(p.x) + "\" y1=\"" + num(-p.y) + "\" x2=\"" + num(q.x) + "\" y2=\"" +
                num(-q.y) + "\" stroke=\"" + color + "\" stroke-width=\"" + num(stroke) + "\"/>\n";
    };

    if (style.control_points) {
        marker(chain.segments.front().a, "blue");
        for (const auto& s : chain.segments) marker(s.c, "blue");
    }
    if (style.tangent_arrows) {
        const Segment& first = chain.segments.front();
        line_to(first.a, arrow * evaluate_segment(first, 0.0).tangent, "red");
        for (const auto& s : chain.segments) line_to(s.c, arrow * evaluate_segment(s, 1.0).tangent, "gray");
    }
    if (style.joint_markers && chain.segments.size() > 1) {
        const ContinuityReport rep = verify_continuity(chain);
        for (std::size_t i = 0; i < rep.joints.size(); ++i)
            marker(chain.segments[i].c, rep.joints[i].pass ? "green" : "red");
    }

    const double m = 0.02 * d + 4 * stroke;
    std::string out = head;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(box.x0 - m) + " " + num(-box.y1 - m) + " " +
           num(box.x1 - box.x0 + 2 * m) + " " + num(box.y1 - box.y0 + 2 * m) + "\">\n";
    out += body;
    out += "</svg>\n";
    return out;
}

}  // namespace elac
