#include "gptcompat/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace gptcompat {

namespace {

Rational cross(const Point& o, const Point& a, const Point& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::string fmt(double v)
{
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.3f", v);
    std::string s = buf.data();
    return s == "-0.000" ? "0.000" : s;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

constexpr std::array<const char*, 6> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

} // namespace

std::vector<Point> polygon_boundary(const StateSpace& space)
{
    if (space.dimension() != 2)
        throw GeometryError("polygon_boundary: dimension must be 2");
    std::vector<Point> pts = space.vertices();
    std::sort(pts.begin(), pts.end());
    if (pts.size() < 3)
        return pts;
    const Point origin = pts.front();
    bool collinear = true;
    for (std::size_t i = 2; i < pts.size() && collinear; ++i)
        collinear = sgn(cross(origin, pts[1], pts[i])) == 0;
    if (collinear)
        return pts;
    // all vertices are extreme, so sorting by angle around the lexicographic
    // minimum is a convex traversal
    std::sort(pts.begin() + 1, pts.end(), [&](const Point& a, const Point& b) {
        const int s = sgn(cross(origin, a, b));
        if (s != 0)
            return s > 0;
        return a < b;
    });
    return pts;
}

std::optional<std::pair<Point, Point>> level_segment(const AffineFunctional& f, const Rational& level)
{
    const StateSpace& space = *f.space();
    const std::vector<Point> ring = polygon_boundary(space);
    std::vector<Point> hits;
    bool all_on = true;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = ring[i];
        const Rational fp = f(p) - level;
        if (sgn(fp) == 0)
            hits.push_back(p);
        else
            all_on = false;
        if (n < 2)
            continue;
        const Point& q = ring[(i + 1) % n];
        const Rational fq = f(q) - level;
        if (sgn(fp) * sgn(fq) < 0) {
            const Rational t = fp / (fp - fq);
            hits.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    if (all_on || hits.empty())
        return std::nullopt;
    const auto [lo, hi] = std::minmax_element(hits.begin(), hits.end());
    return std::make_pair(*lo, *hi);
}

std::string render_svg(const StateSpace& space, const std::vector<AffineFunctional>& effects)
{
    if (space.dimension() != 2)
        throw GeometryError("render: space has dimension " + std::to_string(space.dimension()) + ", need 2");
    const std::vector<Point> ring = polygon_boundary(space);

    double xmin = ring.front()[0].get_d(), xmax = xmin;
    double ymin = ring.front()[1].get_d(), ymax = ymin;
    for (const auto& p : ring) {
        xmin = std::min(xmin, p[0].get_d());
        xmax = std::max(xmax, p[0].get_d());
        ymin = std::min(ymin, p[1].get_d());
        ymax = std::max(ymax, p[1].get_d());
    }
    const double extent = std::max({xmax - xmin, ymax - ymin, 1e-9});
    const double size = 400, margin = 60;
    const double scale = size / extent;
    const double width = (xmax - xmin) * scale + 2 * margin;
    const double height = (ymax - ymin) * scale + 2 * margin;
    auto sx = [&](const Rational& x) { return fmt(margin + (x.get_d() - xmin) * scale); };
    auto sy = [&](const Rational& y) { return fmt(margin + (ymax - y.get_d()) * scale); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
        << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < ring.size(); ++i)
        out << (i ? " " : "") << sx(ring[i][0]) << ',' << sy(ring[i][1]);
    out << "\" fill=\"#f4f4f4\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";

    const std::array<Rational, 3> levels{Rational(0), Rational(1, 2), Rational(1)};
    const std::array<const char*, 3> dash{"6,4", "none", "2,3"};
    for (std::size_t e = 0; e < effects.size(); ++e) {
        if (!(*effects[e].space() == space))
            throw SpaceMismatch("render: effect defined on another space");
        const char* colour = palette[e % palette.size()];
        out << "<g class=\"effect\" data-index=\"" << e << "\" stroke=\"" << colour << "\" stroke-width=\"2\">\n";
        for (std::size_t l = 0; l < levels.size(); ++l) {
            const auto seg = level_segment(effects[e], levels[l]);
            if (!seg)
                continue;
            out << "<line x1=\"" << sx(seg->first[0]) << "\" y1=\"" << sy(seg->first[1]) << "\" x2=\""
                << sx(seg->second[0]) << "\" y2=\"" << sy(seg->second[1]) << "\" data-level=\"" << to_string(levels[l])
                << "\" stroke-dasharray=\"" << dash[l] << "\"/>\n";
        }
        out << "</g>\n";
    }

    for (const auto& p : ring) {
        out << "<circle cx=\"" << sx(p[0]) << "\" cy=\"" << sy(p[1]) << "\" r=\"3\" fill=\"#000000\"/>\n";
        out << "<text x=\"" << sx(p[0]) << "\" y=\"" << sy(p[1])
            << "\" dx=\"6\" dy=\"-6\" font-family=\"monospace\" font-size=\"12\">"
            << escape("(" + to_string(p[0]) + ", " + to_string(p[1]) + ")") << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace gptcompat
