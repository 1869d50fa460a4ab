#include <swarmfocus/svg.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace swarmfocus {

namespace {

constexpr double kCanvas = 600.0;
constexpr double kMargin = 30.0;

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s)
{
  std::string out;
  for (char c : s)
  {
    switch (c)
    {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame
{
  Point lo;
  double scale = 1.0;
  double height = kCanvas;

  double x(double wx) const { return kMargin + (wx - lo.x) * scale; }
  double y(double wy) const { return height - kMargin - (wy - lo.y) * scale; }
};

std::string polygon_points(const std::vector<Point>& pts, const Frame& f)
{
  std::string out;
  for (std::size_t k = 0; k < pts.size(); ++k)
  {
    if (k)
      out += ' ';
    out += num(f.x(pts[k].x)) + "," + num(f.y(pts[k].y));
  }
  return out;
}

} // namespace

std::string snapshot_svg(const Snapshot& s, const std::string& title)
{
  const Point lo = s.scenario.min_corner();
  const Point hi = s.scenario.max_corner();
  const double span = std::max({hi.x - lo.x, hi.y - lo.y, 1e-9});
  Frame f;
  f.lo = lo;
  f.scale = (kCanvas - 2.0 * kMargin) / span;
  const double width = 2.0 * kMargin + (hi.x - lo.x) * f.scale;
  f.height = 2.0 * kMargin + (hi.y - lo.y) * f.scale;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(f.height + (title.empty() ? 0.0 : 20.0)) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    out << "<text x=\"" << num(kMargin) << "\" y=\"" << num(f.height + 14.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(title) << "</text>\n";

  out << "<polygon points=\"" << polygon_points(s.scenario.enclosure(), f)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const auto& o : s.scenario.obstacles())
  {
    if (o.kind == ObstacleKind::Polygon)
      out << "<polygon points=\"" << polygon_points(o.vertices, f)
          << "\" fill=\"#999999\" stroke=\"black\"/>\n";
    else
      out << "<polyline points=\"" << polygon_points(o.vertices, f)
          << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }

  const SwarmGraph& g = s.graph;
  for (const auto& [i, j] : g.edges())
  {
    const Point a = g.vertex(i).position;
    const Point b = g.vertex(j).position;
    const bool inner = g.vertex(i).in_cluster && g.vertex(j).in_cluster;
    out << "<line x1=\"" << num(f.x(a.x)) << "\" y1=\"" << num(f.y(a.y)) << "\" x2=\""
        << num(f.x(b.x)) << "\" y2=\"" << num(f.y(b.y)) << "\" stroke=\""
        << (inner ? "#cc3333" : "#3366cc") << "\" stroke-width=\"" << (inner ? "1.5" : "0.8")
        << "\" stroke-opacity=\"0.6\"/>\n";
  }
  const double body = std::max(2.0, s.r_b * f.scale);
  for (VertexId v = 0; v < g.size(); ++v)
  {
    const Vertex& x = g.vertex(v);
    const char* fill = v == kBaseStation ? "#222222" : (x.in_cluster ? "#dd2222" : "#2255bb");
    out << "<circle cx=\"" << num(f.x(x.position.x)) << "\" cy=\"" << num(f.y(x.position.y))
        << "\" r=\"" << num(body) << "\" fill=\"" << fill << "\" stroke=\""
        << (x.contact ? "#ff9900" : "none") << "\" stroke-width=\"2\"/>\n";
  }

  // Event source as a star; an empty snapshot shows the scenario only.
  if (g.size() > 0)
  {
    const double cx = f.x(s.event.x);
    const double cy = f.y(s.event.y);
    std::string star;
    for (int k = 0; k < 10; ++k)
    {
      const double r = (k % 2 == 0) ? 9.0 : 4.0;
      const double a = -kPi / 2.0 + k * kPi / 5.0;
      if (k)
        star += ' ';
      star += num(cx + r * std::cos(a)) + "," + num(cy + r * std::sin(a));
    }
    out << "<polygon points=\"" << star << "\" fill=\"#ffcc00\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string trace_svg(const DispatchTrace& trace, const std::string& title)
{
  const double width = 640.0;
  const double height = 360.0;
  const double left = 60.0;
  const double right = 20.0;
  const double top = 20.0;
  const double bottom = 40.0;

  std::vector<double> hs{trace.initial_h};
  for (const auto& r : trace.rows)
    hs.push_back(r.h);
  std::vector<double> finite;
  for (double h : hs)
    if (std::isfinite(h))
      finite.push_back(h);
  double lo = finite.empty() ? 0.0 : *std::min_element(finite.begin(), finite.end());
  double hi = finite.empty() ? 1.0 : *std::max_element(finite.begin(), finite.end());
  if (hi - lo < 1e-12)
  {
    lo -= 0.5 * std::max(1e-6, std::abs(lo) * 1e-3);
    hi += 0.5 * std::max(1e-6, std::abs(hi) * 1e-3);
  }
  const double n = static_cast<double>(std::max<std::size_t>(1, hs.size() - 1));
  auto px = [&](double k) { return left + k / n * (width - left - right); };
  auto py = [&](double h) { return top + (hi - h) / (hi - lo) * (height - top - bottom); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << num(left) << "\" y1=\"" << num(height - bottom) << "\" x2=\""
      << num(width - right) << "\" y2=\"" << num(height - bottom) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
      << "\" y2=\"" << num(height - bottom) << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << num(left - 5) << "\" y=\"" << num(top + 4)
      << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << num(hi) << "</text>\n";
  out << "<text x=\"" << num(left - 5) << "\" y=\"" << num(height - bottom)
      << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << num(lo) << "</text>\n";
  out << "<text x=\"" << num(width / 2) << "\" y=\"" << num(height - 10)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">accepted micro-step"
      << (title.empty() ? "" : " | " + escape(title)) << "</text>\n";

  // Session boundaries.
  std::size_t prev_session = 0;
  for (std::size_t k = 0; k < trace.rows.size(); ++k)
    if (trace.rows[k].session != prev_session)
    {
      prev_session = trace.rows[k].session;
      out << "<line x1=\"" << num(px(double(k))) << "\" y1=\"" << num(top) << "\" x2=\""
          << num(px(double(k))) << "\" y2=\"" << num(height - bottom)
          << "\" stroke=\"#aaaaaa\" stroke-dasharray=\"3,3\"/>\n";
    }

  out << "<polyline fill=\"none\" stroke=\"#2255bb\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < hs.size(); ++k)
  {
    if (!std::isfinite(hs[k]))
      continue;
    if (k)
      out << ' ';
    out << num(px(double(k))) << "," << num(py(hs[k]));
  }
  out << "\"/>\n";

  for (std::size_t k = 0; k < trace.rows.size(); ++k)
    if (!trace.rows[k].new_edges.empty() && std::isfinite(trace.rows[k].h))
      out << "<circle cx=\"" << num(px(double(k + 1))) << "\" cy=\"" << num(py(trace.rows[k].h))
          << "\" r=\"3\" fill=\"#9933cc\"/>\n";
  out << "</svg>\n";
  return out.str();
}

} // namespace swarmfocus
