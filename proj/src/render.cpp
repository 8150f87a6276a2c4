#include <algorithm>
#include <cstdio>
#include <sstream>

#include "zonopref/commands.hpp"
#include "zonopref/error.hpp"

namespace zonopref::commands {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string equation(const Vec& w, const Rational& c, const std::vector<std::string>& axis) {
  std::string s;
  for (size_t i = 0; i < 2; ++i) {
    if (w[i] == 0) continue;
    Rational a = w[i];
    if (!s.empty()) {
      s += a < 0 ? " - " : " + ";
      a = abs(a);
    } else if (a < 0) {
      s += "-";
      a = -a;
    }
    if (a != 1) s += format_rational(a) + "*";
    s += axis[i];
  }
  return s + " = " + format_rational(c);
}

struct Frame {
  Rational xmin, xmax, ymin, ymax;
  double scale = 1, ox = 0, oy = 0;
  int height = 0;

  double sx(const Rational& x) const { return ox + Rational(x - xmin).get_d() * scale; }
  double sy(const Rational& y) const { return height - (oy + Rational(y - ymin).get_d() * scale); }
};

// Segment of w.u = c inside the frame box, exact endpoints.
std::optional<std::pair<Vec, Vec>> clip_line(const Vec& w, const Rational& c, const Frame& f) {
  std::vector<Vec> hits;
  auto add = [&](Rational x, Rational y) {
    if (x < f.xmin || x > f.xmax || y < f.ymin || y > f.ymax) return;
    for (const auto& h : hits)
      if (h[0] == x && h[1] == y) return;
    hits.push_back({x, y});
  };
  if (w[1] != 0)
    for (const Rational& x : {f.xmin, f.xmax}) add(x, (c - w[0] * x) / w[1]);
  if (w[0] != 0)
    for (const Rational& y : {f.ymin, f.ymax}) add((c - w[1] * y) / w[0], y);
  if (hits.size() < 2) return std::nullopt;
  std::sort(hits.begin(), hits.end());
  return std::make_pair(hits.front(), hits.back());
}

}  // namespace

std::string render_svg(const std::vector<io::Utility>& utilities, const io::RenderSpec& spec,
                       const std::optional<io::Hyperplane>& line) {
  std::vector<std::vector<Vec>> polys;
  for (const auto& u : utilities) {
    if (u.zonotope.dim() != 2)
      throw Error(ErrorCode::NotTwoDimensional,
                  "cannot render '" + u.id + "': utility has dimension " +
                      std::to_string(u.zonotope.dim()),
                  {u.id});
    polys.push_back(vertices_2d(u.zonotope));
  }
  if (line && line->normal.size() != 2)
    throw Error(ErrorCode::NotTwoDimensional, "hyperplane normal must have 2 components");

  Frame f;
  f.height = spec.height;
  bool first = true;
  for (const auto& poly : polys)
    for (const auto& v : poly) {
      if (first) {
        f.xmin = f.xmax = v[0];
        f.ymin = f.ymax = v[1];
        first = false;
      }
      f.xmin = std::min(f.xmin, v[0]);
      f.xmax = std::max(f.xmax, v[0]);
      f.ymin = std::min(f.ymin, v[1]);
      f.ymax = std::max(f.ymax, v[1]);
    }
  if (first) f.xmin = f.xmax = f.ymin = f.ymax = 0;
  // Pad by a tenth of the larger span (1 when everything is a single point).
  Rational span = std::max(f.xmax - f.xmin, f.ymax - f.ymin);
  Rational pad = span == 0 ? Rational(1) : span / 10;
  f.xmin -= pad;
  f.xmax += pad;
  f.ymin -= pad;
  f.ymax += pad;
  const double w = spec.width - 2.0 * spec.margin, h = spec.height - 2.0 * spec.margin;
  const double wx = Rational(f.xmax - f.xmin).get_d(), wy = Rational(f.ymax - f.ymin).get_d();
  f.scale = std::min(w / wx, h / wy);
  f.ox = spec.margin + (w - wx * f.scale) / 2;
  f.oy = spec.margin + (h - wy * f.scale) / 2;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<!-- zonopref render: y axis flipped so that world y grows upward (mathematical "
         "orientation) -->\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" fill=\"#ffffff\"/>\n";

  // Axes through the origin when it is in view, otherwise along the frame edge.
  const Rational ax = (f.xmin <= 0 && 0 <= f.xmax) ? Rational(0) : f.xmin;
  const Rational ay = (f.ymin <= 0 && 0 <= f.ymax) ? Rational(0) : f.ymin;
  out << "<g id=\"axes\" stroke=\"#888888\" stroke-width=\"1\">\n"
      << "<line x1=\"" << num(f.sx(f.xmin)) << "\" y1=\"" << num(f.sy(ay)) << "\" x2=\""
      << num(f.sx(f.xmax)) << "\" y2=\"" << num(f.sy(ay)) << "\"/>\n"
      << "<line x1=\"" << num(f.sx(ax)) << "\" y1=\"" << num(f.sy(f.ymin)) << "\" x2=\""
      << num(f.sx(ax)) << "\" y2=\"" << num(f.sy(f.ymax)) << "\"/>\n"
      << "</g>\n"
      << "<text x=\"" << num(f.sx(f.xmax)) << "\" y=\"" << num(f.sy(ay) + 14)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">"
      << escape(spec.axis_labels[0]) << "</text>\n"
      << "<text x=\"" << num(f.sx(ax) + 4) << "\" y=\"" << num(f.sy(f.ymax) + 12)
      << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(spec.axis_labels[1])
      << "</text>\n";

  for (size_t i = 0; i < utilities.size(); ++i) {
    const auto& id = utilities[i].id;
    io::Style st;
    if (auto it = spec.styles.find(id); it != spec.styles.end()) st = it->second;
    const char* color = kPalette[i % std::size(kPalette)];
    const std::string fill = st.fill.empty() ? color : st.fill;
    const std::string stroke = st.stroke.empty() ? color : st.stroke;
    const auto& poly = polys[i];
    if (poly.size() == 1) {
      out << "<circle id=\"U-" << escape(id) << "\" cx=\"" << num(f.sx(poly[0][0])) << "\" cy=\""
          << num(f.sy(poly[0][1])) << "\" r=\"4\" fill=\"" << escape(fill) << "\" stroke=\""
          << escape(stroke) << "\"/>\n";
      continue;
    }
    std::string pts;
    for (const auto& v : poly) pts += (pts.empty() ? "" : " ") + num(f.sx(v[0])) + "," + num(f.sy(v[1]));
    if (poly.size() == 2)
      out << "<polyline id=\"U-" << escape(id) << "\" points=\"" << pts << "\" fill=\"none\" stroke=\""
          << escape(stroke) << "\" stroke-width=\"2\"/>\n";
    else
      out << "<polygon id=\"U-" << escape(id) << "\" points=\"" << pts << "\" fill=\"" << escape(fill)
          << "\" fill-opacity=\"0.45\" stroke=\"" << escape(stroke) << "\" stroke-width=\"1.5\"/>\n";
  }

  if (line) {
    const std::string eq = equation(line->normal, line->threshold, spec.axis_labels);
    if (auto seg = clip_line(line->normal, line->threshold, f)) {
      const auto& [a, b] = *seg;
      out << "<line id=\"hyperplane\" x1=\"" << num(f.sx(a[0])) << "\" y1=\"" << num(f.sy(a[1]))
          << "\" x2=\"" << num(f.sx(b[0])) << "\" y2=\"" << num(f.sy(b[1]))
          << "\" stroke=\"#000000\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n"
          << "<text x=\"" << num(f.sx(b[0]) + 4) << "\" y=\"" << num(f.sy(b[1]) - 4)
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(eq) << "</text>\n";
    } else {
      out << "<!-- hyperplane " << escape(eq) << " lies outside the view -->\n";
    }
  }

  out << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (size_t i = 0; i < utilities.size(); ++i) {
    const auto& id = utilities[i].id;
    io::Style st;
    if (auto it = spec.styles.find(id); it != spec.styles.end()) st = it->second;
    const std::string fill = st.fill.empty() ? kPalette[i % std::size(kPalette)] : st.fill;
    const int y = 10 + 16 * static_cast<int>(i);
    out << "<rect x=\"10\" y=\"" << y << "\" width=\"10\" height=\"10\" fill=\"" << escape(fill)
        << "\"/>\n<text x=\"26\" y=\"" << y + 9 << "\">U(" << escape(id) << ")</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace zonopref::commands
