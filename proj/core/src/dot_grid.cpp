#include "probelab/dot_grid.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace probelab {

void DotGrid::validate() const {
  for (const Dot& d : dots) {
    if (!(d.x >= 0.0) || !(d.x <= width) || !(d.y >= 0.0) || !(d.y <= height))
      throw InvariantError("dot grid: dot outside extents");
  }
}

namespace {

constexpr double kSlopeTol = 1e-9;

std::int64_t surplus_under_staircase(const DotGrid& grid, const Staircase& path) {
  const auto& bps = path.breakpoints;
  double prev_x = 0.0, prev_h = 0.0;
  for (const auto& bp : bps) {
    if (bp.x < prev_x || bp.height < prev_h - kSlopeTol)
      throw IllegalPathError("staircase breakpoints must be monotone");
    if (bp.x < 0.0 || bp.x > grid.width)
      throw IllegalPathError("staircase breakpoint outside the grid");
    prev_x = bp.x;
    prev_h = bp.height;
  }

  std::int64_t surplus = 0;
  for (const Dot& d : grid.dots) {
    // Height of the staircase approaching d.x from the left: the last
    // breakpoint with x strictly below d.x — except at the grid's left edge,
    // where a jump at x = 0 does cover x = 0 dots. Heights are
    // non-decreasing, so the last qualifying breakpoint is the highest.
    const auto first_at_or_after = std::lower_bound(
        bps.begin(), bps.end(), d.x,
        [](const Staircase::Breakpoint& bp, double x) { return bp.x < x; });
    double level = first_at_or_after == bps.begin() ? 0.0 : std::prev(first_at_or_after)->height;
    if (d.x == 0.0 && !bps.empty() && bps.front().x == 0.0) {
      const auto past_zero = std::upper_bound(
          bps.begin(), bps.end(), 0.0,
          [](double x, const Staircase::Breakpoint& bp) { return x < bp.x; });
      level = std::prev(past_zero)->height;
    }
    if (d.y < level) surplus += d.color == DotColor::Blue ? 1 : -1;
  }
  return surplus;
}

std::int64_t surplus_under_polyline(const DotGrid& grid, const Polyline& path) {
  if (path.vertices.size() < 2)
    throw IllegalPathError("polyline needs at least two vertices");
  // Convert rotated (u, v) vertices back to the original frame.
  struct Pt {
    double x, y;
  };
  std::vector<Pt> pts;
  pts.reserve(path.vertices.size());
  for (const auto& vtx : path.vertices) {
    constexpr double inv_sqrt2 = 0.7071067811865476;
    pts.push_back(Pt{(vtx.u - vtx.v) * inv_sqrt2, (vtx.u + vtx.v) * inv_sqrt2});
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double du = path.vertices[i].u - path.vertices[i - 1].u;
    const double dv = path.vertices[i].v - path.vertices[i - 1].v;
    if (du < -kSlopeTol || std::fabs(dv) > du + kSlopeTol)
      throw IllegalPathError("polyline edge leaves the legal slope band [-1, 1]");
  }

  // Evaluate the path's height as a left-continuous function of x. Vertical
  // edges (slope +1 in the rotated frame) contribute a jump whose bottom
  // value governs dots exactly at that x.
  std::int64_t surplus = 0;
  for (const Dot& d : grid.dots) {
    double level;
    if (d.x <= pts.front().x) {
      level = pts.front().y;
    } else if (d.x > pts.back().x) {
      level = pts.back().y;
    } else {
      level = pts.front().y;
      for (std::size_t i = 1; i < pts.size(); ++i) {
        const Pt& a = pts[i - 1];
        const Pt& b = pts[i];
        if (b.x <= a.x) continue;  // vertical edge: covers no abscissa interval
        if (d.x > a.x && d.x <= b.x) {
          level = a.y + (b.y - a.y) * (d.x - a.x) / (b.x - a.x);
          break;
        }
        level = b.y;  // past this edge entirely
      }
    }
    if (d.y < level) surplus += d.color == DotColor::Blue ? 1 : -1;
  }
  return surplus;
}

}  // namespace

std::int64_t surplus_of_path(const DotGrid& grid, const MonotonePath& path) {
  if (path.is_staircase())
    return surplus_under_staircase(grid, std::get<Staircase>(path.rep));
  return surplus_under_polyline(grid, std::get<Polyline>(path.rep));
}

void write_grid_csv(std::ostream& out, const DotGrid& grid) {
  out << "x,y,color\n";
  for (const Dot& d : grid.dots)
    out << d.x << ',' << d.y << ',' << (d.color == DotColor::Blue ? "blue" : "red") << "\n";
}

DotGrid read_grid_csv(std::istream& in, double width, double height) {
  DotGrid grid;
  grid.width = width;
  grid.height = height;
  std::string line;
  if (!std::getline(in, line) || line != "x,y,color")
    throw ParseError("dot-grid CSV: missing 'x,y,color' header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string sx, sy, scolor;
    if (!std::getline(fields, sx, ',') || !std::getline(fields, sy, ',') ||
        !std::getline(fields, scolor))
      throw ParseError("dot-grid CSV: malformed line '" + line + "'");
    Dot d;
    try {
      d.x = std::stod(sx);
      d.y = std::stod(sy);
    } catch (const std::exception&) {
      throw ParseError("dot-grid CSV: bad coordinate in '" + line + "'");
    }
    if (scolor == "blue") d.color = DotColor::Blue;
    else if (scolor == "red") d.color = DotColor::Red;
    else throw ParseError("dot-grid CSV: unknown color '" + scolor + "'");
    grid.dots.push_back(d);
  }
  grid.validate();
  return grid;
}

void write_path_csv(std::ostream& out, const MonotonePath& path) {
  out << "x,y\n";
  if (path.is_staircase()) {
    const auto& stairs = std::get<Staircase>(path.rep);
    double level = 0.0;
    out << 0.0 << ',' << 0.0 << "\n";
    for (const auto& bp : stairs.breakpoints) {
      out << bp.x << ',' << level << "\n";   // run to the jump
      out << bp.x << ',' << bp.height << "\n";  // rise
      level = bp.height;
    }
  } else {
    constexpr double inv_sqrt2 = 0.7071067811865476;
    for (const auto& vtx : std::get<Polyline>(path.rep).vertices)
      out << (vtx.u - vtx.v) * inv_sqrt2 << ',' << (vtx.u + vtx.v) * inv_sqrt2 << "\n";
  }
}

}  // namespace probelab
