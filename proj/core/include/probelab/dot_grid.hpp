// Colored dot grids and monotone paths: the shared substrate of every surplus
// problem in the lab. The surplus of a path is the number of blue dots
// strictly beneath it minus the number of red dots strictly beneath it; dots
// exactly on the path are not beneath it.
//
// Two path representations:
//   Staircase — axis-aligned: sorted breakpoints (x, height); the path sits at
//     height 0 before the first breakpoint and rises to each breakpoint's
//     height at its x. A dot is beneath the path iff its y is strictly less
//     than the height of the last breakpoint strictly left of the dot (a jump
//     exactly at the dot's x does not cover it — the vertical segment passes
//     through the dot's abscissa, and on-path/right-of-path dots don't count;
//     jumps at x = 0 are the exception, covering x = 0 dots, since nothing can
//     lie left of the grid). Heights may exceed the grid height: the grid's
//     corner endpoints constrain nothing about which dots are coverable.
//   Polyline — vertex list in the 45-degree rotated frame (u, v) with
//     u = (x+y)/sqrt(2), v = (y-x)/sqrt(2); legal iff every edge has slope in
//     [-1, 1] there, which is exactly monotonicity in the original frame.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "probelab/errors.hpp"

namespace probelab {

enum class DotColor : std::uint8_t { Blue, Red };

struct Dot {
  double x = 0.0;
  double y = 0.0;
  DotColor color = DotColor::Blue;
};

struct DotGrid {
  double width = 0.0;
  double height = 0.0;
  std::vector<Dot> dots;

  void validate() const;  // coordinates within extents; throws InvariantError
};

struct Staircase {
  struct Breakpoint {
    double x = 0.0;
    double height = 0.0;
  };
  std::vector<Breakpoint> breakpoints;  // x and height both non-decreasing
};

struct Polyline {
  struct Vertex {
    double u = 0.0;
    double v = 0.0;
  };
  std::vector<Vertex> vertices;  // rotated frame, u non-decreasing
};

struct MonotonePath {
  std::variant<Staircase, Polyline> rep;

  static MonotonePath from_staircase(Staircase s) { return MonotonePath{std::move(s)}; }
  static MonotonePath from_polyline(Polyline p) { return MonotonePath{std::move(p)}; }
  bool is_staircase() const { return std::holds_alternative<Staircase>(rep); }
};

// Throws IllegalPathError if the representation's legality rules are violated
// (staircase monotonicity, polyline slope band).
std::int64_t surplus_of_path(const DotGrid& grid, const MonotonePath& path);

// CSV round-trip: header `x,y,color`, one dot per line, color spelled
// blue/red. Paths serialize as `x,y` vertex lines (staircases emit the
// breakpoint corners in original coordinates; polylines emit vertices
// converted from the rotated frame).
void write_grid_csv(std::ostream& out, const DotGrid& grid);
DotGrid read_grid_csv(std::istream& in, double width, double height);
void write_path_csv(std::ostream& out, const MonotonePath& path);

}  // namespace probelab
