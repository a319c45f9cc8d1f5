#pragma once

#include <string>
#include <vector>

#include "gaze/geometry.hpp"
#include "gaze/rng.hpp"

namespace gaze {

struct GridCell {
  int row = 0;
  int col = 0;
  bool operator==(const GridCell& o) const { return row == o.row && col == o.col; }
};

// One non-branching, non-self-intersecting corridor on the cell grid.
// Both endpoints lie on the grid perimeter; interior cells do not.
struct GridPath {
  std::vector<GridCell> cells;

  const GridCell& entry_edgepoint() const { return cells.front(); }
  const GridCell& exit_edgepoint() const { return cells.back(); }
  bool operator==(const GridPath& o) const { return cells == o.cells; }
};

struct MazeParams {
  int grid_size = 20;
  double turn_prob = 0.2;
  int min_straight = 3;
};

struct Maze {
  int grid_size = 20;
  std::vector<GridPath> paths;  // paths[0] is the solution
  Vec2 entrance_px;             // rendered endpoint of paths[0]
  Vec2 exit_px;
  std::string maze_id;

  bool operator==(const Maze& o) const {
    return grid_size == o.grid_size && paths == o.paths && entrance_px == o.entrance_px &&
           exit_px == o.exit_px && maze_id == o.maze_id;
  }
};

// Pixel occupancy grid: corridor = 1.0, wall = 0.0, side = 2*grid_size - 1.
struct RenderedMaze {
  int side = 0;
  std::vector<double> image;  // row-major, image[y * side + x]
  Vec2 entrance_px;
  Vec2 exit_px;
  std::vector<Vec2> solution_polyline;  // entrance first
  std::string maze_id;
  int grid_size = 0;

  double at(int y, int x) const { return image[static_cast<std::size_t>(y) * side + x]; }

  bool operator==(const RenderedMaze& o) const {
    return side == o.side && image == o.image && entrance_px == o.entrance_px &&
           exit_px == o.exit_px && solution_polyline == o.solution_polyline &&
           maze_id == o.maze_id && grid_size == o.grid_size;
  }
};

// Random walk from a uniformly sampled perimeter cell, heading inward,
// terminating on first return to the perimeter. At each step with at least
// min_straight cells since the last direction change, the walk turns with
// total probability turn_prob (split evenly between left and right);
// moves into already-visited cells are removed from the choice set before
// sampling. A trapped walk is retried; 1000 failures raise an error.
GridPath gen_path(Rng& rng, int grid_size, double turn_prob, int min_straight);

// Layers random paths until every grid cell is covered. paths[0] is the
// solution; its entrance endpoint is chosen uniformly between the two.
Maze gen_maze(Rng& rng, const MazeParams& params);

// Cell (r, c) maps to pixel (x=2c, y=2r); the pixel between consecutive
// path cells is corridor. Pixels between 4-adjacent but non-consecutive
// cells of the same path are that path's walls. Earlier paths' corridor and
// wall pixels take precedence over later ones.
RenderedMaze render(const Maze& maze);

// Turn-spacing check used by tests and the generator: consecutive direction
// changes must be at least min_straight steps apart.
bool check_turn_spacing(const GridPath& path, int min_straight);

// Test-set serialization (one JSON record per maze, optional header line).
void save_test_set(const std::vector<RenderedMaze>& mazes, const std::string& path,
                   const std::string& config_hash = "", std::uint64_t seed = 0);
std::vector<RenderedMaze> load_test_set(const std::string& path);

}  // namespace gaze
