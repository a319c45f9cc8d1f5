#include "gaze/maze.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace gaze {

namespace {

struct Dir {
  int dr = 0;
  int dc = 0;
  bool operator==(const Dir& o) const { return dr == o.dr && dc == o.dc; }
};

Dir left_of(const Dir& d) { return {-d.dc, d.dr}; }
Dir right_of(const Dir& d) { return {d.dc, -d.dr}; }

bool on_perimeter(const GridCell& c, int g) {
  return c.row == 0 || c.col == 0 || c.row == g - 1 || c.col == g - 1;
}

bool in_grid(const GridCell& c, int g) {
  return c.row >= 0 && c.col >= 0 && c.row < g && c.col < g;
}

GridCell step_cell(const GridCell& c, const Dir& d) { return {c.row + d.dr, c.col + d.dc}; }

// Perimeter cells in row-major order; corners carry two inward headings.
GridCell sample_perimeter_cell(Rng& rng, int g) {
  const std::int64_t n = 4 * (g - 1);
  std::int64_t k = rng.uniform_int(0, n - 1);
  if (k < g) return {0, static_cast<int>(k)};
  k -= g;
  if (k < g) return {g - 1, static_cast<int>(k)};
  k -= g;
  if (k < g - 2) return {static_cast<int>(k) + 1, 0};
  k -= g - 2;
  return {static_cast<int>(k) + 1, g - 1};
}

Dir inward_heading(Rng& rng, const GridCell& c, int g) {
  std::vector<Dir> options;
  if (c.row == 0) options.push_back({1, 0});
  if (c.row == g - 1) options.push_back({-1, 0});
  if (c.col == 0) options.push_back({0, 1});
  if (c.col == g - 1) options.push_back({0, -1});
  if (options.size() == 1) return options[0];
  return options[rng.index(options.size())];
}

// One walk attempt; empty result means the walk got trapped.
GridPath walk_once(Rng& rng, int g, double turn_prob, int min_straight) {
  GridPath path;
  std::vector<char> visited(static_cast<std::size_t>(g) * g, 0);
  auto visit = [&](const GridCell& c) { visited[static_cast<std::size_t>(c.row) * g + c.col] = 1; };
  auto seen = [&](const GridCell& c) {
    return visited[static_cast<std::size_t>(c.row) * g + c.col] != 0;
  };

  GridCell cur = sample_perimeter_cell(rng, g);
  Dir dir = inward_heading(rng, cur, g);
  path.cells.push_back(cur);
  visit(cur);

  int since_turn = 0;  // steps since last direction change (or start)
  while (true) {
    const GridCell straight = step_cell(cur, dir);
    const bool straight_ok = in_grid(straight, g) && !seen(straight);

    GridCell next;
    Dir next_dir = dir;
    if (since_turn >= min_straight) {
      const GridCell lt = step_cell(cur, left_of(dir));
      const GridCell rt = step_cell(cur, right_of(dir));
      const bool lt_ok = in_grid(lt, g) && !seen(lt);
      const bool rt_ok = in_grid(rt, g) && !seen(rt);

      double w_straight = straight_ok ? 1.0 - turn_prob : 0.0;
      double w_left = lt_ok ? turn_prob / 2.0 : 0.0;
      double w_right = rt_ok ? turn_prob / 2.0 : 0.0;
      const double total = w_straight + w_left + w_right;
      if (total <= 0.0) return {};  // trapped

      const double u = rng.uniform() * total;
      if (u < w_straight) {
        next = straight;
      } else if (u < w_straight + w_left) {
        next = lt;
        next_dir = left_of(dir);
      } else {
        next = rt;
        next_dir = right_of(dir);
      }
    } else {
      if (!straight_ok) return {};  // trapped before the turn window opens
      next = straight;
    }

    since_turn = (next_dir == dir) ? since_turn + 1 : 1;
    dir = next_dir;
    cur = next;
    path.cells.push_back(cur);
    visit(cur);
    if (on_perimeter(cur, g)) return path;
  }
}

}  // namespace

GridPath gen_path(Rng& rng, int grid_size, double turn_prob, int min_straight) {
  if (grid_size < 5) throw std::invalid_argument("gen_path: grid_size must be >= 5");
  if (turn_prob < 0.0 || turn_prob > 1.0)
    throw std::invalid_argument("gen_path: turn_prob must be in [0, 1]");
  if (min_straight < 1) throw std::invalid_argument("gen_path: min_straight must be >= 1");

  for (int attempt = 0; attempt < 1000; ++attempt) {
    GridPath p = walk_once(rng, grid_size, turn_prob, min_straight);
    if (!p.cells.empty()) return p;
  }
  throw std::runtime_error("gen_path: path generation exhausted");
}

bool check_turn_spacing(const GridPath& path, int min_straight) {
  const auto& c = path.cells;
  int last_turn = -1;
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    const Dir in{c[i].row - c[i - 1].row, c[i].col - c[i - 1].col};
    const Dir out{c[i + 1].row - c[i].row, c[i + 1].col - c[i].col};
    if (!(in == out)) {
      if (last_turn >= 0 && static_cast<int>(i) - last_turn < min_straight) return false;
      last_turn = static_cast<int>(i);
    }
  }
  return true;
}

Maze gen_maze(Rng& rng, const MazeParams& params) {
  const int g = params.grid_size;
  Maze maze;
  maze.grid_size = g;

  std::vector<char> covered(static_cast<std::size_t>(g) * g, 0);
  std::size_t n_covered = 0;
  const std::size_t total = static_cast<std::size_t>(g) * g;

  while (n_covered < total) {
    GridPath p = gen_path(rng, g, params.turn_prob, params.min_straight);
    for (const GridCell& c : p.cells) {
      char& slot = covered[static_cast<std::size_t>(c.row) * g + c.col];
      if (!slot) {
        slot = 1;
        ++n_covered;
      }
    }
    maze.paths.push_back(std::move(p));
  }

  const GridPath& sol = maze.paths.front();
  const bool front_is_entrance = rng.bernoulli(0.5);
  const GridCell& ent = front_is_entrance ? sol.cells.front() : sol.cells.back();
  const GridCell& ext = front_is_entrance ? sol.cells.back() : sol.cells.front();
  maze.entrance_px = {2.0 * ent.col, 2.0 * ent.row};
  maze.exit_px = {2.0 * ext.col, 2.0 * ext.row};
  return maze;
}

RenderedMaze render(const Maze& maze) {
  const int g = maze.grid_size;
  const int side = 2 * g - 1;
  RenderedMaze out;
  out.side = side;
  out.grid_size = g;
  out.maze_id = maze.maze_id;
  out.entrance_px = maze.entrance_px;
  out.exit_px = maze.exit_px;

  // -1 = unclaimed, 0 = wall, 1 = corridor; first claim wins.
  std::vector<signed char> px(static_cast<std::size_t>(side) * side, -1);
  auto claim = [&](int y, int x, signed char v) {
    signed char& slot = px[static_cast<std::size_t>(y) * side + x];
    if (slot < 0) slot = v;
  };

  std::vector<int> cell_index(static_cast<std::size_t>(g) * g);
  for (const GridPath& p : maze.paths) {
    const auto& c = p.cells;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      claim(c[i].row + c[i + 1].row, c[i].col + c[i + 1].col, 1);
    for (const GridCell& cell : c) claim(2 * cell.row, 2 * cell.col, 1);
    // Walls between this path's own parallel runs: 4-adjacent cell pairs
    // that are not consecutive along the walk.
    std::fill(cell_index.begin(), cell_index.end(), -1);
    for (std::size_t i = 0; i < c.size(); ++i)
      cell_index[static_cast<std::size_t>(c[i].row) * g + c[i].col] = static_cast<int>(i);
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (const GridCell nb : {GridCell{c[i].row + 1, c[i].col}, GridCell{c[i].row, c[i].col + 1}}) {
        if (nb.row >= g || nb.col >= g) continue;
        const int j = cell_index[static_cast<std::size_t>(nb.row) * g + nb.col];
        if (j >= 0 && std::abs(j - static_cast<int>(i)) != 1)
          claim(c[i].row + nb.row, c[i].col + nb.col, 0);
      }
    }
  }

  out.image.assign(px.size(), 0.0);
  for (std::size_t i = 0; i < px.size(); ++i) out.image[i] = px[i] == 1 ? 1.0 : 0.0;

  // Solution polyline from entrance to exit in pixel coordinates.
  std::vector<GridCell> sol = maze.paths.front().cells;
  const Vec2 front_px{2.0 * sol.front().col, 2.0 * sol.front().row};
  if (!(front_px == maze.entrance_px)) std::reverse(sol.begin(), sol.end());
  for (std::size_t i = 0; i < sol.size(); ++i) {
    if (i > 0) {
      const GridCell& a = sol[i - 1];
      const GridCell& b = sol[i];
      out.solution_polyline.push_back({static_cast<double>(a.col + b.col),
                                       static_cast<double>(a.row + b.row)});
    }
    out.solution_polyline.push_back({2.0 * sol[i].col, 2.0 * sol[i].row});
  }
  return out;
}

namespace {

nlohmann::json maze_to_json(const RenderedMaze& m) {
  nlohmann::json j;
  j["maze_id"] = m.maze_id;
  j["grid_size"] = m.grid_size;
  j["entrance_px"] = {m.entrance_px.x, m.entrance_px.y};
  j["exit_px"] = {m.exit_px.x, m.exit_px.y};
  nlohmann::json poly = nlohmann::json::array();
  for (const Vec2& p : m.solution_polyline) poly.push_back({p.x, p.y});
  j["solution_polyline"] = std::move(poly);
  nlohmann::json rows = nlohmann::json::array();
  for (int y = 0; y < m.side; ++y) {
    std::string row(static_cast<std::size_t>(m.side), '0');
    for (int x = 0; x < m.side; ++x)
      if (m.at(y, x) != 0.0) row[static_cast<std::size_t>(x)] = '1';
    rows.push_back(std::move(row));
  }
  j["image"] = std::move(rows);
  return j;
}

RenderedMaze maze_from_json(const nlohmann::json& j) {
  RenderedMaze m;
  m.maze_id = j.at("maze_id").get<std::string>();
  m.grid_size = j.at("grid_size").get<int>();
  m.entrance_px = {j.at("entrance_px").at(0).get<double>(), j.at("entrance_px").at(1).get<double>()};
  m.exit_px = {j.at("exit_px").at(0).get<double>(), j.at("exit_px").at(1).get<double>()};
  for (const auto& p : j.at("solution_polyline"))
    m.solution_polyline.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  const auto& rows = j.at("image");
  m.side = static_cast<int>(rows.size());
  if (m.side != 2 * m.grid_size - 1)
    throw std::runtime_error("test set: maze " + m.maze_id + ": image side does not match grid_size");
  m.image.assign(static_cast<std::size_t>(m.side) * m.side, 0.0);
  for (int y = 0; y < m.side; ++y) {
    const std::string row = rows.at(y).get<std::string>();
    if (static_cast<int>(row.size()) != m.side)
      throw std::runtime_error("test set: maze " + m.maze_id + ": ragged image row");
    for (int x = 0; x < m.side; ++x) {
      const char c = row[static_cast<std::size_t>(x)];
      if (c != '0' && c != '1')
        throw std::runtime_error("test set: maze " + m.maze_id + ": image must be '0'/'1'");
      m.image[static_cast<std::size_t>(y) * m.side + x] = c == '1' ? 1.0 : 0.0;
    }
  }
  return m;
}

}  // namespace

void save_test_set(const std::vector<RenderedMaze>& mazes, const std::string& path,
                   const std::string& config_hash, std::uint64_t seed) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_test_set: cannot open " + path);
  nlohmann::json header;
  header["type"] = "gaze-testset";
  header["version"] = 1;
  header["config_hash"] = config_hash;
  header["seed"] = seed;
  header["count"] = mazes.size();
  out << header.dump() << "\n";
  for (const RenderedMaze& m : mazes) out << maze_to_json(m).dump() << "\n";
  if (!out) throw std::runtime_error("save_test_set: write failed for " + path);
}

std::vector<RenderedMaze> load_test_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_test_set: cannot open " + path);
  std::vector<RenderedMaze> mazes;
  std::string line;
  std::size_t expected = 0;
  bool have_header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      throw std::runtime_error("load_test_set: " + path + ":" + std::to_string(lineno) +
                               ": invalid JSON: " + e.what());
    }
    if (j.contains("type") && j["type"] == "gaze-testset") {
      have_header = true;
      expected = j.value("count", std::size_t{0});
      continue;
    }
    try {
      mazes.push_back(maze_from_json(j));
    } catch (const nlohmann::json::exception& e) {
      const std::string id = j.value("maze_id", std::string("<missing maze_id>"));
      throw std::runtime_error("load_test_set: maze " + id + ": " + e.what());
    }
  }
  if (have_header && expected != 0 && mazes.size() != expected)
    throw std::runtime_error("load_test_set: " + path + ": truncated file, expected " +
                             std::to_string(expected) + " mazes, found " +
                             std::to_string(mazes.size()));
  return mazes;
}

}  // namespace gaze
