#pragma once

#include <iosfwd>
#include <string>

#include "trisec/regular.hpp"

namespace trisec {
namespace io {

// Configuration file:
//   points <n> <d> [homogeneous]
//   <label> <scalar> ... <scalar>     (d scalars, d+1 when homogeneous)
PointConfiguration read_config(std::istream& in);
PointConfiguration read_config_file(const std::string& path);
void write_config(std::ostream& out, const PointConfiguration& cfg);
std::string config_str(const PointConfiguration& cfg);

// Triangulation / subdivision file: one cell per line, labels space
// separated, lines sorted; '#' starts a comment.
std::vector<Cell> read_cells(std::istream& in);
std::vector<Cell> read_cells_file(const std::string& path);
void write_cells(std::ostream& out, const std::vector<Cell>& cells);

// Lift file: one "<label> <scalar>" per line.
Lift read_lift(std::istream& in);
Lift read_lift_file(const std::string& path);
void write_lift(std::ostream& out, const Lift& w);

} // namespace io
} // namespace trisec
