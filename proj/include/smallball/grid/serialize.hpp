#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "smallball/grid/grid_function.hpp"

namespace smallball {

enum class GridEncoding { Binary, Json };

// Header line {"format":"gridfunction",...} followed either by a little
// endian float64 payload (binary) or by the values inside the same JSON
// document (rationals as decimal strings).
void write_grid(std::ostream& os, const GridFunction<double>& f, GridEncoding enc = GridEncoding::Binary);
void write_grid(std::ostream& os, const GridFunction<Rational>& f);
void write_grid(std::ostream& os, const GridFunction<Integer>& f);

using AnyGrid = std::variant<GridFunction<double>, GridFunction<Rational>, GridFunction<Integer>>;

AnyGrid read_grid(std::istream& is);

void save_grid(const std::string& path, const AnyGrid& f, GridEncoding enc = GridEncoding::Json);
AnyGrid load_grid(const std::string& path);

}  // namespace smallball
