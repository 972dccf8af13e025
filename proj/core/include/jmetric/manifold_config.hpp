#ifndef JMETRIC_MANIFOLD_CONFIG_HPP_
#define JMETRIC_MANIFOLD_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "jmetric/manifold.hpp"

namespace jmetric {

/// Builds a manifold from a JSON document of the form
///
///   {
///     "name": "polar-kahler",                      (optional)
///     "kind": {"alpha": -1, "epsilon": 1},
///     "dim": 2,
///     "domain": {"lo": [1, 0], "hi": [3, 6], "radius": 10},   (radius optional)
///     "metric":    [["1", "0"], ["0", "x1^2"]],
///     "structure": [["0", "-x1"], ["1/x1", "0"]]
///   }
///
/// "metric" and "structure" are dim x dim arrays (or flat row-major arrays
/// of dim^2 entries) of expressions in x1..x{dim}; plain numbers are
/// accepted too. structure[i][j] is J^i_j. Errors raise Error(ConfigParse)
/// with a "line L, column C" location in `source_text`.
ChartedManifold parse_manifold_config(std::string_view source_text,
                                      std::string_view default_name = "config");

/// Reads and parses a config file; the file stem is the default name.
ChartedManifold load_manifold_config(const std::filesystem::path& path);

}  // namespace jmetric

#endif  // JMETRIC_MANIFOLD_CONFIG_HPP_
