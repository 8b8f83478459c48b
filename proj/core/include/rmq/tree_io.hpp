#pragma once

// JSON and CSV forms of a quantization tree.
//
// {"model": {"name": s, "params": {k: r}}, "x0": r, "T": r, "n": int,
//  "levels": [{"t": r, "grid": [r], "weights": [r],
//              "transition": [[r]] | null,
//              "stats": {"iterations": int, "gradient_norm": r, "distortion": r}}]}
//
// Reals are written in shortest round-trip form, so parsing reproduces
// every double exactly.

#include "rmq/tree.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace rmq {

nlohmann::json tree_to_json(const QuantizationTree& tree);

/// Throws SchemaError naming the offending JSON pointer.
QuantizationTree tree_from_json(const nlohmann::json& doc);

std::string serialize_tree(const QuantizationTree& tree, int indent = -1);
QuantizationTree parse_tree(const std::string& text);

void write_tree_file(const std::filesystem::path& path, const QuantizationTree& tree);
QuantizationTree read_tree_file(const std::filesystem::path& path);

/// Header "level,index,x,weight" then one row per grid point.
void write_tree_csv(std::ostream& out, const QuantizationTree& tree);

}  // namespace rmq
