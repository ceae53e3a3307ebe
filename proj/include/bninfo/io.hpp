// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <iosfwd>
#include <string>

#include "bninfo/types.hpp"

namespace bninfo {

// Network model files ("bninfo-net/1", see docs/format.md). Loading
// validates; saving emits the canonical formatting, so save(load(f)) is
// byte-identical for canonical files. Unknown fields are parse errors with
// the line number.
Network load_network(const std::string& path);
/// Parse without the validation gate (the `validate` subcommand reports
/// violations instead of failing on them).
Network load_network_unvalidated(const std::string& path);
Network parse_network(std::istream& in);
void save_network(const Network& net, const std::string& path);
std::string serialize_network(const Network& net);

// Datasets: delimiter-separated text with a header row. Discrete cells are
// level labels, continuous cells decimal literals. Column kinds and level
// maps come from `vars`.
Dataset load_dataset(const std::string& path, const std::vector<VariableMeta>& vars);
Dataset parse_dataset(std::istream& in, const std::vector<VariableMeta>& vars);
std::string serialize_dataset(const Dataset& data);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace bninfo
