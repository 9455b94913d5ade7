#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "walklis/walk.hpp"

namespace walklis {

// Flat binary walk format, little-endian:
//   magic "WLKS", u32 version, u32 law id, u32 uniform half-width,
//   u32 dimension, u64 seed, i64 steps, then (steps+1)*d f64 values.
void save_walk_binary(const Walk& walk, const std::string& path);
Walk load_walk_binary(const std::string& path);

// CSV with header t,x1..xd; one time point per row.
void write_walk_csv(const Walk& walk, std::ostream& out);
void save_walk_csv(const Walk& walk, const std::string& path);

// Chain CSV: header "index", one chain index per row.
void save_chain_csv(const std::vector<std::int64_t>& chain, const std::string& path);

// Whitespace-separated decimal values, d per point (one point per line for
// d > 1, but any whitespace layout parses). Throws std::runtime_error with
// the 1-based line number on malformed input.
std::vector<double> parse_sequence_file(const std::string& path, int dimension = 1);

}  // namespace walklis
