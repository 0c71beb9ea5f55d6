#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tempconn/reductions.hpp"
#include "tempconn/steiner.hpp"
#include "tempconn/temporal_graph.hpp"

namespace tempconn {

// Plain-text instance formats. One record per line; blank lines and text
// after '#' are ignored. Errors carry the 1-based line number (ParseError).
//
//   tg <n> <scale>            e <u> <v> <label_scaled> <weight>
//   dst <n>                   root <r> | t <v> | a <u> <v> <w>
//   dsf <n>                   pair <s> <t> | a <u> <v> <w>
//   slc <k> <c>               r <u> <w> <a> <b>
//   st12 <n>                  e <u> <v> <w> | t <v>
//   sol                       use <edge_index>

TemporalGraph parse_temporal_graph(std::string_view text);
std::string serialize(const TemporalGraph& g);

DstInstance parse_dst(std::string_view text);
std::string serialize(const DstInstance& inst);

DsfInstance parse_dsf(std::string_view text);
std::string serialize(const DsfInstance& inst);

SlcInstance parse_slc(std::string_view text);
std::string serialize(const SlcInstance& inst);

SteinerInstance12 parse_st12(std::string_view text);
std::string serialize(const SteinerInstance12& inst);

// Edge-index list for a temporal graph.
std::vector<EdgeIndex> parse_solution(std::string_view text);
std::string serialize_solution(const Solution& sol);

// First token of the first record ("tg", "dst", ...), or "" for no records.
std::string detect_format(std::string_view text);

// Sidecar annotations naming each target element by its source role.
std::string write_map(const RtcToDst& red);
std::string write_map(const TcToDsf& red);
std::string write_map(const DstToRtc& red);
std::string write_map(const SlcToTc& red);
std::string write_map(const St12ToTc& red);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace tempconn
