#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "treegh/interleave.hpp"

namespace treegh::cli {

/// Runs one command line (program name excluded). Returns the exit status:
/// 0 on success, 1 on invalid input, 2 when a size guard refuses the input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads "alpha <node> <image-node> <height>" and "beta ..." lines; lines whose
/// first field ends in ':' are headers and are skipped.
std::pair<TreeMap, TreeMap> parse_maps(std::string_view text, int f_size, int g_size);
std::string write_maps(const TreeMap& alpha, const TreeMap& beta);

}  // namespace treegh::cli
