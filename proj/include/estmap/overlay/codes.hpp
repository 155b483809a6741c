#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace estmap::overlay {

struct MeshCode {
  std::string code;
  char branch = 'C';
};

/// Diseases, drugs, techniques: the branches drawn on the MeSH map.
inline constexpr std::string_view kMeshBranches = "CDE";
/// "red", "green" or "blue" for C, D, E; "grey" otherwise.
std::string_view branch_colour(char branch);

struct Truncated {
  std::vector<std::string> codes;    // one per accepted input, in order
  std::vector<char> branches;        // MeSH only, aligned with codes
  std::vector<std::string> problems; // malformed or too short
  std::size_t filtered = 0;          // well-formed but outside the kept branches
};

/// Keeps the first `levels` dot-segments of tree numbers in C, D or E.
std::optional<MeshCode> mesh_truncate(std::string_view tree_number, int levels = 2);
Truncated mesh_truncate(const std::vector<std::string>& tree_numbers, int levels = 2);

/// First 3 ("C12") or 4 ("C12N") characters of an IPC code.
std::optional<std::string> ipc_truncate(std::string_view code, int level);
Truncated ipc_truncate(const std::vector<std::string>& codes, int level);

}  // namespace estmap::overlay
