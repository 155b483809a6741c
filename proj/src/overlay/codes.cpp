#include "estmap/overlay/codes.hpp"

#include "estmap/records/record.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/text.hpp"

namespace estmap::overlay {

std::string_view branch_colour(char branch) {
  switch (branch) {
    case 'C': return "red";
    case 'D': return "green";
    case 'E': return "blue";
    default: return "grey";
  }
}

std::optional<MeshCode> mesh_truncate(std::string_view tree_number, int levels) {
  if (levels < 1 || !is_valid_mesh_tree_number(tree_number)) return std::nullopt;
  auto parts = text::split(tree_number, '.');
  if (parts.size() > static_cast<std::size_t>(levels)) parts.resize(static_cast<std::size_t>(levels));
  return MeshCode{text::join(parts, "."), tree_number.front()};
}

Truncated mesh_truncate(const std::vector<std::string>& tree_numbers, int levels) {
  Truncated out;
  for (const auto& t : tree_numbers) {
    auto m = mesh_truncate(t, levels);
    if (!m) {
      out.problems.push_back("malformed MeSH tree number '" + t + "'");
    } else if (kMeshBranches.find(m->branch) == std::string_view::npos) {
      ++out.filtered;
    } else {
      out.codes.push_back(m->code);
      out.branches.push_back(m->branch);
    }
  }
  return out;
}

std::optional<std::string> ipc_truncate(std::string_view code, int level) {
  if (level != 3 && level != 4) throw InputError("IPC level must be 3 or 4");
  auto norm = normalize_ipc(code);
  if (norm.size() < static_cast<std::size_t>(level) || !is_valid_ipc_code(norm)) return std::nullopt;
  return norm.substr(0, static_cast<std::size_t>(level));
}

Truncated ipc_truncate(const std::vector<std::string>& codes, int level) {
  Truncated out;
  for (const auto& c : codes) {
    if (auto t = ipc_truncate(c, level)) {
      out.codes.push_back(*t);
    } else {
      out.problems.push_back("IPC code '" + c + "' cannot be cut to level " + std::to_string(level));
    }
  }
  return out;
}

}  // namespace estmap::overlay
