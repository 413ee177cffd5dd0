#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace chaplygin::cli {

// Writes `content` to `path` via a sibling temporary file and a rename.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

// Record of one invocation, written as manifest.json next to its outputs.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::string config_json;  // full configuration echo (a JSON object)
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0.0;
  int exit_code = 0;
};

std::string manifest_to_json(const RunManifest& manifest);

}  // namespace chaplygin::cli
