#include "output.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "chaplygin/version.hpp"

namespace chaplygin::cli {

void write_file_atomically(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + temp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing " + temp.string());
  }
  std::filesystem::rename(temp, path);
}

std::string manifest_to_json(const RunManifest& manifest) {
  nlohmann::json doc;
  doc["command"] = manifest.command;
  doc["argv"] = manifest.argv;
  doc["config"] = manifest.config_json.empty() ? nlohmann::json::object() : nlohmann::json::parse(manifest.config_json);
  doc["outputs"] = manifest.outputs;
  doc["tool_version"] = kVersion;
  doc["wall_clock_seconds"] = manifest.wall_clock_seconds;
  doc["exit_code"] = manifest.exit_code;
  return doc.dump(2) + "\n";
}

}  // namespace chaplygin::cli
