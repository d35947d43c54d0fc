#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace pedant {

using json = nlohmann::json;

// Reads one JSON document from a file. Throws IoError / ConfigError.
json read_json_file(const std::filesystem::path& path);

// Writes pretty-printed JSON plus a trailing newline.
void write_json_file(const std::filesystem::path& path, const json& value);

// Reads a JSONL file, one parsed record per non-empty line. Malformed lines
// are returned as discarded values so the caller can count skips.
std::vector<json> read_jsonl(const std::filesystem::path& path);

// Writes records one per line.
void write_jsonl(const std::filesystem::path& path, const std::vector<json>& records);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace pedant
