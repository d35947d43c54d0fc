#include "pedant/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "pedant/errors.hpp"

namespace pedant {

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) throw ConfigError("invalid JSON in " + path.string());
    return value;
}

void write_json_file(const std::filesystem::path& path, const json& value) {
    write_text_file(path, value.dump(2) + "\n");
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::vector<json> records;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line) {
            if (c != ' ' && c != '\t') {
                blank = false;
                break;
            }
        }
        if (blank) continue;
        records.push_back(json::parse(line, nullptr, false));
    }
    return records;
}

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& records) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path.string());
    for (const auto& r : records) out << r.dump() << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace pedant
