#pragma once
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace safed {

using json = nlohmann::json;

inline void ensure_dir(const std::filesystem::path& dir) {
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

inline json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("parse error in " + path.string() + ": " + e.what());
    }
    return j;
}

// nlohmann keeps object keys sorted, so dump() of the same document is
// byte-stable; every on-disk JSON goes through here.
inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

inline void save_json(const json& j, const std::filesystem::path& path) {
    ensure_dir(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << dump_json(j);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::string& text, const std::filesystem::path& path) {
    ensure_dir(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace safed
