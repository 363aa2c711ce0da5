#include <algorithm>

#include "json.hpp"
#include "wvtinfo/checksum.hpp"
#include "wvtinfo/error.hpp"
#include "wvtinfo/harness.hpp"
#include "wvtinfo/io.hpp"

namespace wvtinfo {

std::string tool_version() { return WVTINFO_VERSION; }

void ensure_writable(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    const auto probe = dir / ".write_probe";
    write_text(probe, "");
    std::filesystem::remove(probe, ec);
}

RunManifest write_manifest(const std::filesystem::path& dir, const RunConfig& cfg, double wall_seconds,
                           std::size_t workers) {
    RunManifest m;
    m.config_digest = sha256_hex(serialize_config(cfg));
    m.tool_version = tool_version();
    m.wall_seconds = wall_seconds;
    m.workers = workers;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().filename() == "manifest.json") continue;
        const std::string bytes = read_text(entry.path());
        m.files.push_back({entry.path().filename().string(), sha256_hex(bytes), bytes.size()});
    }
    std::sort(m.files.begin(), m.files.end(), [](const auto& a, const auto& b) { return a.file < b.file; });

    nlohmann::ordered_json j;
    j["tool_version"] = m.tool_version;
    j["config_digest"] = m.config_digest;
    j["workers"] = m.workers;
    j["wall_seconds"] = m.wall_seconds;
    j["files"] = nlohmann::json::array();
    for (const auto& f : m.files) j["files"].push_back({{"file", f.file}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    write_text(dir / "manifest.json", j.dump(2) + "\n");
    return m;
}

}  // namespace wvtinfo
