#include <fstream>

#include "json.hpp"
#include "wvtinfo/error.hpp"
#include "wvtinfo/io.hpp"

namespace wvtinfo {

namespace {

std::filesystem::path with_ext(const std::filesystem::path& stem, const char* ext) {
    std::filesystem::path p = stem;
    p += ext;
    return p;
}

}  // namespace

void write_tfgrid(const std::filesystem::path& stem, const TFGrid& grid) {
    const auto bin = with_ext(stem, ".bin");
    nlohmann::ordered_json head;
    head["format"] = "wvtinfo-tfgrid-1";
    head["shape"] = {grid.rows, grid.cols};
    head["axes"] = {"time_s", "freq_hz"};
    head["dt"] = grid.dt;
    head["df"] = grid.df;
    head["t0"] = grid.t0;
    head["f0"] = grid.f0;
    head["dtype"] = "f64le";
    head["order"] = "row-major";
    head["provenance"] = grid.provenance;
    head["payload"] = bin.filename().string();
    write_text(with_ext(stem, ".json"), head.dump(2) + "\n");

    std::ofstream os(bin, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + bin.string() + " for writing");
    os.write(reinterpret_cast<const char*>(grid.values.data()),
             static_cast<std::streamsize>(grid.values.size() * sizeof(double)));
    if (!os) throw IoError("write failed for " + bin.string());
}

TFGrid read_tfgrid(const std::filesystem::path& stem) {
    const auto header = with_ext(stem, ".json");
    nlohmann::json head;
    try {
        head = nlohmann::json::parse(read_text(header));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(header.string() + ": " + e.what());
    }
    if (head.value("format", "") != "wvtinfo-tfgrid-1") throw IoError(header.string() + ": unknown format");
    TFGrid grid(head["shape"][0].get<std::size_t>(), head["shape"][1].get<std::size_t>(),
                head["dt"].get<double>(), head["df"].get<double>(), head["t0"].get<double>(),
                head["f0"].get<double>());
    grid.provenance = head.value("provenance", "");
    const auto bin = stem.parent_path() / head["payload"].get<std::string>();
    std::ifstream is(bin, std::ios::binary);
    if (!is) throw IoError("cannot open " + bin.string());
    is.read(reinterpret_cast<char*>(grid.values.data()),
            static_cast<std::streamsize>(grid.values.size() * sizeof(double)));
    if (!is) throw IoError(bin.string() + ": truncated payload");
    return grid;
}

}  // namespace wvtinfo
