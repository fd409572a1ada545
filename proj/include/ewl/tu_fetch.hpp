#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <zlib.h>

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace ewl {

namespace detail {

inline uint32_t rd32(const unsigned char *p) {
    return p[0] | (p[1] << 8) | (p[2] << 16) | (uint32_t(p[3]) << 24);
}
inline uint16_t rd16(const unsigned char *p) { return static_cast<uint16_t>(p[0] | (p[1] << 8)); }

inline std::string inflate_raw(const unsigned char *data, size_t compressed_size,
                               size_t uncompressed_size) {
    std::string out(uncompressed_size, '\0');
    z_stream zs{};
    if (inflateInit2(&zs, -15) != Z_OK) throw std::runtime_error("zip: inflateInit failed");
    zs.next_in = const_cast<unsigned char *>(data);
    zs.avail_in = static_cast<uInt>(compressed_size);
    zs.next_out = reinterpret_cast<unsigned char *>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END) throw std::runtime_error("zip: inflate failed");
    return out;
}

}  // namespace detail

// Minimal zip extraction (stored and deflate entries), enough for TU
// dataset archives. Strips nothing: entry paths are recreated under dest.
inline void extract_zip(const std::string &bytes, const std::filesystem::path &dest) {
    namespace fs = std::filesystem;
    const auto *buf = reinterpret_cast<const unsigned char *>(bytes.data());
    const size_t size = bytes.size();

    // Locate End Of Central Directory.
    size_t eocd = std::string::npos;
    for (size_t i = size >= 22 ? size - 22 : 0;; --i) {
        if (detail::rd32(buf + i) == 0x06054b50) {
            eocd = i;
            break;
        }
        if (i == 0) break;
    }
    if (eocd == std::string::npos) throw std::runtime_error("zip: end of central directory not found");
    uint16_t entries = detail::rd16(buf + eocd + 10);
    uint32_t cd_offset = detail::rd32(buf + eocd + 16);

    size_t pos = cd_offset;
    for (uint16_t e = 0; e < entries; ++e) {
        if (detail::rd32(buf + pos) != 0x02014b50) throw std::runtime_error("zip: bad central directory entry");
        uint16_t method = detail::rd16(buf + pos + 10);
        uint32_t comp_size = detail::rd32(buf + pos + 20);
        uint32_t uncomp_size = detail::rd32(buf + pos + 24);
        uint16_t name_len = detail::rd16(buf + pos + 28);
        uint16_t extra_len = detail::rd16(buf + pos + 30);
        uint16_t comment_len = detail::rd16(buf + pos + 32);
        uint32_t local_offset = detail::rd32(buf + pos + 42);
        std::string name(reinterpret_cast<const char *>(buf + pos + 46), name_len);
        pos += 46u + name_len + extra_len + comment_len;

        if (name.find("..") != std::string::npos) throw std::runtime_error("zip: unsafe entry path");
        fs::path target = dest / name;
        if (!name.empty() && name.back() == '/') {
            fs::create_directories(target);
            continue;
        }
        fs::create_directories(target.parent_path());

        if (detail::rd32(buf + local_offset) != 0x04034b50)
            throw std::runtime_error("zip: bad local header");
        uint16_t lname = detail::rd16(buf + local_offset + 26);
        uint16_t lextra = detail::rd16(buf + local_offset + 28);
        const unsigned char *data = buf + local_offset + 30 + lname + lextra;

        std::string content;
        if (method == 0)
            content.assign(reinterpret_cast<const char *>(data), comp_size);
        else if (method == 8)
            content = detail::inflate_raw(data, comp_size, uncomp_size);
        else
            throw std::runtime_error("zip: unsupported compression method");
        std::ofstream out(target, std::ios::binary);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
    }
}

// Downloads NAME.zip from the TU benchmark mirror and extracts it into
// cache_dir. The archives contain a NAME/ directory with the text files.
inline std::filesystem::path fetch_tu_dataset(const std::string &name,
                                              const std::filesystem::path &cache_dir) {
    namespace fs = std::filesystem;
    fs::path dataset_dir = cache_dir / name;
    if (fs::exists(dataset_dir / (name + "_A.txt"))) return dataset_dir;

    httplib::SSLClient client("www.chrsmrrs.com");
    client.set_follow_location(true);
    client.set_connection_timeout(15);
    client.set_read_timeout(60);
    auto res = client.Get("/graphkerneldatasets/" + name + ".zip");
    if (!res || res->status != 200)
        throw std::runtime_error("fetch: download failed for dataset " + name +
                                 (res ? " (http " + std::to_string(res->status) + ")"
                                      : " (no connection)"));
    fs::create_directories(cache_dir);
    extract_zip(res->body, cache_dir);
    if (!fs::exists(dataset_dir / (name + "_A.txt")))
        throw std::runtime_error("fetch: archive did not contain expected files for " + name);
    return dataset_dir;
}

inline std::filesystem::path default_cache_dir() {
    if (const char *env = std::getenv("EWL_CACHE_DIR")) return env;
    if (const char *home = std::getenv("HOME"))
        return std::filesystem::path(home) / ".cache" / "ewl" / "datasets";
    return std::filesystem::path(".") / "ewl-datasets";
}

}  // namespace ewl
