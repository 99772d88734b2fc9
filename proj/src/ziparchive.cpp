#include "prox/ziparchive.hpp"

#include <zlib.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace prox::ziparchive {

namespace {

constexpr std::uint32_t kEocdSig = 0x06054b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kLocalSig = 0x04034b50;

std::uint16_t rd16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t rd32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::vector<unsigned char> inflate_raw(const unsigned char* src, std::size_t src_size,
                                       std::size_t dst_size) {
    std::vector<unsigned char> out(dst_size);
    z_stream zs;
    std::memset(&zs, 0, sizeof(zs));
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK)
        throw std::runtime_error("zip: inflateInit failed");
    zs.next_in = const_cast<unsigned char*>(src);
    zs.avail_in = static_cast<uInt>(src_size);
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(dst_size);
    const int rc = inflate(&zs, Z_FINISH);
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || zs.total_out != dst_size)
        throw std::runtime_error("zip: deflate stream truncated or corrupt");
    return out;
}

} // namespace

std::vector<Entry> read_archive(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("zip: cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (bytes.size() < 22)
        throw std::runtime_error("zip: file too small: " + path);

    // EOCD: scan backwards through the (possibly commented) tail.
    std::size_t eocd = std::string::npos;
    const std::size_t scan_lo = bytes.size() > 22 + 65536 ? bytes.size() - 22 - 65536 : 0;
    for (std::size_t i = bytes.size() - 22 + 1; i-- > scan_lo;) {
        if (rd32(&bytes[i]) == kEocdSig) {
            eocd = i;
            break;
        }
    }
    if (eocd == std::string::npos)
        throw std::runtime_error("zip: no end-of-central-directory in " + path);

    const std::uint16_t entry_count = rd16(&bytes[eocd + 10]);
    std::size_t offset = rd32(&bytes[eocd + 16]);

    std::vector<Entry> entries;
    for (std::uint16_t e = 0; e < entry_count; ++e) {
        if (offset + 46 > bytes.size() || rd32(&bytes[offset]) != kCentralSig)
            throw std::runtime_error("zip: bad central directory in " + path);
        const std::uint16_t method = rd16(&bytes[offset + 10]);
        const std::uint32_t comp_size = rd32(&bytes[offset + 20]);
        const std::uint32_t uncomp_size = rd32(&bytes[offset + 24]);
        const std::uint16_t name_len = rd16(&bytes[offset + 28]);
        const std::uint16_t extra_len = rd16(&bytes[offset + 30]);
        const std::uint16_t comment_len = rd16(&bytes[offset + 32]);
        const std::uint32_t local_off = rd32(&bytes[offset + 42]);
        const std::string name(reinterpret_cast<const char*>(&bytes[offset + 46]), name_len);
        offset += 46u + name_len + extra_len + comment_len;

        if (!name.empty() && name.back() == '/')
            continue; // directory entry
        if (local_off + 30 > bytes.size() || rd32(&bytes[local_off]) != kLocalSig)
            throw std::runtime_error("zip: bad local header for " + name);
        const std::uint16_t l_name = rd16(&bytes[local_off + 26]);
        const std::uint16_t l_extra = rd16(&bytes[local_off + 28]);
        const std::size_t data_off = local_off + 30u + l_name + l_extra;
        if (data_off + comp_size > bytes.size())
            throw std::runtime_error("zip: truncated data for " + name);

        Entry entry;
        entry.name = name;
        if (method == 0) {
            if (comp_size != uncomp_size)
                throw std::runtime_error("zip: stored-size mismatch for " + name);
            entry.data.assign(bytes.begin() + static_cast<long>(data_off),
                              bytes.begin() + static_cast<long>(data_off + comp_size));
        } else if (method == 8) {
            entry.data = inflate_raw(&bytes[data_off], comp_size, uncomp_size);
        } else {
            throw std::runtime_error("zip: unsupported compression method for " + name);
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<std::string> extract_to(const std::string& path, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    for (const auto& entry : read_archive(path)) {
        std::string base = entry.name;
        if (auto pos = base.find_last_of('/'); pos != std::string::npos)
            base = base.substr(pos + 1);
        if (base.empty()) continue;
        const fs::path dest = fs::path(out_dir) / base;
        std::ofstream out(dest, std::ios::binary);
        if (!out)
            throw std::runtime_error("zip: cannot write " + dest.string());
        out.write(reinterpret_cast<const char*>(entry.data.data()),
                  static_cast<std::streamsize>(entry.data.size()));
        written.push_back(dest.string());
    }
    return written;
}

} // namespace prox::ziparchive
