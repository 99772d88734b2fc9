#ifndef PROX_ZIPARCHIVE_HPP
#define PROX_ZIPARCHIVE_HPP

#include <string>
#include <vector>

// Just enough of the zip format to unpack the published SSA archives:
// central-directory walk, stored and deflate entries. No zip64, no
// encryption.

namespace prox::ziparchive {

struct Entry {
    std::string name;
    std::vector<unsigned char> data;
};

std::vector<Entry> read_archive(const std::string& path);

// Extracts regular-file entries under out_dir, flattening any directory
// components in entry names. Returns the files written.
std::vector<std::string> extract_to(const std::string& path, const std::string& out_dir);

} // namespace prox::ziparchive

#endif
