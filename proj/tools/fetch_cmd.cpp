#include "fetch_cmd.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "prox/ziparchive.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace {

void download(const std::string& host, const std::string& remote_path,
              const std::string& local_path, bool quiet) {
    httplib::SSLClient client(host);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);

    if (!quiet)
        std::cerr << "fetching https://" << host << remote_path << "\n";
    auto res = client.Get(remote_path);
    if (!res)
        throw std::runtime_error("fetch: no response from " + host +
                                 " (network unavailable?)");
    if (res->status != 200)
        throw std::runtime_error("fetch: HTTP " + std::to_string(res->status) + " for " +
                                 remote_path);

    std::ofstream out(local_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("fetch: cannot write " + local_path);
    out.write(res->body.data(), static_cast<std::streamsize>(res->body.size()));
}

} // namespace

void fetch_ssa_archives(const std::string& dest_dir, bool quiet) {
    fs::create_directories(dest_dir);
    const std::string host = "www.ssa.gov";

    const std::string national_zip = (fs::path(dest_dir) / "names.zip").string();
    const std::string state_zip = (fs::path(dest_dir) / "namesbystate.zip").string();
    download(host, "/oact/babynames/names.zip", national_zip, quiet);
    download(host, "/oact/babynames/state/namesbystate.zip", state_zip, quiet);

    const auto national = prox::ziparchive::extract_to(
        national_zip, (fs::path(dest_dir) / "national").string());
    const auto state = prox::ziparchive::extract_to(
        state_zip, (fs::path(dest_dir) / "state").string());
    if (!quiet)
        std::cerr << "extracted " << national.size() << " national files, " << state.size()
                  << " state files under " << dest_dir << "\n";
}
