#ifndef PROX_TOOLS_FETCH_CMD_HPP
#define PROX_TOOLS_FETCH_CMD_HPP

#include <string>

// Downloads the published SSA archives (names.zip, namesbystate.zip) and
// unpacks them under dest/national and dest/state. The only subcommand that
// touches the network. Throws std::runtime_error on any failure.
void fetch_ssa_archives(const std::string& dest_dir, bool quiet);

#endif
