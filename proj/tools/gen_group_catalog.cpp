// Writes the bundled group tables: nilpotent groups into DIR, the
// non-nilpotent controls into DIR/controls.
#include <cctype>
#include <filesystem>
#include <iostream>

#include "fibgirth/finite_group.hpp"
#include "fibgirth/group_catalog.hpp"

namespace fs = std::filesystem;

static std::string file_name(const std::string& group) {
  std::string out;
  for (char c : group) out += c == ':' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out + ".json";
}

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_group_catalog DIR\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir / "controls");
  int written = 0;
  for (const auto& g : fibgirth::catalog::nilpotent_catalog()) {
    fibgirth::save_group(g, dir / file_name(g.name()));
    ++written;
  }
  for (const auto& g : fibgirth::catalog::control_catalog()) {
    fibgirth::save_group(g, dir / "controls" / file_name(g.name()));
    ++written;
  }
  std::cout << written << " groups written to " << dir.string() << '\n';
}
