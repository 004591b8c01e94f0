// Writes the default synthetic world to a directory (or only its thesaurus
// when the target ends in .tsv).
#include <fstream>
#include <iostream>

#include "synthetic.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_synthetic_fixture <dir | thesaurus.tsv>\n";
    return 2;
  }
  const std::filesystem::path target = argv[1];
  const auto world = kwassign::testing::make_world();
  if (target.extension() == ".tsv") {
    std::ofstream out(target, std::ios::binary);
    kwassign::write_thesaurus(out, world.thesaurus);
  } else {
    kwassign::testing::write_world(world, target);
  }
  return 0;
}
