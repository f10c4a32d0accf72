// One-off generator for the groups/ presentation files.
#include <fstream>
#include "loopshort/zoo.hpp"
int main(int argc, char** argv) {
  for (const auto& name : loopshort::preset_names()) {
    std::ofstream out(std::string(argv[1]) + "/" + name + ".grp");
    out << loopshort::preset(name).text;
  }
  return 0;
}
