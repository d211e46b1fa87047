#pragma once

// Input files for exercising the command line front-end.

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <unistd.h>

namespace fixtures {

namespace fs = std::filesystem;

inline const std::map<std::string, std::string>& files() {
  static const std::map<std::string, std::string> f{
      {"xiX.json",
       R"({"kind":"translated","states":["0","1"],"graph":{"kind":"lattice_z","k":1,"window":[-6,6]},)"
       R"("base":"0","radius":0,"template":[{"support":[0],"table":{"1":"1"}}]})"},
      {"etaA.json", R"({"assignments":[[0,"1"],[3,"1"]]})"},
      {"etaB.json", R"({"assignments":[[1,"1"],[3,"1"]]})"},
      {"pair.json", R"({"support":[0,1],"table":{"1,1":"1","1,0":"1/2"}})"},
      {"six.json",
       R"({"kind":"explicit","states":["0","1"],"graph":{"kind":"lattice_z","k":1,"window":[0,6]},"base":"0",)"
       R"("radius":2,"components":[{"support":[0,1],"table":{"1,1":"1"}},{"support":[1,2],"table":{"1,1":"1"}},)"
       R"({"support":[2,3],"table":{"1,1":"1"}},{"support":[3,4],"table":{"1,1":"1"}},)"
       R"({"support":[4,5],"table":{"1,1":"1"}},{"support":[5,6],"table":{"1,1":"1"}}]})"},
      {"two.json", R"({"states":["-1","0","1"],"base":"0","edges":[[["1","-1"],["-1","1"]],[["1","-1"],["0","0"]],)"
                   R"([["0","0"],["-1","1"]],[["-1","0"],["0","-1"]],[["1","0"],["0","1"]]]})"},
  };
  return f;
}

// Writes every fixture into a fresh directory and returns its path.
inline fs::path write_all(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("latticecalc_" + tag + "_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  for (const auto& [name, text] : files()) std::ofstream(dir / name) << text;
  return dir;
}

// One argument list per documented subcommand, using files in `dir`.
inline std::vector<std::vector<std::string>> documented_commands(const fs::path& dir) {
  auto f = [&](const char* name) { return (dir / name).string(); };
  return {
      {"consv", "--interaction", "multispecies:2", "--base", "0"},
      {"exchangeable", "--interaction", "quastel2"},
      {"expand", "--interaction", "exclusion", "--function", f("pair.json"), "--base", "1"},
      {"rebase", "--function", f("six.json"), "--base", "1"},
      {"diff", "--function", f("xiX.json"), "--from", f("etaA.json"), "--to", f("etaB.json")},
      {"neighbors", "--interaction", f("two.json"), "--graph", "lattice_z:1:-3:3", "--config", "", "--window", "0:1"},
      {"component", "--interaction", "exclusion", "--graph", "path:4", "--config", "0=1,2=1"},
      {"swap-path", "--interaction", "exclusion", "--graph", "lattice_z:1:-6:6", "--config", "0=1", "--x", "0", "--y",
       "3"},
      {"invariant", "--interaction", "exclusion", "--function", f("six.json"), "--probe-bound", "2"},
      {"h0", "--interaction", "two-species-ac", "--graph", "path:2"},
      {"extract", "--interaction", "exclusion", "--function", f("xiX.json")},
      {"kernel", "--interaction", "exclusion", "--radius", "1", "--window", "0:7"},
  };
}

}  // namespace fixtures
