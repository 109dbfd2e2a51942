// Golden-output harness: runs the CLI on a fixed corpus and byte-compares
// stdout against checked-in expectations.  argv[1] = CLI binary, argv[2] =
// corpus directory containing manifest.json, inst/*.json, and *.out files.
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "json.hpp"

namespace {

std::string substitute(std::string s, const std::string& dir) {
  const std::string key = "@DIR@";
  for (size_t pos; (pos = s.find(key)) != std::string::npos;)
    s.replace(pos, key.size(), dir);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <gvf-binary> <corpus-dir>\n", argv[0]);
    return 2;
  }
  std::string cli = argv[1], dir = argv[2];

  std::ifstream mf(dir + "/manifest.json");
  if (!mf) {
    std::fprintf(stderr, "cannot open %s/manifest.json\n", dir.c_str());
    return 2;
  }
  nlohmann::json manifest = nlohmann::json::parse(mf);

  int failures = 0;
  for (const auto& c : manifest) {
    std::string name = c.at("name").get<std::string>();
    int want_exit = c.at("exit").get<int>();
    std::vector<std::string> args;
    for (const auto& a : c.at("args"))
      args.push_back(substitute(a.get<std::string>(), dir));

    std::string expected;
    if (!testutil::read_file(dir + "/" + name + ".out", expected)) {
      std::printf("FAIL %s: missing expectation file\n", name.c_str());
      ++failures;
      continue;
    }

    testutil::CliResult first = testutil::run_cli(cli, args);
    testutil::CliResult second = testutil::run_cli(cli, args);
    bool ok = true;
    if (first.exit_code != want_exit) {
      std::printf("FAIL %s: exit %d, want %d\n", name.c_str(), first.exit_code,
                  want_exit);
      ok = false;
    }
    if (first.out != expected) {
      std::printf("FAIL %s: output mismatch (%zu vs %zu bytes)\n", name.c_str(),
                  first.out.size(), expected.size());
      std::printf("---- got ----\n%s---- want ----\n%s----\n",
                  first.out.c_str(), expected.c_str());
      ok = false;
    }
    if (second.out != first.out || second.exit_code != first.exit_code) {
      std::printf("FAIL %s: output not reproducible across runs\n",
                  name.c_str());
      ok = false;
    }
    if (ok)
      std::printf("ok   %s\n", name.c_str());
    else
      ++failures;
  }
  if (failures) {
    std::printf("%d golden case(s) failed\n", failures);
    return 1;
  }
  std::printf("all golden cases passed\n");
  return 0;
}
