// Runs the basinseg executable as a subprocess.

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "basinseg/io.hpp"
#include "doctest.h"
#include "support/scratch.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& args, const scratch::Dir& dir) {
  const std::string err_path = (dir / "stderr.txt").string();
  const std::string cmd = std::string(BASINSEG_CLI) + " " + args + " 2>" + err_path;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, basinseg::io::read_text(err_path)};
}

bool one_line(const std::string& s) { return !s.empty() && s.find('\n') == s.size() - 1; }

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("pipeline on an edge list") {
  const scratch::Dir dir("cli-edges");
  basinseg::io::write_text(dir / "g.txt", "0 1 0.1\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n5 6 0.1\n");
  const std::string d = dir.path().string() + "/";

  Run r = run("watershed --edges " + d + "g.txt --out-seg " + d + "ws.txt --out-basins " + d + "bg.txt", dir);
  CHECK(r.code == 0);
  CHECK(r.out == "basins 2\n");
  CHECK(basinseg::io::read_text(dir / "ws.txt") == "0 1\n1 1\n2 1\n3 1\n4 2\n5 2\n6 2\n");
  CHECK(basinseg::io::read_text(dir / "bg.txt") == "# size 1 4\n# size 2 3\n1 2 1\n");

  r = run("cluster --basins " + d + "bg.txt --fn const:500 --out-dendrogram " + d + "dg.txt --cut level:1 --seg " +
              d + "ws.txt --out-seg " + d + "cut.txt",
          dir);
  CHECK(r.code == 0);
  CHECK(basinseg::io::read_text(dir / "dg.txt") == "# basins 2\n1 2 1 7\n");
  CHECK(basinseg::io::read_text(dir / "cut.txt") == "0 1\n1 1\n2 1\n3 1\n4 1\n5 1\n6 1\n");

  r = run("cluster --basins " + d + "bg.txt --fn linear:3000 --form omega --out-dendrogram " + d + "dg2.txt", dir);
  CHECK(r.code == 0);
  CHECK(r.out == "merges 0\n");

  r = run("segment --edges " + d + "g.txt --tmin 0.01 --tmax 1 --fn const:5 --out-seg " + d + "seg.txt", dir);
  CHECK(r.code == 0);
  CHECK(r.out == "basins 2\nsegments 1\n");

  basinseg::io::write_text(dir / "gt.txt", "0 1\n1 1\n2 1\n3 1\n4 2\n5 2\n6 2\n");
  r = run("eval --seg " + d + "ws.txt --gt " + d + "gt.txt", dir);
  CHECK(r.code == 0);
  CHECK(r.out == "V_split=1.000000 V_merge=1.000000 N=7\n");

  r = run("baseline-fh --edges " + d + "g.txt --k 0 --out-seg " + d + "fh.txt", dir);
  CHECK(r.code == 0);
  CHECK(r.out == "segments 7\n");
}

TEST_CASE("volume pipeline and the one-voxel volume") {
  const scratch::Dir dir("cli-volume");
  const std::string d = dir.path().string() + "/";
  Run r = run("synth --seed 1 --shape 1,1,1 --blobs 1 --out-volume " + d + "v.raw --out-gt " + d + "gt.raw", dir);
  REQUIRE(r.code == 0);
  r = run("watershed --volume " + d + "v.raw --out-seg " + d + "ws.raw --out-basins " + d + "bg.txt", dir);
  CHECK(r.code == 0);
  CHECK(r.out == "basins 1\n");
  CHECK(basinseg::io::read_labels(dir / "ws.raw").labels == std::vector<basinseg::Label>{1});

  r = run("synth --seed 2 --shape 8,8,8 --blobs 3 --out-volume " + d + "w.raw --out-gt " + d + "wgt.raw", dir);
  REQUIRE(r.code == 0);
  r = run("segment --volume " + d + "w.raw --tmin 0.01 --tmax 0.9 --fn const:1000 --out-seg " + d + "s.raw", dir);
  CHECK(r.code == 0);
  r = run("eval --seg " + d + "s.raw --gt " + d + "wgt.raw --out-table " + d + "t.csv", dir);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("V_split=", 0) == 0);
  CHECK(basinseg::io::read_text(dir / "t.csv").rfind("proposed,ground_truth,count\n", 0) == 0);
}

TEST_CASE("errors exit 2 with one diagnostic line") {
  const scratch::Dir dir("cli-errors");
  const std::string d = dir.path().string() + "/";
  basinseg::io::write_text(dir / "g.txt", "0 1 0.5\n");
  basinseg::io::write_text(dir / "neg.txt", "0 1 -0.5\n");
  const char* cases[] = {
      "segment --tmin 0.01 --tmax 0.9 --fn const:5 --out-seg x",
      "watershed --edges /nonexistent/g.txt --out-seg x --out-basins y",
      "watershed --edges NEG --out-seg x --out-basins y",
      "segment --edges G --fn cubic:3 --out-seg SEG",
      "segment --edges G --fn const:3 --form sigma --out-seg SEG",
      "segment --edges G --fn const:3 --tmin 0.9 --tmax 0.1 --out-seg SEG",
      "segment --edges G --fn const:3 --cut level:9 --out-seg SEG",
      "synth --out-volume v --out-gt g",
      "eval --seg G --gt G --unlabeled maybe",
      "frobnicate",
      "",
  };
  for (std::string c : cases) {
    for (auto [key, val] : {std::pair{"SEG", "seg.txt"}, {"NEG", "neg.txt"}, {"G", "g.txt"}}) {
      for (std::size_t p; (p = c.find(key)) != std::string::npos;) c.replace(p, std::string(key).size(), d + val);
    }
    CAPTURE(c);
    const Run r = run(c, dir);
    CHECK(r.code == 2);
    CHECK(one_line(r.err));
  }
  CHECK(run("--help", dir).code == 0);
  CHECK(run("segment --help", dir).code == 0);
}

TEST_SUITE_END();
