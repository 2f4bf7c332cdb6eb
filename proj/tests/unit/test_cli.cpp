// Copyright 2026 The HQS Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "hqs/hierarchy.hpp"
#include "hqs/pomdp.hpp"
#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("hqs_cli_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(dir / name) << content;
    return (dir / name).string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hqs");
  std::ostringstream out;
  std::ostringstream err;
  const int code = hqs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const char* kTwoLeaf = R"({"id":"root","children":[{"id":"a","items":["x"]},{"id":"b","items":["y"]}]})";
const char* kXY = "{\"id\":\"x\",\"vector\":[1,0]}\n{\"id\":\"y\",\"vector\":[0,1]}\n";

}  // namespace

TEST_CASE("evaluate two-leaf fixture") {
  Scratch s;
  const auto h = s.write("h.json", kTwoLeaf);
  const auto items = s.write("items.jsonl", kXY);
  const auto r = run({"evaluate", "--hierarchy", h, "--items", items, "--out", s.path("r.json"), "--reproducible"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("HQS=", 0) == 0);
  CHECK(r.out.find("over 2/2 items") != std::string::npos);
  const double expected = (hqs::reward(1, 2) + 1.0) / (1.0 + std::exp(-100.0)) - 1.0;
  const auto report = nlohmann::json::parse(slurp(s.path("r.json")));
  CHECK(report["hqs"].get<double>() == doctest::Approx(expected).epsilon(1e-15));
  CHECK(report["per_item"].size() == 2);

  const auto csv = run({"evaluate", "--hierarchy", h, "--items", items, "--out", s.path("r.csv"), "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(slurp(s.path("r.csv")).rfind("id,value,stop_depth,stop_node,belief_at_stop\n", 0) == 0);

  const auto summary =
      run({"evaluate", "--hierarchy", h, "--items", items, "--out", s.path("s.json"), "--summary-only"});
  CHECK(summary.code == 0);
  CHECK(nlohmann::json::parse(slurp(s.path("s.json")))["per_item"].empty());
}

TEST_CASE("evaluate is byte-stable for a seed") {
  Scratch s;
  const auto h = s.write("h.json", kTwoLeaf);
  const auto items = s.write("items.jsonl", kXY);
  for (const auto* name : {"a.json", "b.json"}) {
    const auto r = run({"evaluate", "--hierarchy", h, "--items", items, "--sample-frac", "0.5", "--seed", "7",
                        "--reproducible", "--out", s.path(name)});
    CHECK(r.code == 0);
    CHECK(r.out.find("over 1/2 items") != std::string::npos);
  }
  CHECK(slurp(s.path("a.json")) == slurp(s.path("b.json")));
}

TEST_CASE("evaluate input errors exit 2") {
  Scratch s;
  const auto h = s.write("h.json", R"({"id":"root","items":["x"]})");
  const auto items = s.write("items.jsonl", kXY);
  const auto mismatch = run({"evaluate", "--hierarchy", h, "--items", items});
  CHECK(mismatch.code == 2);
  CHECK(mismatch.err.find("\"y\"") != std::string::npos);
  CHECK(run({"evaluate", "--hierarchy", s.path("missing.json"), "--items", items}).code == 2);
  CHECK(run({"evaluate", "--hierarchy", h}).code == 2);
  CHECK(run({"evaluate", "--hierarchy", h, "--items", items, "--similarity", "jaccard"}).code == 2);
  const auto two = s.write("two.json", kTwoLeaf);
  CHECK(run({"evaluate", "--hierarchy", two, "--items", items, "--sample-frac", "0"}).code == 2);
  CHECK(run({"evaluate", "--hierarchy", two, "--items", items, "--delta", "-1"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("evaluate numeric failures exit 3") {
  Scratch s;
  const auto h = s.write(
      "h.json", R"({"id":"r","children":[{"id":"m","children":[{"id":"a","items":["x"]},{"id":"b","items":["y"]}]}]})");
  const auto items = s.write("items.jsonl", kXY);
  const auto r = run({"evaluate", "--hierarchy", h, "--items", items, "--delta", "1e10", "--nu", "1e308"});
  CHECK(r.code == 3);
  CHECK(r.err.find("numeric") != std::string::npos);
}

TEST_CASE("hai subcommand") {
  Scratch s;
  const auto a = s.write("a.json", R"({"id":"r","children":[{"id":"l","items":["a","b"]},{"id":"m","items":["c"]}]})");
  const auto b = s.write(
      "b.json", R"({"id":"r","children":[{"id":"p","items":["a"]},{"id":"q","items":["b"]},{"id":"s","items":["c"]}]})");
  const auto c = s.write("c.json", R"({"id":"r","items":["a","b","z"]})");
  auto same = run({"hai", a, a});
  CHECK(same.code == 0);
  CHECK(same.out == "HAI=1.000000\n");
  auto derived = run({"hai", a, b});
  CHECK(derived.code == 0);
  CHECK(derived.out == "HAI=0.777778\n");
  CHECK(run({"hai", a, c}).code == 2);
}

TEST_CASE("build-ac subcommand") {
  Scratch s;
  const auto items = s.write("line.jsonl",
                             "{\"id\":\"p0\",\"vector\":[0]}\n{\"id\":\"p1\",\"vector\":[1]}\n"
                             "{\"id\":\"p10\",\"vector\":[10]}\n{\"id\":\"p11\",\"vector\":[11]}\n");
  const auto r = run({"build-ac", "--items", items, "--out", s.path("ac.json")});
  CHECK(r.code == 0);
  const auto h = hqs::load_hierarchy(s.path("ac.json"));
  CHECK(h.node_count() == 7);
  const auto kids = h.children(h.root());
  REQUIRE(kids.size() == 2);
  CHECK(h.cluster_size(kids[0]) == 2);
  CHECK(h.cluster_size(kids[1]) == 2);

  const auto single = s.write("one.jsonl", "{\"id\":\"solo\",\"vector\":[3,4]}\n");
  CHECK(run({"build-ac", "--items", single, "--out", s.path("one.json")}).code == 0);
  CHECK(hqs::load_hierarchy(s.path("one.json")).node_count() == 1);

  const auto three = s.write("three.jsonl",
                             "{\"id\":\"p0\",\"vector\":[0]}\n{\"id\":\"p1\",\"vector\":[1]}\n"
                             "{\"id\":\"p10\",\"vector\":[10]}\n");
  CHECK(run({"build-ac", "--items", three, "--out", s.path("three.json")}).code == 0);
  CHECK(hqs::load_hierarchy(s.path("three.json")).node_count() == 5);
}

TEST_CASE("analyze-reward subcommand") {
  const auto r = run({"analyze-reward", "--gamma", "0.9", "--g", "3", "--grid", "0:1:1"});
  CHECK(r.code == 0);
  CHECK(r.out == "ell,value\n0,0\n1,0.14389999999999992\n");

  Scratch s;
  const auto star = run({"analyze-reward", "--gamma", "0.9", "--optimal-g", "--out", s.path("v.csv")});
  CHECK(star.code == 0);
  CHECK(star.out.rfind("g=3.3110704", 0) == 0);
  CHECK(slurp(s.path("v.csv")).rfind("ell,value\n0,0\n", 0) == 0);

  CHECK(run({"analyze-reward", "--gamma", "0.9"}).code == 2);
  CHECK(run({"analyze-reward", "--gamma", "0.9", "--g", "3", "--optimal-g"}).code == 2);
  CHECK(run({"analyze-reward", "--gamma", "1.5", "--g", "3"}).code == 2);
  CHECK(run({"analyze-reward", "--gamma", "0.9", "--g", "3", "--grid", "1:0:1"}).code == 2);
  CHECK(run({"analyze-reward", "--gamma", "0.9", "--g", "3", "--grid", "a:b"}).code == 2);
}
