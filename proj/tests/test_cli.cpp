#include "doctest.h"

#include "hmrkit/commands.hpp"
#include "hmrkit/json_io.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace hmrkit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = 0;
  std::string out;
};

Run run_cli(const std::string& args)
{
  const std::string cmd = std::string(HMRKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path temp_dir(const std::string& tag)
{
  fs::path p = fs::temp_directory_path() / ("hmrkit_" + tag + "_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

}

TEST_CASE("shipped CW fixtures equal the builder output")
{
  for (const auto& name : builtin_cw_fixtures()) {
    CAPTURE(name);
    const fs::path file = fs::path(fixture_dir()) / "cw" / (name + ".json");
    REQUIRE(fs::exists(file));
    CHECK(read_json_file(file.string()) == cw_to_json(builtin_cw_fixture(name)));
  }
}

TEST_CASE("reference examples pass")
{
  Json r = fixtures_selftest(fixture_dir());
  CHECK(r.at("failed") == 0);
  CHECK(r.at("passed").get<int>() > 30);
  for (const auto& c : r.at("results"))
    if (!c.at("pass").get<bool>())
      FAIL_CHECK(c.dump());
}

TEST_CASE("a corrupted reference example is reported by name")
{
  fs::path dir = temp_dir("corrupt");
  fs::copy(fixture_dir(), dir, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  Json ex = read_json_file((dir / "reference_examples.json").string());
  ex["cases"][0]["expect"]["/generators/0/gr"] = 7;
  std::ofstream(dir / "reference_examples.json") << ex.dump();
  Json r = fixtures_selftest(dir.string());
  CHECK(r.at("failed") == 1);
  CHECK(r.at("results")[0].at("pass") == false);
  CHECK(r.at("results")[0].at("name") == ex["cases"][0]["name"]);
  fs::remove_all(dir);
}

TEST_CASE("blocks JSON round trip")
{
  Json in = parse_json(R"({"generators":[{"id":"a","kind":"s","gr":0},{"id":"b","kind":"u","gr":1},
                                          {"id":"c","kind":"o","gr":1}],
                           "blocks":{"os":{"rows":1,"cols":1,"ones":[[0,0]]}}})");
  BlockDifferentials b = blocks_from_json(in);
  CHECK(b.stable.size() == 1);
  CHECK(b.interior.size() == 1);
  CHECK(b.os.get(0, 0));
  CHECK(blocks_from_json(blocks_to_json(b)).os == b.os);
  Json rep = run_command("morse", {{"data", in}});
  CHECK(rep.at("d_squared") == true);
}

TEST_CASE("command errors")
{
  auto code = [](const std::string& cmd, const Json& p) {
    try {
      run_command(cmd, p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  CHECK(code("nope", Json::object()) == ErrorCode::InvalidArgument);
  CHECK(code("brieskorn", {{"family", "2,3,9"}}) == ErrorCode::UnknownFamily);
  CHECK(code("morse", {{"spectrum", {1, 1}}}) == ErrorCode::DegenerateSpectrum);
  CHECK(code("morse", {{"data", {{"generators", 3}}}}) == ErrorCode::MalformedJson);
  CHECK(code("lens", {{"p", 6}, {"q", 3}}) == ErrorCode::NotCoprime);
  CHECK(code("spinc", {{"input", "/nonexistent.json"}}) == ErrorCode::Io);
  CHECK(code("brieskorn", {{"family", "2,3,-1"}, {"k", 2}, {"flavor", "hat"}}) == ErrorCode::AmbiguousDifferential);
}

TEST_CASE("CLI reports and exit codes")
{
  Run r = run_cli("brieskorn --family 2,7,29");
  CHECK(r.status == 0);
  Json j = parse_json(r.out);
  CHECK(j.at("check").at("finite") == parse_json("[[0,2],[2,2],[4,2],[5,4],[6,2]]"));

  r = run_cli("brieskorn --family 2,3,+1 --k 4 --window -2:14 --json");
  CHECK(r.status == 0);
  CHECK(parse_json(r.out).at("window") == parse_json("[-2,14]"));

  r = run_cli("psc --b1 0 --torsion");
  CHECK(r.status == 0);
  CHECK(parse_json(r.out).at("bar").at("towers").size() == 1);

  r = run_cli("index --c1sq 8 --sigma 0 --b1 1 --bplus 1 --b0 0");
  CHECK(parse_json(r.out) == parse_json(R"({"index":1})"));

  r = run_cli("index --c1sq 3");
  CHECK(r.status == 1);
  CHECK(parse_json(r.out).at("error").at("name") == "NotDivisibleBy8");

  fs::path dir = temp_dir("cli");
  std::ofstream(dir / "bad.json") << "{ not json";
  r = run_cli("morse --input " + (dir / "bad.json").string());
  CHECK(r.status == 2);
  CHECK(parse_json(r.out).at("error").at("name") == "MalformedJson");

  r = run_cli("lens --p 3");
  CHECK(r.status == 2);
  CHECK(parse_json(r.out).contains("error"));

  r = run_cli("flow --spectrum -1,2 --seed 5 --csv " + (dir / "t.csv").string());
  CHECK(r.status == 0);
  Json f = parse_json(r.out);
  CHECK(f.at("limit_eigenvalue") == -1.0);
  CHECK(std::abs(f.at("terminal").at("lambda").get<double>() + 1) < 1e-6);
  CHECK(fs::file_size(dir / "t.csv") > 0);

  r = run_cli("lens --p 5 --q 2 --output " + (dir / "lens.json").string());
  CHECK(r.status == 0);
  CHECK(read_json_file((dir / "lens.json").string()).at("count") == 5);

  r = run_cli("selftest");
  CHECK(r.status == 0);
  fs::remove_all(dir);
}

TEST_CASE("fixture directory override")
{
  Run r = run_cli("spinc --fixture lens-3-1");
  CHECK(r.status == 0);
  const std::string cmd = "HMRKIT_FIXTURES=/nonexistent " + std::string(HMRKIT_CLI_PATH) + " spinc --fixture lens-3-1 >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(st) == 1);
}

TEST_CASE("repeated runs are byte identical")
{
  for (const char* args : {"flow --spectrum -1,2,4 --seed 9", "brieskorn --family 2,5,+1 --k 3",
                           "spinc --fixture lens-5-2", "morse --torus 2,3,3"}) {
    CAPTURE(args);
    Run a = run_cli(args), b = run_cli(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
  }
}
