#include "hmrkit/hmrkit.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using Json = nlohmann::json;

namespace {

struct Options {
  std::string input, output, window, family, flavor, fixture, builtin, matrix, csv, spectrum, s3, torus, c1, pairings,
      fixtures;
  std::int64_t k = 1, p = 0, q = 0, c1sq = 0, sigma = 0, loop_pairing = 0, c1_multiple = 0;
  std::uint64_t b1 = 0, bplus = 0, b0 = 0, seed = 0, sample_every = 100;
  double tolerance = 1e-10, t_max = 20, step = 1e-3;
  bool torsion = false, pretty = false, json = false, emit_cw = false, list = false;
};

std::vector<double> split_doubles(const std::string& s)
{
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    out.push_back(std::stod(tok));
  return out;
}

std::vector<std::int64_t> split_ints(const std::string& s)
{
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    out.push_back(std::stoll(tok));
  return out;
}

Json usage_error(const std::string& msg)
{
  return {{"error", {{"code", HMR_INVALID_ARGUMENT}, {"name", "InvalidArgument"}, {"message", msg}}}};
}

Json build_params(const std::string& cmd, const Options& o, const CLI::App& sub)
{
  Json p = Json::object();
  auto given = [&](const char* flag) {
    const CLI::Option* opt = sub.get_option_no_throw(flag);
    return opt && opt->count() > 0;
  };
  if (given("--input"))
    p["input"] = o.input;
  if (given("--window"))
    p["window"] = o.window;
  if (given("--tolerance"))
    p["tolerance"] = o.tolerance;
  if (cmd == "morse") {
    if (given("--spectrum"))
      p["spectrum"] = split_doubles(o.spectrum);
    if (given("--s3")) {
      auto v = split_ints(o.s3);
      if (v.size() != 2)
        throw std::invalid_argument("--s3 expects POSITIVE,NEGATIVE");
      p["s3"] = {{"positive", v[0]}, {"negative", v[1]}};
    }
    if (given("--torus")) {
      auto v = split_ints(o.torus);
      if (v.size() != 3)
        throw std::invalid_argument("--torus expects B1,POSITIVE,NEGATIVE");
      p["torus"] = {{"b1", v[0]}, {"positive", v[1]}, {"negative", v[2]}};
    }
  } else if (cmd == "rp") {
    p["spectrum"] = split_doubles(o.spectrum);
  } else if (cmd == "flow") {
    p["seed"] = o.seed;
    p["sample_every"] = o.sample_every;
    if (given("--csv"))
      p["csv"] = o.csv;
    if (given("--spectrum")) {
      auto v = split_doubles(o.spectrum);
      Json L = Json::array();
      for (std::size_t i = 0; i < v.size(); ++i) {
        Json row(v.size(), 0.0);
        row[i] = v[i];
        L.push_back(row);
      }
      p["flow"] = {{"L", L}, {"s0", 1.0}, {"t_max", o.t_max}, {"step", o.step}};
    }
  } else if (cmd == "spinc") {
    if (given("--fixture"))
      p["fixture"] = o.fixture;
    if (given("--builtin"))
      p["builtin"] = o.builtin;
    if (given("--c1"))
      p["c1"] = split_ints(o.c1);
    if (given("--c1-multiple"))
      p["c1_multiple"] = o.c1_multiple;
    p["emit"] = o.emit_cw;
    p["list"] = o.list;
  } else if (cmd == "brieskorn") {
    p["family"] = o.family;
    if (given("--k"))
      p["k"] = o.k;
    if (given("--flavor"))
      p["flavor"] = o.flavor;
  } else if (cmd == "lens") {
    p["p"] = o.p;
    p["q"] = o.q;
  } else if (cmd == "psc") {
    p["b1"] = o.b1;
    p["torsion"] = o.torsion;
  } else if (cmd == "index") {
    if (given("--c1sq"))
      p["c1sq"] = o.c1sq;
    if (given("--sigma"))
      p["sigma"] = o.sigma;
    p["b1"] = o.b1;
    p["bplus"] = o.bplus;
    p["b0"] = o.b0;
    if (given("--loop-pairing"))
      p["loop_pairing"] = o.loop_pairing;
    if (given("--pairings"))
      p["pairings"] = split_ints(o.pairings);
  } else if (cmd == "seifert-matrix") {
    if (given("--matrix"))
      p["matrix"] = Json::parse(o.matrix);
  } else if (cmd == "selftest") {
    if (given("--fixtures"))
      p["fixtures"] = o.fixtures;
  }
  return p;
}

void print_module_table(std::ostream& out, const std::string& title, const Json& m)
{
  out << title << "\n";
  if (m.value("undetermined", false)) {
    out << "  undetermined\n";
    return;
  }
  for (const auto& e : m.at("finite"))
    out << "  gr " << e[0].get<std::int64_t>() << ": F2^" << e[1].get<std::int64_t>() << "\n";
  for (const auto& t : m.at("towers"))
    out << "  " << t.at("type").get<std::string>() << " tower anchored at " << t.at("anchor").get<std::int64_t>()
        << "\n";
}

void print_pretty(std::ostream& out, const Json& rep)
{
  bool any = false;
  for (const char* f : {"hat", "check", "bar"})
    if (rep.contains(f) && rep.at(f).is_object() && rep.at(f).contains("finite")) {
      print_module_table(out, f, rep.at(f));
      any = true;
    }
  if (rep.contains("homology")) {
    for (auto it = rep.at("homology").begin(); it != rep.at("homology").end(); ++it) {
      out << it.key() << " homology\n";
      for (const auto& e : it.value())
        out << "  gr " << e[0].get<std::int64_t>() << ": F2^" << e[1].get<std::int64_t>() << "\n";
    }
    any = true;
  }
  if (!any)
    out << rep.dump(2) << "\n";
}

}

int main(int argc, char** argv)
{
  CLI::App app{"hmrkit: real monopole Floer homology computations"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--pretty", o.pretty, "Render tables instead of JSON");
  app.add_flag("--json", o.json, "JSON output (default)");
  app.add_option("--output,-o", o.output, "Write the report to a file");

  const std::vector<std::pair<std::string, std::string>> cmds = {
      {"morse", "Three complexes of a blown-up Morse model"},
      {"rp", "Critical points and trajectory counts of the projectivized flow"},
      {"flow", "Integrate the blown-up gradient flow"},
      {"spinc", "Real spin-c census for an equivariant CW fixture"},
      {"brieskorn", "HMR of Brieskorn spheres"},
      {"lens", "HMR of lens spaces"},
      {"psc", "HMR of psc manifolds"},
      {"index", "Closed 4-manifold index and grading shifts"},
      {"seifert-matrix", "Homology of the branched double cover"},
      {"selftest", "Check the shipped fixtures"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, desc] : cmds) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--input,-i", o.input, "Input JSON file");
    s->add_option("--tolerance", o.tolerance);
    s->add_flag("--pretty", o.pretty);
    s->add_flag("--json", o.json);
    s->add_option("--output,-o", o.output);
    subs[name] = s;
  }
  subs["morse"]->add_option("--window", o.window, "LO:HI");
  subs["morse"]->add_option("--spectrum", o.spectrum, "Comma separated eigenvalues");
  subs["morse"]->add_option("--s3", o.s3, "POSITIVE,NEGATIVE");
  subs["morse"]->add_option("--torus", o.torus, "B1,POSITIVE,NEGATIVE");
  subs["rp"]->add_option("--spectrum", o.spectrum)->required();
  subs["flow"]->add_option("--seed", o.seed);
  subs["flow"]->add_option("--sample-every", o.sample_every);
  subs["flow"]->add_option("--csv", o.csv, "Trajectory CSV dump");
  subs["flow"]->add_option("--spectrum", o.spectrum, "Diagonal L");
  subs["flow"]->add_option("--t-max", o.t_max);
  subs["flow"]->add_option("--step", o.step);
  subs["spinc"]->add_option("--fixture", o.fixture, "Name under fixtures/cw");
  subs["spinc"]->add_option("--builtin", o.builtin, "Generated fixture name");
  subs["spinc"]->add_option("--c1", o.c1, "Cochain on 2-cells of M");
  subs["spinc"]->add_option("--c1-multiple", o.c1_multiple, "Multiple of the first H^2 generator");
  subs["spinc"]->add_flag("--emit-cw", o.emit_cw, "Print the CW data instead of the census");
  subs["spinc"]->add_flag("--list", o.list, "List the generated fixture names");
  subs["brieskorn"]->add_option("--family", o.family)->required();
  subs["brieskorn"]->add_option("--k", o.k);
  subs["brieskorn"]->add_option("--window", o.window, "LO:HI");
  subs["brieskorn"]->add_option("--flavor", o.flavor, "hat, check or bar");
  subs["lens"]->add_option("--p", o.p)->required();
  subs["lens"]->add_option("--q", o.q)->required();
  subs["psc"]->add_option("--b1", o.b1);
  subs["psc"]->add_flag("--torsion", o.torsion);
  subs["psc"]->add_option("--window", o.window, "LO:HI");
  subs["index"]->add_option("--c1sq", o.c1sq);
  subs["index"]->add_option("--sigma", o.sigma);
  subs["index"]->add_option("--b1", o.b1);
  subs["index"]->add_option("--bplus", o.bplus);
  subs["index"]->add_option("--b0", o.b0);
  subs["index"]->add_option("--loop-pairing", o.loop_pairing);
  subs["index"]->add_option("--pairings", o.pairings, "Comma separated <c1, gamma> values");
  subs["seifert-matrix"]->add_option("--matrix", o.matrix, "JSON nested array");
  subs["selftest"]->add_option("--fixtures", o.fixtures, "Fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << usage_error(e.what()).dump() << "\n";
    std::cerr << "hmrkit: " << e.what() << "\n";
    return 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  Json params;
  try {
    params = build_params(cmd, o, *sub);
  } catch (const std::exception& e) {
    std::cout << usage_error(e.what()).dump() << "\n";
    std::cerr << "hmrkit: " << e.what() << "\n";
    return 2;
  }

  hmr_context* ctx = hmr_context_create();
  const char* report = nullptr;
  const hmr_status st = hmr_run(ctx, cmd.c_str(), params.dump().c_str(), &report);
  int code = 0;
  std::string text;
  if (st != HMR_OK) {
    text = hmr_last_error(ctx);
    std::cerr << "hmrkit: " << hmr_status_name(st) << "\n";
    code = st == HMR_MALFORMED_JSON ? 2 : 1;
  } else {
    Json rep = Json::parse(report);
    if (cmd == "selftest" && rep.value("failed", 0) > 0)
      code = 1;
    if (o.pretty) {
      std::ostringstream ss;
      print_pretty(ss, rep);
      text = ss.str();
    } else {
      text = rep.dump();
    }
  }
  hmr_context_destroy(ctx);
  if (!text.empty() && text.back() != '\n')
    text += '\n';
  if (!o.output.empty() && code == 0) {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) {
      std::cout << Json{{"error", {{"code", HMR_IO}, {"name", "Io"}, {"message", "cannot write " + o.output}}}}.dump()
                << "\n";
      return 1;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return code;
}
