#include "hmrkit/commands.hpp"

#include "hmrkit/index_grading.hpp"
#include "hmrkit/seifert_hmr.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <random>

#ifndef HMRKIT_DEFAULT_FIXTURE_DIR
#define HMRKIT_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace hmrkit {

namespace {

Json vec_to_json(const Eigen::VectorXd& v)
{
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    a.push_back(v(i));
  return a;
}

Json load_input(const Json& params)
{
  if (params.contains("data"))
    return params.at("data");
  if (params.contains("input"))
    return read_json_file(params.at("input").get<std::string>());
  fail(ErrorCode::InvalidArgument, "no input given");
}

std::optional<std::pair<std::int64_t, std::int64_t>> window_param(const Json& params)
{
  if (!params.contains("window") || params.at("window").is_null())
    return std::nullopt;
  const Json& w = params.at("window");
  std::pair<std::int64_t, std::int64_t> out;
  if (w.is_string()) {
    const std::string s = w.get<std::string>();
    const auto colon = s.find(':', 1);
    if (colon == std::string::npos)
      fail(ErrorCode::InvalidArgument, "window must look like LO:HI");
    try {
      out = {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidArgument, "window must look like LO:HI");
    }
  } else {
    out = {w.at(0).get<std::int64_t>(), w.at(1).get<std::int64_t>()};
  }
  if (out.first > out.second)
    fail(ErrorCode::InvalidArgument, "empty grading window");
  return out;
}

Json complex_report(const BlockDifferentials& blocks, std::optional<std::pair<std::int64_t, std::int64_t>> window)
{
  ThreeComplexes c = assemble(blocks);
  LesMaps maps = les_maps(blocks);
  Json gens = Json::array();
  for (const auto* list : {&blocks.interior, &blocks.stable, &blocks.unstable})
    for (const auto& g : *list)
      gens.push_back(generator_to_json(g));
  Json rep;
  rep["generators"] = gens;
  rep["d_squared"] = verify_d_squared(c);
  if (!rep["d_squared"].get<bool>())
    fail(ErrorCode::CompositionNonzero, "assembled differentials do not square to zero");
  rep["differentials_zero"] = c.check.d.is_zero() && c.hat.d.is_zero() && c.bar.d.is_zero();
  rep["chain_maps"] = chain_map_identities_hold(c, maps);
  for (Flavor f : {Flavor::Check, Flavor::Hat, Flavor::Bar}) {
    GradedRanks h = homology(c, f);
    rep["homology"][flavor_name(f)] = ranks_to_json(h);
    rep["total_rank"][flavor_name(f)] = total_rank(h);
  }
  LesReport les = les_exactness(c, maps, window);
  Json failures = Json::array();
  for (const auto& [g, spot] : les.failures)
    failures.push_back({g, spot});
  rep["les"] = {{"exact", les.exact}, {"window", {les.g_min, les.g_max}}, {"failures", failures}};
  return rep;
}

Json cmd_morse(const Json& p)
{
  BlockDifferentials blocks;
  if (p.contains("spectrum")) {
    BaseMorseData base;
    base.points.push_back({"q0", p.value("ind_Q", std::int64_t(0)),
                           diagonal_model(p.at("spectrum").get<std::vector<double>>(), p.value("tolerance", 1e-10))});
    blocks = build_model_complexes(base);
  } else if (p.contains("s3")) {
    blocks = build_model_complexes(
        s3_tower_model(p.at("s3").at("positive").get<std::size_t>(), p.at("s3").at("negative").get<std::size_t>()));
  } else if (p.contains("torus")) {
    const Json& t = p.at("torus");
    blocks = build_model_complexes(torus_tower_model(t.at("b1").get<std::size_t>(), t.at("positive").get<std::size_t>(),
                                                     t.at("negative").get<std::size_t>()));
  } else {
    Json in = load_input(p);
    blocks = in.contains("generators") ? blocks_from_json(in) : build_model_complexes(base_from_json(in));
  }
  return complex_report(blocks, window_param(p));
}

Json cmd_rp(const Json& p)
{
  LinearFlowModel model = p.contains("L") ? LinearFlowModel(dense_from_json(p.at("L")), p.value("tolerance", 1e-10))
                                          : diagonal_model(p.at("spectrum").get<std::vector<double>>(),
                                                           p.value("tolerance", 1e-10));
  Json pts = Json::array();
  for (const auto& c : rp_critical_points(model))
    pts.push_back({{"eigen_index", c.eigen_index}, {"morse_index", c.morse_index}, {"eigenvalue", c.eigenvalue},
                   {"vector", vec_to_json(c.vector)}});
  Json raw = Json::array(), counts = Json::array();
  for (std::size_t i = 1; i <= model.dim(); ++i) {
    Json r = Json::array(), row = Json::array();
    for (std::size_t j = 1; j <= model.dim(); ++j) {
      r.push_back(adjacent_trajectory_count(model, i, j));
      row.push_back(adjacent_trajectory_count_mod2(model, i, j) ? 1 : 0);
    }
    raw.push_back(r);
    counts.push_back(row);
  }
  return {{"critical_points", pts}, {"trajectory_counts", raw}, {"trajectory_counts_mod2", counts}};
}

Json cmd_flow(const Json& p)
{
  Json in = p.contains("flow") ? p.at("flow") : load_input(p);
  LinearFlowModel model(dense_from_json(in.at("L")), in.value("tolerance", p.value("tolerance", 1e-10)));
  const std::uint64_t seed = p.value("seed", in.value("seed", std::uint64_t(0)));
  Eigen::VectorXd phi0(static_cast<Eigen::Index>(model.dim()));
  if (in.contains("phi0") && !in.at("phi0").is_null()) {
    auto v = in.at("phi0").get<std::vector<double>>();
    if (v.size() != model.dim())
      fail(ErrorCode::ShapeMismatch, "phi0 has the wrong dimension");
    for (std::size_t i = 0; i < v.size(); ++i)
      phi0(static_cast<Eigen::Index>(i)) = v[i];
    if (in.value("normalize", false))
      phi0.normalize();
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Eigen::Index i = 0; i < phi0.size(); ++i)
      phi0(i) = u(rng);
    phi0.normalize();
  }
  const double s0 = in.value("s0", 1.0);
  const double t_max = in.value("t_max", 20.0);
  const double step = in.value("step", 1e-3);
  FlowTrajectory tr = integrate_blowup_flow(model, phi0, s0, t_max, step);

  double max_err = 0;
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    auto [x, s] = closed_form_state(model, phi0, s0, tr.t[k]);
    max_err = std::max(max_err, std::min((tr.phi[k] - x).cwiseAbs().maxCoeff(), (tr.phi[k] + x).cwiseAbs().maxCoeff()));
  }
  const std::size_t every = std::max<std::size_t>(1, p.value("sample_every", std::size_t(100)));
  Json samples = Json::array();
  for (std::size_t k = 0; k < tr.t.size(); ++k)
    if (k % every == 0 || k + 1 == tr.t.size())
      samples.push_back({{"t", tr.t[k]}, {"phi", vec_to_json(tr.phi[k])}, {"s", tr.s[k]}, {"lambda", tr.lambda[k]}});

  if (p.contains("csv") && !p.at("csv").is_null()) {
    const std::string path = p.at("csv").get<std::string>();
    std::ofstream out(path);
    if (!out)
      fail(ErrorCode::Io, "cannot write " + path);
    out.precision(17);
    out << "t,s,lambda";
    for (std::size_t i = 0; i < model.dim(); ++i)
      out << ",phi" << i;
    out << "\n";
    for (std::size_t k = 0; k < tr.t.size(); ++k) {
      out << tr.t[k] << "," << tr.s[k] << "," << tr.lambda[k];
      for (Eigen::Index i = 0; i < tr.phi[k].size(); ++i)
        out << "," << tr.phi[k](i);
      out << "\n";
    }
  }

  const std::size_t last = tr.t.size() - 1;
  return {{"seed", seed},
          {"phi0", vec_to_json(phi0)},
          {"eigenvalues", vec_to_json(model.eigenvalues())},
          {"converged", tr.converged},
          {"steps", last},
          {"limit_index", tr.limit_index},
          {"limit_eigenvalue", tr.limit_eigenvalue},
          {"terminal", {{"t", tr.t[last]}, {"phi", vec_to_json(tr.phi[last])}, {"s", tr.s[last]}, {"lambda", tr.lambda[last]}}},
          {"terminal_lambda_error", std::abs(tr.lambda[last] - tr.limit_eigenvalue)},
          {"closed_form_max_error", max_err},
          {"max_norm_defect", tr.max_norm_defect},
          {"samples", samples}};
}

EquivariantCWData cw_source(const Json& p)
{
  if (p.contains("fixture"))
    return cw_from_json(read_json_file(fixture_dir() + "/cw/" + p.at("fixture").get<std::string>() + ".json"));
  if (p.contains("builtin"))
    return builtin_cw_fixture(p.at("builtin").get<std::string>());
  return cw_from_json(load_input(p));
}

Json cmd_spinc(const Json& p)
{
  if (p.value("list", false))
    return {{"builtin", builtin_cw_fixtures()}};
  EquivariantCWData d = cw_source(p);
  if (p.value("emit", false))
    return cw_to_json(d);
  Json rep;
  rep["cells_M"] = d.cells_M;
  rep["cells_Q"] = d.cells_Q;
  std::size_t fixed = 0;
  for (const auto& e : d.orbit)
    fixed += e.fixed ? 1 : 0;
  rep["fixed_cells"] = fixed;
  Json theta = Json::array();
  for (std::size_t n = 0; n < d.cells_M.size(); ++n) {
    CohomologyMap m = theta_on_cohomology(d, n);
    theta.push_back({{"degree", n},
                     {"source", invariants_to_json(m.source.invariants())},
                     {"target", invariants_to_json(m.target.invariants())},
                     {"matrix", int_matrix_to_json(m.matrix)},
                     {"kernel", invariants_to_json(kernel_invariants(m))},
                     {"cokernel", invariants_to_json(cokernel_invariants(m))}});
  }
  rep["theta"] = theta;
  rep["real_structure_classes"] = invariants_to_json(real_structure_classes(d));
  rep["invariant_quotient"] = invariants_to_json(invariant_quotient(d));

  std::optional<IntVector> c1;
  if (p.contains("c1")) {
    IntVector v;
    for (const auto& x : p.at("c1"))
      v.push_back(integer_from_json(x));
    c1 = v;
  } else if (p.contains("c1_multiple")) {
    CohomologyGroup h2(d.cells_M, d.delta_M, 2);
    if (h2.generator_count() == 0)
      fail(ErrorCode::InvalidArgument, "H^2(M) has no generator to multiply");
    Integer k = integer_from_json(p.at("c1_multiple"));
    c1 = h2.generator(0);
    for (auto& x : *c1)
      x *= k;
  }
  bool exists = true;
  if (c1) {
    exists = admits_real_structure(d, *c1);
    rep["c1_admits"] = exists;
  }
  if (!has_fixed_cells(d)) {
    rep["free_involution"] = true;
  } else if (!exists) {
    rep["census"] = {{"exists", false}, {"torsor", Json::array()}};
  } else {
    RealStructureCensus c = real_spinc_torsor(d, c1);
    rep["census"] = {{"exists", c.exists},
                     {"torsor", invariants_to_json(c.torsor)},
                     {"ker_theta", invariants_to_json(c.ker_theta)},
                     {"h1_quotient", invariants_to_json(c.h1_quotient)},
                     {"h1_quotient_via_theta", invariants_to_json(c.h1_quotient_via_theta)},
                     {"h1_routes_agree", c.routes_agree},
                     {"finite", c.finite},
                     {"size", integer_to_json(c.size)},
                     {"torsion_size", integer_to_json(c.torsion_size)}};
  }
  return rep;
}

Json cmd_brieskorn(const Json& p)
{
  std::optional<std::int64_t> k_from_triple;
  BrieskornInput in;
  in.family = parse_family(p.at("family").get<std::string>(), &k_from_triple);
  in.k = k_from_triple ? *k_from_triple : p.value("k", std::int64_t(1));
  if (k_from_triple && p.contains("k") && p.at("k").get<std::int64_t>() != *k_from_triple)
    fail(ErrorCode::InvalidArgument, "k contradicts the given triple");
  IrreducibleSpectrum spectrum = brieskorn_irreducibles(in);
  BrieskornResult r = assemble_brieskorn_hmr(spectrum, window_param(p));
  auto [a, b, c] = brieskorn_triple(spectrum.family, spectrum.k);
  const std::size_t divisors = divisor_count(a, b, c, load_divisor_calibration(fixture_dir()));

  Json rep;
  rep["family"] = family_name(spectrum.family);
  rep["triple"] = {a, b, c};
  rep["k"] = spectrum.family == BrieskornFamily::Sporadic29 ? Json(nullptr) : Json(spectrum.k);
  rep["theta_minus1"] = spectrum.theta_minus1;
  Json irr = Json::array();
  for (const auto& [g, n] : spectrum.irreducibles)
    irr.push_back({g, n});
  rep["irreducibles"] = irr;
  Json pairs = Json::array();
  for (const auto& [from, to, n] : spectrum.index_one_counts)
    pairs.push_back({{"from", from}, {"to", to}, {"count", n}, {"count_mod2", n % 2}});
  rep["index_one_counts"] = pairs;
  rep["window"] = {r.window.first, r.window.second};
  if (p.contains("flavor") && !p.at("flavor").is_null()) {
    const std::string f = p.at("flavor").get<std::string>();
    Flavor fl = f == "hat" ? Flavor::Hat : f == "check" ? Flavor::Check : f == "bar" ? Flavor::Bar
                                                                                       : (fail(ErrorCode::InvalidArgument, "flavor must be hat, check or bar"), Flavor::Bar);
    rep[f] = tower_module_to_json(require_determined(r, fl));
  } else {
    rep["hat"] = tower_module_to_json(r.modules.hat);
    rep["check"] = tower_module_to_json(r.modules.check);
    rep["bar"] = tower_module_to_json(r.modules.bar);
  }
  rep["checks"] = {{"d_squared", r.d_squared}, {"les_exact", r.les.exact}, {"explicit_matches", r.explicit_matches}};
  rep["divisor_count"] = divisors;
  rep["divisor_irreducibles_agree"] = 2 * divisors == spectrum.irreducible_count();
  return rep;
}

Json cmd_lens(const Json& p)
{
  const auto pp = p.at("p").get<std::int64_t>(), q = p.at("q").get<std::int64_t>();
  auto triples = lens_hmr(pp, q);
  Json a = Json::array();
  for (const auto& t : triples)
    a.push_back(tower_triple_to_json(t));
  return {{"p", pp}, {"q", q}, {"count", triples.size()}, {"structures", a}};
}

Json cmd_psc(const Json& p)
{
  const auto b1 = p.at("b1").get<std::uint64_t>();
  const bool torsion = p.value("torsion", false);
  TowerTriple t = psc_hmr(b1, torsion);
  Json rep = tower_triple_to_json(t);
  rep["b1"] = b1;
  rep["torsion"] = torsion;
  if (auto w = window_param(p))
    for (Flavor f : {Flavor::Hat, Flavor::Check, Flavor::Bar})
      rep["ranks"][flavor_name(f)] = ranks_to_json(t.get(f).ranks(w->first, w->second));
  return rep;
}

Json cmd_index(const Json& p)
{
  Json rep;
  if (p.contains("c1sq") || p.contains("sigma")) {
    TopologicalData4 d;
    d.c1_sq = p.value("c1sq", std::int64_t(0));
    d.sigma = p.value("sigma", std::int64_t(0));
    d.b1_inv = p.value("b1", std::uint64_t(0));
    d.bplus_inv = p.value("bplus", std::uint64_t(0));
    d.b0_inv = p.value("b0", std::uint64_t(0));
    rep["index"] = closed4_index(d);
  }
  if (p.contains("loop_pairing"))
    rep["loop_shift"] = loop_grading_shift(p.at("loop_pairing").get<std::int64_t>());
  if (p.contains("pairings")) {
    GradingSetInfo info = j_structure(p.at("pairings").get<std::vector<std::int64_t>>());
    rep["j_structure"] = {{"free", info.free}, {"stabilizer_index", info.stabilizer_index}};
  }
  if (rep.is_null())
    fail(ErrorCode::InvalidArgument, "index needs --c1sq/--sigma, --loop-pairing or --pairings");
  return rep;
}

Json cmd_seifert_matrix(const Json& p)
{
  Json m = p.contains("matrix") ? p.at("matrix") : load_input(p);
  if (m.is_object() && m.contains("matrix"))
    m = m.at("matrix");
  IntMatrix A = int_matrix_from_json(m);
  BranchedCoverInvariants r = branched_cover_invariants(A);
  return {{"order", integer_to_json(r.order)}, {"b1", r.b1}, {"h1_invariants", invariants_to_json(r.h1_invariants)}};
}

}

std::string fixture_dir()
{
  if (const char* env = std::getenv("HMRKIT_FIXTURES"); env && *env)
    return env;
  return HMRKIT_DEFAULT_FIXTURE_DIR;
}

std::vector<std::string> command_names()
{
  return {"morse", "rp", "flow", "spinc", "brieskorn", "lens", "psc", "index", "seifert-matrix", "selftest"};
}

Json run_command(const std::string& command, const Json& params)
{
  try {
    if (command == "morse")
      return cmd_morse(params);
    if (command == "rp")
      return cmd_rp(params);
    if (command == "flow")
      return cmd_flow(params);
    if (command == "spinc")
      return cmd_spinc(params);
    if (command == "brieskorn")
      return cmd_brieskorn(params);
    if (command == "lens")
      return cmd_lens(params);
    if (command == "psc")
      return cmd_psc(params);
    if (command == "index")
      return cmd_index(params);
    if (command == "seifert-matrix")
      return cmd_seifert_matrix(params);
    if (command == "selftest")
      return fixtures_selftest(params.value("fixtures", fixture_dir()));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedJson, e.what());
  }
  fail(ErrorCode::InvalidArgument, "unknown command " + command);
}

Json error_object(ErrorCode code, const std::string& message)
{
  return {{"error", {{"code", static_cast<int>(code)}, {"name", error_name(code)}, {"message", message}}}};
}

Json fixtures_selftest(const std::string& dir)
{
  const auto start = std::chrono::steady_clock::now();
  Json cases = read_json_file(dir + "/reference_examples.json");
  Json results = Json::array();
  std::size_t passed = 0, failed = 0;
  for (const auto& c : cases.at("cases")) {
    const std::string name = c.value("name", "?");
    Json params = c.value("params", Json::object());
    Json discrepancies = Json::array();
    try {
      Json rep = run_command(c.at("command").get<std::string>(), params);
      if (c.contains("expect_error"))
        discrepancies.push_back("expected error " + c.at("expect_error").get<std::string>() + " but the command succeeded");
      const Json expect = c.value("expect", Json::object());
      for (auto it = expect.begin(); it != expect.end(); ++it) {
        Json::json_pointer ptr(it.key());
        if (!rep.contains(ptr))
          discrepancies.push_back(it.key() + ": missing");
        else if (rep.at(ptr) != it.value())
          discrepancies.push_back(it.key() + ": expected " + it.value().dump() + ", got " + rep.at(ptr).dump());
      }
    } catch (const Error& e) {
      if (!c.contains("expect_error") || c.at("expect_error").get<std::string>() != error_name(e.code()))
        discrepancies.push_back(std::string("error ") + error_name(e.code()) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      discrepancies.push_back(std::string("malformed case: ") + e.what());
    }
    const bool ok = discrepancies.empty();
    (ok ? passed : failed)++;
    results.push_back({{"name", name}, {"pass", ok}, {"discrepancies", discrepancies}});
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json rep = {{"passed", passed}, {"failed", failed}, {"results", results}};
  if (secs > 60)
    rep["warning"] = "selftest exceeded the 60 s budget";
  return rep;
}

}
