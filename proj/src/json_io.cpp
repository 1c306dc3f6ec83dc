#include "hmrkit/json_io.hpp"

#include "hmrkit/error.hpp"

#include <fstream>
#include <sstream>

namespace hmrkit {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f())
{
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::MalformedJson, std::string(what) + ": " + e.what());
  }
}

std::size_t size_field(const Json& j, const char* key) { return j.at(key).get<std::size_t>(); }

}

Json parse_json(const std::string& text)
{
  return guarded("invalid JSON", [&] { return Json::parse(text); });
}

Json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    fail(ErrorCode::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return guarded(path.c_str(), [&] { return Json::parse(ss.str()); });
}

Json integer_to_json(const Integer& x)
{
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

Integer integer_from_json(const Json& j)
{
  if (j.is_string())
    return Integer(j.get<std::string>());
  if (j.is_number_integer())
    return Integer(j.get<std::int64_t>());
  fail(ErrorCode::MalformedJson, "expected an integer");
}

Json invariants_to_json(const std::vector<Integer>& v)
{
  Json a = Json::array();
  for (const auto& x : v)
    a.push_back(integer_to_json(x));
  return a;
}

Json f2_to_json(const F2Matrix& m)
{
  Json ones = Json::array();
  for (auto [r, c] : m.positions())
    ones.push_back({r, c});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"ones", ones}};
}

F2Matrix f2_from_json(const Json& j)
{
  return guarded("F2 matrix", [&] {
    std::vector<std::pair<std::size_t, std::size_t>> ones;
    for (const auto& p : j.value("ones", Json::array()))
      ones.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
    return F2Matrix::from_positions(size_field(j, "rows"), size_field(j, "cols"), ones);
  });
}

Json int_matrix_to_json(const IntMatrix& m)
{
  Json data = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(integer_to_json(m(r, c)));
    data.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

IntMatrix int_matrix_from_rows(const Json& rows, std::size_t n_rows, std::size_t n_cols)
{
  return guarded("integer matrix", [&] {
    if (!rows.is_array() || rows.size() != n_rows)
      fail(ErrorCode::ShapeMismatch, "integer matrix has the wrong number of rows");
    IntMatrix m(n_rows, n_cols);
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (!rows[r].is_array() || rows[r].size() != n_cols)
        fail(ErrorCode::ShapeMismatch, "integer matrix row " + std::to_string(r) + " has the wrong length");
      for (std::size_t c = 0; c < n_cols; ++c)
        m(r, c) = integer_from_json(rows[r][c]);
    }
    return m;
  });
}

IntMatrix int_matrix_from_json(const Json& j)
{
  return guarded("integer matrix", [&] {
    if (j.is_array()) {
      std::size_t cols = j.empty() ? 0 : j.at(0).size();
      return int_matrix_from_rows(j, j.size(), cols);
    }
    return int_matrix_from_rows(j.at("data"), size_field(j, "rows"), size_field(j, "cols"));
  });
}

Json generator_to_json(const Generator& g)
{
  return {{"id", g.id}, {"kind", std::string(1, kind_letter(g.kind))}, {"gr", g.gr}, {"bar_gr", g.bar_gr()}};
}

namespace {

const char* const block_names[] = {"oo", "os", "uo", "us", "bar_ss", "bar_us", "bar_su", "bar_uu"};

F2Matrix* block_ptr(BlockDifferentials& b, const std::string& name)
{
  if (name == "oo") return &b.oo;
  if (name == "os") return &b.os;
  if (name == "uo") return &b.uo;
  if (name == "us") return &b.us;
  if (name == "bar_ss") return &b.bar_ss;
  if (name == "bar_us") return &b.bar_us;
  if (name == "bar_su") return &b.bar_su;
  if (name == "bar_uu") return &b.bar_uu;
  return nullptr;
}

}

Json blocks_to_json(const BlockDifferentials& b)
{
  Json gens = Json::array();
  for (const auto* list : {&b.interior, &b.stable, &b.unstable})
    for (const auto& g : *list)
      gens.push_back({{"id", g.id}, {"kind", std::string(1, kind_letter(g.kind))}, {"gr", g.gr}});
  Json blocks = Json::object();
  BlockDifferentials copy = b;
  for (const char* name : block_names)
    blocks[name] = f2_to_json(*block_ptr(copy, name));
  return {{"generators", gens}, {"blocks", blocks}};
}

BlockDifferentials blocks_from_json(const Json& j)
{
  return guarded("complex", [&] {
    BlockDifferentials b;
    for (const auto& g : j.at("generators")) {
      std::string kind = g.at("kind").get<std::string>();
      if (kind.size() != 1)
        fail(ErrorCode::InvalidArgument, "generator kind must be one of o, s, u");
      Generator gen{g.at("id").get<std::string>(), kind_from_letter(kind[0]), g.at("gr").get<std::int64_t>()};
      (gen.kind == Kind::Interior ? b.interior : gen.kind == Kind::Stable ? b.stable : b.unstable).push_back(gen);
    }
    b.reset_blocks();
    const Json& blocks = j.value("blocks", Json::object());
    for (auto it = blocks.begin(); it != blocks.end(); ++it) {
      F2Matrix* dst = block_ptr(b, it.key());
      if (!dst)
        fail(ErrorCode::InvalidArgument, "unknown block " + it.key());
      *dst = f2_from_json(it.value());
    }
    return b;
  });
}

Eigen::MatrixXd dense_from_json(const Json& j)
{
  return guarded("real matrix", [&] {
    const auto n = static_cast<Eigen::Index>(j.size());
    const auto m = n == 0 ? 0 : static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd out(n, m);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (static_cast<Eigen::Index>(j.at(r).size()) != m)
        fail(ErrorCode::ShapeMismatch, "ragged real matrix");
      for (Eigen::Index c = 0; c < m; ++c)
        out(r, c) = j.at(r).at(c).get<double>();
    }
    return out;
  });
}

BaseMorseData base_from_json(const Json& j)
{
  return guarded("base Morse data", [&] {
    BaseMorseData base;
    const double tol = j.value("tolerance", 1e-10);
    for (const auto& p : j.at("base_points")) {
      std::string label = p.value("label", "q" + std::to_string(base.points.size()));
      base.points.push_back({label, p.at("ind_Q").get<std::int64_t>(), LinearFlowModel(dense_from_json(p.at("L")), tol)});
    }
    if (j.contains("base_counts"))
      base.counts = f2_from_json(j.at("base_counts"));
    if (j.contains("anchor"))
      base.anchor = GradingAnchor{j.at("anchor").at("id").get<std::string>(),
                                  j.at("anchor").at("grading").get<std::int64_t>()};
    return base;
  });
}

Json cw_to_json(const EquivariantCWData& d)
{
  auto deltas = [](const std::vector<IntMatrix>& v) {
    Json a = Json::array();
    for (const auto& m : v)
      a.push_back(int_matrix_to_json(m).at("data"));
    return a;
  };
  Json orbit = Json::array();
  for (const auto& e : d.orbit)
    orbit.push_back({{"cell", {e.degree, e.cell}}, {"image", e.image}, {"fixed", e.fixed}, {"sign", e.sign}});
  return {{"cells_M", d.cells_M}, {"cells_Q", d.cells_Q}, {"delta_M", deltas(d.delta_M)},
          {"delta_Q", deltas(d.delta_Q)}, {"orbit", orbit}};
}

EquivariantCWData cw_from_json(const Json& j)
{
  return guarded("CW data", [&] {
    EquivariantCWData d;
    d.cells_M = j.at("cells_M").get<std::vector<std::size_t>>();
    d.cells_Q = j.at("cells_Q").get<std::vector<std::size_t>>();
    auto deltas = [](const Json& a, const std::vector<std::size_t>& cells, const char* which) {
      std::vector<IntMatrix> out;
      if (a.size() + 1 != cells.size() && !(cells.empty() && a.empty()))
        fail(ErrorCode::ShapeMismatch, std::string("delta_") + which + " must have one matrix per degree below the top");
      for (std::size_t k = 0; k < a.size(); ++k)
        out.push_back(int_matrix_from_rows(a[k], cells[k + 1], cells[k]));
      return out;
    };
    d.delta_M = deltas(j.at("delta_M"), d.cells_M, "M");
    d.delta_Q = deltas(j.at("delta_Q"), d.cells_Q, "Q");
    for (const auto& e : j.at("orbit")) {
      OrbitEntry o;
      o.degree = e.at("cell").at(0).get<std::size_t>();
      o.cell = e.at("cell").at(1).get<std::size_t>();
      o.image = e.at("image").get<std::size_t>();
      o.fixed = e.at("fixed").get<bool>();
      o.sign = e.value("sign", 1);
      d.orbit.push_back(o);
    }
    validate(d);
    return d;
  });
}

Json ranks_to_json(const GradedRanks& r)
{
  Json a = Json::array();
  for (const auto& [g, k] : r)
    a.push_back({g, k});
  return a;
}

Json tower_module_to_json(const TowerModule& m)
{
  Json finite = Json::array();
  for (const auto& [g, k] : m.finite)
    finite.push_back({g, k});
  Json towers = Json::array();
  for (const auto& t : m.towers)
    towers.push_back({{"type", tower_type_name(t.type)}, {"anchor", t.anchor}});
  return {{"finite", finite}, {"towers", towers}, {"undetermined", m.undetermined}};
}

TowerModule tower_module_from_json(const Json& j)
{
  return guarded("tower module", [&] {
    TowerModule m;
    for (const auto& f : j.at("finite"))
      m.add_finite(f.at(0).get<std::int64_t>(), f.at(1).get<std::size_t>());
    for (const auto& t : j.at("towers"))
      m.add_tower(tower_type_from_name(t.at("type").get<std::string>()), t.at("anchor").get<std::int64_t>());
    m.undetermined = j.value("undetermined", false);
    return m;
  });
}

Json tower_triple_to_json(const TowerTriple& t)
{
  return {{"hat", tower_module_to_json(t.hat)}, {"check", tower_module_to_json(t.check)},
          {"bar", tower_module_to_json(t.bar)}};
}

}
