#pragma once

#include "hmrkit/complexes.hpp"
#include "hmrkit/int_matrix.hpp"
#include "hmrkit/morse_blowup.hpp"
#include "hmrkit/real_spinc.hpp"
#include "hmrkit/tower_module.hpp"

#include "json.hpp"

#include <string>

namespace hmrkit {

using Json = nlohmann::json;

// Parse errors surface as MalformedJson.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);
Json invariants_to_json(const std::vector<Integer>& v);

Json f2_to_json(const F2Matrix& m);
F2Matrix f2_from_json(const Json& j);
Json int_matrix_to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j);
// Plain nested array, e.g. [[-1,1],[0,-1]]; rows x cols given for empty shapes.
IntMatrix int_matrix_from_rows(const Json& rows, std::size_t n_rows, std::size_t n_cols);

Json generator_to_json(const Generator& g);
Json blocks_to_json(const BlockDifferentials& b);
BlockDifferentials blocks_from_json(const Json& j);

BaseMorseData base_from_json(const Json& j);
Eigen::MatrixXd dense_from_json(const Json& j);

Json cw_to_json(const EquivariantCWData& d);
EquivariantCWData cw_from_json(const Json& j);

Json ranks_to_json(const GradedRanks& r);
Json tower_module_to_json(const TowerModule& m);
TowerModule tower_module_from_json(const Json& j);
Json tower_triple_to_json(const TowerTriple& t);

}
