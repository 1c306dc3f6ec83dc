#pragma once

#include "hmrkit/equivariant_cells.hpp"
#include "hmrkit/int_matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hmrkit {

struct OrbitEntry {
  std::size_t degree = 0;
  std::size_t cell = 0;
  std::size_t image = 0;
  bool fixed = false;
  int sign = 1;
};

struct EquivariantCWData {
  std::vector<std::size_t> cells_M;
  std::vector<std::size_t> cells_Q;
  // delta[k]: C^k -> C^{k+1}, shape cells[k+1] x cells[k].
  std::vector<IntMatrix> delta_M;
  std::vector<IntMatrix> delta_Q;
  std::vector<OrbitEntry> orbit;
};

// Throws ShapeMismatch, MalformedOrbitMap or InvalidArgument (delta^2 != 0).
void validate(const EquivariantCWData& data);
bool has_fixed_cells(const EquivariantCWData& data);

IntMatrix theta_on_cochains(const EquivariantCWData& data, std::size_t n);
IntMatrix pi_star_on_cochains(const EquivariantCWData& data, std::size_t n);
IntMatrix iota_star_on_cochains(const EquivariantCWData& data, std::size_t n);
IntMatrix coboundary(const std::vector<std::size_t>& cells, const std::vector<IntMatrix>& delta, std::size_t n);

// H^n as Z^k / diag(invariants), with chosen cocycle representatives for the generators.
class CohomologyGroup {
public:
  CohomologyGroup() = default;
  CohomologyGroup(const std::vector<std::size_t>& cells, const std::vector<IntMatrix>& delta, std::size_t n);

  std::size_t degree() const { return degree_; }
  std::size_t cochain_dim() const { return cochain_dim_; }
  // One entry per generator: 0 for Z, d > 1 for Z/d.
  const std::vector<Integer>& invariants() const { return invariants_; }
  std::size_t generator_count() const { return invariants_.size(); }
  IntVector generator(std::size_t k) const { return generators_.column(k); }
  const IntMatrix& generators() const { return generators_; }
  // Class of a cocycle, reduced modulo the invariants.
  IntVector coordinates(const IntVector& cocycle) const;
  bool is_cocycle(const IntVector& v) const;

private:
  std::size_t degree_ = 0;
  std::size_t cochain_dim_ = 0;
  IntMatrix delta_out_;
  IntMatrix cocycle_basis_;
  std::optional<LatticeSolver> cocycles_;
  IntMatrix U_;
  std::vector<std::size_t> kept_;
  std::vector<Integer> invariants_;
  IntMatrix generators_;
};

struct CohomologyMap {
  CohomologyGroup source;
  CohomologyGroup target;
  IntMatrix matrix; // target generators x source generators
};

CohomologyMap theta_on_cohomology(const EquivariantCWData& data, std::size_t n);
CohomologyMap iota_on_cohomology(const EquivariantCWData& data, std::size_t n);

std::vector<Integer> kernel_invariants(const CohomologyMap& map);
std::vector<Integer> cokernel_invariants(const CohomologyMap& map);

bool admits_real_structure(const EquivariantCWData& data, const IntVector& c1);
// H^1(M/iota) / Im Theta
std::vector<Integer> real_structure_classes(const EquivariantCWData& data);
// H^1(M)^{iota*} / Im(1 + iota*)
std::vector<Integer> invariant_quotient(const EquivariantCWData& data);

struct RealStructureCensus {
  bool exists = false;
  std::vector<Integer> torsor;
  std::vector<Integer> ker_theta;
  std::vector<Integer> h1_quotient;
  std::vector<Integer> h1_quotient_via_theta;
  bool routes_agree = false;
  bool finite = true;
  Integer size = 0; // 0 when infinite
  Integer torsion_size = 1;
};

// Without c1 the existence of a real structure is taken from assume_exists.
RealStructureCensus real_spinc_torsor(const EquivariantCWData& data, const std::optional<IntVector>& c1 = std::nullopt,
                                      bool assume_exists = true);

struct BranchedCoverInvariants {
  Integer order = 1; // 0 encodes infinite H_1
  std::size_t b1 = 0;
  std::vector<Integer> h1_invariants;
};

BranchedCoverInvariants branched_cover_invariants(const IntMatrix& A);

// M = X/H and M/iota = X/G, where H is generated by the listed generators and iota is any other generator.
EquivariantCWData cw_data_from_action(const EquivariantComplex& X, const std::vector<std::size_t>& h_generators,
                                      std::size_t iota_generator);

// Built-in fixture complexes; names as listed by builtin_cw_fixtures().
EquivariantCWData builtin_cw_fixture(const std::string& name);
std::vector<std::string> builtin_cw_fixtures();

}
