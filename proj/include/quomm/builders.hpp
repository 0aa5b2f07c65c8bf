#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "quomm/structure_table.hpp"

namespace quomm {

/// Deformation parameters q_ab of spl(N,1), keyed by (a,b) with a < b.
using PairParams = std::map<std::pair<int, int>, Scalar>;

/// q_ab = Param "q{a}{b}" for every a < b.
PairParams symbolic_pair_params(int n);
/// Every q_ab equal to `value`.
PairParams uniform_pair_params(int n, const Scalar& value);

struct SplOptions {
  /// Reads the anti-fermion in the (E, Vb) remainder as the fermion V(b)
  /// instead of Vb(b). Kept only to show that this reading is inconsistent.
  bool unbarred_e_vb_remainder = false;
};

/// spl(N,1)_q with q_aa = 1 and q_ba = 1/q_ab. Throws TableError for
/// N < 2, N > 9, missing or zero parameters, and non-monomial parameters.
StructureTable build_spl_n1(int n, const PairParams& q, const SplOptions& options = {});

/// Literal readings of the four spl(2,1)_{p,r,s} entries that the default
/// table encodes differently.
enum class Spl21Reading {
  vbar_block_left,     // [E^2_2, Vb^1]_{1/psr} = 0 as printed
  e11_e12_left,        // [E^1_1, E^1_2]_{1/s^2} = -(1/s^2) E^1_2 as printed
  e21_vbar1_parameter, // [E^2_1, Vb^1] with parameter ps/r as printed
  e21_e12_order,       // [E^2_1, E^1_2]_{s^2/p^2} as printed
};
const std::vector<Spl21Reading>& all_spl21_readings();
std::string to_string(Spl21Reading reading);
std::optional<Spl21Reading> parse_spl21_reading(const std::string& text);

/// The three-parameter deformation of spl(2,1). Table generators relate to
/// the natural basis of the deformation by nonzero rescalings (see
/// spl21_E / spl21_V / spl21_Vbar); `literal` swaps in printed readings.
StructureTable build_spl21(const Scalar& p, const Scalar& r, const Scalar& s,
                           const std::set<Spl21Reading>& literal = {});

/// Natural-basis generators of spl(2,1)_{p,r,s} as table expressions:
/// E^i_j, V_j and Vb^j.
Expression spl21_E(int i, int j, const Scalar& p, const Scalar& r, const Scalar& s);
Expression spl21_V(int j);
Expression spl21_Vbar(int j);

/// build_spl21(p, 1, 1/p) with the alias q := p^2 recorded.
StructureTable build_osp22_q(const Param& p, const Param& alias = Param{"q"});

/// All parameters set to 1; zero remainder terms dropped.
StructureTable classical_limit(const StructureTable& t);
/// Restriction to the even generators, dropping remainder terms with odd
/// letters.
StructureTable bosonic_truncation(const StructureTable& t);
/// Renames indices by `perm` (perm[a-1] is the new index of a) and
/// reorients rules to the standard order.
StructureTable relabel(const StructureTable& t, const std::vector<int>& perm);

/// Exponent vectors over the q_ab basis (a<b, lexicographic) of every swap
/// and remainder coefficient in the even-even sector of the symbolic
/// spl(N,1)_q table.
std::vector<std::vector<Integer>> even_sector_exponents(int n);
/// Integer rank of even_sector_exponents(n).
std::size_t effective_parameter_rank(int n);

/// Custom-table document (keys "N", "params", "order", "rules",
/// "nilpotents").
nlohmann::ordered_json serialize_table(const StructureTable& t);
/// Parses and validates a document; TableError messages carry a JSON path
/// for schema violations.
StructureTable load_custom_table(const nlohmann::json& document, const std::string& id = "custom");
StructureTable load_custom_table_file(const std::filesystem::path& path);

/// Rewrites every scalar through the table's aliases (base^2 -> alias) and
/// drops the aliases. Throws std::invalid_argument on odd powers.
StructureTable rebase_aliases(const StructureTable& t);
/// Substitutes the parameters named by `point`; the rest stay symbolic.
StructureTable specialize_table(const StructureTable& t, const ParamPoint& point);

}  // namespace quomm
