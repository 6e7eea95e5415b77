#pragma once

/**
 * @file actions.hpp
 * @brief Surface-kernel epimorphisms from NEC groups (1; -; [m_1..m_r])
 *        onto finite groups.
 *
 * Such a group has canonical generators d, x_1..x_r with
 *
 *   x_i^(m_i) = 1,   x_1 ... x_r d^2 = 1,
 *
 * and a map onto G is given by the images of d and of the x_i. The kernel
 * is a surface group exactly when every x_i keeps its order, and the action
 * on the quotient surface contains anticonformal elements exactly when the
 * image G+ of the orientation-preserving half has index 2.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pgonal/groups.hpp"
#include "pgonal/nec.hpp"

namespace pgonal
{

struct SurfaceKernelMap
{
  NecSignature signature;
  GroupSpec group;
  GroupElement d;
  std::vector<GroupElement> x;

  friend bool operator==(SurfaceKernelMap const &, SurfaceKernelMap const &) = default;
};

// Images of d and x_1..x_r as element indices of a FiniteGroup.
struct IndexedMap
{
  ElementId d;
  std::vector<ElementId> x;

  // Lexicographic on (x_1, .., x_r, d), i.e. on the words.
  friend auto operator<=>(IndexedMap const &lhs, IndexedMap const &rhs)
  {
    if (auto c = lhs.x <=> rhs.x; c != 0)
      return c;
    return lhs.d <=> rhs.d;
  }
  friend bool operator==(IndexedMap const &, IndexedMap const &) = default;
};

IndexedMap to_indexed(FiniteGroup const &group, SurfaceKernelMap const &map);
SurfaceKernelMap to_map(FiniteGroup const &group, NecSignature const &sig,
                        IndexedMap const &map);

struct CheckReport
{
  bool valid = false;
  std::optional<std::int64_t> genus;
  // [G : G+]
  std::int64_t orientation_index = 0;
  // No involution of G outside G+.
  bool involution_free = false;
  // Only for two-period signatures (1;-;[a,b]), which always sit with index
  // 2 in an NEC group (0;+;[2];{(a,b)}): whether the action extends to it.
  // An extended action contains reflections, hence anticonformal
  // involutions.
  std::optional<bool> extends;
  bool pseudo_real = false;
  std::vector<std::string> failures;
};

// Throws InvalidSignature unless the signature is (1;-;[m_1..m_r]).
CheckReport check(SurfaceKernelMap const &map);
CheckReport check(FiniteGroup const &group, NecSignature const &sig, IndexedMap const &map);

// G+ = < x_i, d x_i d^-1, d^2 >
Subset orientation_subgroup(FiniteGroup const &group, IndexedMap const &map);
std::vector<GroupElement> orientation_subgroup(SurfaceKernelMap const &map);

// Whether some automorphism of G inverts both d and x_1; this is the
// condition for a map on (1;-;[a,b]) to extend to (0;+;[2];{(a,b)}).
bool extends_to_reflection_overgroup(FiniteGroup const &group, IndexedMap const &map);

struct SearchOptions
{
  // Bound on the search space: the sum over admissible index-2 subgroups K
  // of |G| * prod_i #{g in K : ord g = m_i}.
  std::uint64_t budget = 100'000'000;
  unsigned workers = 1;
};

enum class MapFilter { valid, pseudo_real };

// Size of the pruned search space, saturating at UINT64_MAX.
std::uint64_t search_space_size(FiniteGroup const &group, NecSignature const &sig,
                                MapFilter filter);

// Calls visit on the matching maps, single-threaded and in a fixed order,
// until it returns false. Returns false when stopped early. Throws
// BudgetExceeded before searching.
bool visit_maps(FiniteGroup const &group, NecSignature const &sig, MapFilter filter,
                SearchOptions const &options,
                std::function<bool(IndexedMap const &)> const &visit);

// Every map passing check (and pseudo-real when asked), sorted
// lexicographically. Throws BudgetExceeded before searching.
std::vector<IndexedMap> enumerate_indexed(FiniteGroup const &group, NecSignature const &sig,
                                          MapFilter filter, SearchOptions const &options = {});

std::vector<SurfaceKernelMap> enumerate(NecSignature const &sig, GroupSpec const &spec,
                                        bool want_pseudo_real,
                                        SearchOptions const &options = {});

// Action of C_n x|_r C_p on (1;-;[p x l, n/2]): cancelling pairs x, x^-1
// (closed by x, x, x^-2 when l is odd), x_{l+1} -> y^2, d -> y^-1.
// Requires p an odd prime, 4 | n, r^n = 1 (mod p), l >= 2.
SurfaceKernelMap construct_family_i_action(std::int64_t p, std::int64_t n, std::int64_t r,
                                           std::int64_t l);

// Action of C_n x|_r C_p, r in {1, p-1}, on (1;-;[p x l, np/2]): cancelling
// pairs, then x and x^-1 y^2 (l odd) or x, x, x^-2 y^2 (l even), d -> y^-1.
// Additionally requires gcd(p, n/2) = 1.
SurfaceKernelMap construct_family_ii_action(std::int64_t p, std::int64_t n, std::int64_t r,
                                            std::int64_t l);

// Signature of theta^-1(N) for a normal subgroup N <= G+, or N = G.
NecSignature induced_quotient_signature(FiniteGroup const &group, NecSignature const &sig,
                                        IndexedMap const &map, Subset const &normal_sub);
NecSignature induced_quotient_signature(SurfaceKernelMap const &map,
                                        std::vector<GroupElement> const &normal_sub);

struct PGonalWitness
{
  SurfaceKernelMap map;
  GroupElement h_generator;
  NecSignature quotient_signature;
  std::int64_t q;
};

// Normal subgroups of order p of a group, computed once and reused over
// many maps.
class PGonalSearch
{
public:
  PGonalSearch(FiniteGroup const &group, std::int64_t p);

  struct Result
  {
    ElementId h_generator;
    NecSignature quotient_signature;
    std::int64_t q;
  };

  std::optional<Result> verify(NecSignature const &sig, IndexedMap const &map) const;

  std::size_t candidate_count() const { return _candidates.size(); }

private:
  FiniteGroup const &_group;
  std::int64_t _p;
  std::vector<std::pair<ElementId, Subset>> _candidates;
};

std::optional<PGonalWitness> verify_p_gonal(SurfaceKernelMap const &map, std::int64_t p);

// Images of the canonical generators of an NEC group (0;+;[2];{(a,b)}):
// elliptic x_1 of order 2, reflections c_0, c_1, c_2, boundary generator e,
// with c_2 = e^-1 c_0 e and x_1 e = 1. The index-2 subgroup containing no
// reflections is (1;-;[a,b]) with d = x_1 c_0, x_1 = c_0 c_1, x_2 = c_1 c_2.
struct ReflectionGroupImages
{
  GroupElement elliptic;
  GroupElement c0;
  GroupElement c1;
  GroupElement c2;
  GroupElement e;
};

// Relation failures of the images for periods (a, b); empty when they
// define an epimorphism onto their group with surface kernel.
std::vector<std::string> reflection_group_failures(ReflectionGroupImages const &images,
                                                   std::int64_t a, std::int64_t b);

struct L1Evidence
{
  std::int64_t genus;
  NecSignature delta_signature;
  NecSignature extended_signature;
  GroupSpec extended_group;
  // Oracle counts over all maps onto the group.
  std::size_t maps_total = 0;
  std::size_t maps_extending = 0;
  std::optional<SurfaceKernelMap> restricted_map;
  std::optional<ReflectionGroupImages> extended_action;
  // Image of the reflection c_0: an anticonformal involution.
  std::optional<GroupElement> involution_found;
  // Whether the closed-form map and extension recorded for this case (when
  // one exists) are themselves valid.
  std::optional<bool> closed_form_map_valid;
  std::optional<bool> closed_form_extension_valid;
  std::vector<std::string> notes;
};

struct InconsistentObstruction
{
  GroupSpec group;
  std::string reason;
  std::size_t maps_total = 0;
  std::size_t pseudo_real_maps = 0;
};

using L1Outcome = std::variant<L1Evidence, InconsistentObstruction>;

// For the l = 1 signature of the family, (1;-;[p, n/2]) or (1;-;[p, np/2]),
// builds the extension of an action of `group` (C_np or C_n x|_r C_p) to
// (0;+;[2];{(p, m)}) inside D_np or Ext2(C_n x|_r C_p). Returns
// InconsistentObstruction when r^2 != 1 (mod p), where that extension group
// does not exist.
L1Outcome l1_obstruction(std::int64_t p, std::int64_t n, Family family,
                         GroupSpec const &group, SearchOptions const &options = {});

} // namespace pgonal
