#pragma once

/**
 * @file classify.hpp
 * @brief Arithmetic existence predicates for pseudo-real cyclic p-gonal
 *        surfaces with automorphism group C_np or C_n x|_r C_p, per-genus
 *        classification, maximal orders and the predicate/oracle harness.
 *
 * Throughout, l1 = 2(g+p-1)/(n(p-1)) and l2 = 2g/(n(p-1)) are the number of
 * order-p periods in the family i and family ii signatures.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgonal/actions.hpp"
#include "pgonal/groups.hpp"
#include "pgonal/nec.hpp"
#include "pgonal/rational.hpp"

namespace pgonal
{

struct Condition
{
  std::string name;
  bool passed;

  friend bool operator==(Condition const &, Condition const &) = default;
};

struct ExistenceVerdict
{
  bool exists = false;
  std::int64_t p = 0;
  std::int64_t n = 0;
  std::int64_t g = 0;
  Rational l1;
  Rational l2;
  std::int64_t gcd_pn2 = 0;
  std::vector<Condition> reasons;
  // Families whose signature carries the action when it exists.
  std::vector<Family> families;
  // Only for the general-r predicate: every r with 1 < r < p-1, r^n = 1.
  std::vector<std::int64_t> qualifying_r;
  std::vector<std::string> notes;
  std::optional<std::string> hypothesis_warning;

  bool passed(std::string const &condition) const;
};

// C_n x|_r C_p with 1 < r < p-1.
ExistenceVerdict exists_semidirect_general(std::int64_t p, std::int64_t n, std::int64_t g);
ExistenceVerdict exists_cyclic(std::int64_t p, std::int64_t n, std::int64_t g);
// C_n x|_r C_p with r = 1 or r = p-1.
ExistenceVerdict exists_semidirect_r1_pm1(std::int64_t p, std::int64_t n, std::int64_t g);

// "g <= (p-1)^2: ..." when the uniqueness of the p-gonal morphism is not
// guaranteed.
std::optional<std::string> hypothesis_warning(std::int64_t p, std::int64_t g);

// "cyclic", "r=1", "r=p-1" or "r=<value>".
std::string r_class(GroupSpec const &group);

struct ClassificationRecord
{
  std::int64_t p;
  std::int64_t g;
  std::int64_t n;
  GroupSpec group;
  std::string r_class;
  Family family;
  NecSignature signature;
  std::optional<SurfaceKernelMap> witness;
  bool pseudo_real = true;
  // Number of branch points of the p-gonal morphism.
  std::int64_t q = 0;
  bool is_max_order = false;

  std::int64_t order() const { return n * p; }
};

struct Classification
{
  std::vector<ClassificationRecord> records;
  std::vector<std::string> warnings;
  // One line per merged isomorphic duplicate.
  std::vector<std::string> merges;
};

// Groups of order above max_isomorphism_order are compared structurally:
// C_n x|_r C_p is cyclic iff r = 1 and gcd(n, p) = 1, and two metacyclic
// presentations agree iff <r> = <r'> in (Z/p)^*.
bool same_isomorphism_type(GroupSpec const &a, GroupSpec const &b);

Classification classify_genus(std::int64_t p, std::int64_t g, bool with_witnesses,
                              SearchOptions const &options = {});

struct MaximalOrderReadings
{
  // Order p g/(p-1) as stated, p g/(2(p-1)) as in the argument.
  Rational statement_order;
  Rational argument_order;
  // The gcd condition is stated on (g+p-1)/(2(p-1)) and argued on g/(2(p-1)).
  Rational statement_gcd_argument;
  Rational argument_gcd_argument;
  std::optional<std::int64_t> statement_gcd;
  std::optional<std::int64_t> argument_gcd;
};

struct MaximalOrder
{
  std::int64_t order;
  std::int64_t n;
  std::vector<std::string> group_types;
  NecSignature signature;
  Family family;
  // "g/(p-1) = 3 mod 4", "g/(p-1) = 0 mod 4" or "enumerated".
  std::string method;
  // Closed-form order for the two residue cases.
  std::optional<std::int64_t> formula_order;
  std::int64_t enumerated_order;
  std::optional<MaximalOrderReadings> readings;
  std::string resolution;
};

// Requires (p-1) | g and g > (p-1)^2; nullopt when no group exists.
std::optional<MaximalOrder> maximal_order(std::int64_t p, std::int64_t g);

struct CellResult
{
  std::int64_t g;
  std::int64_t n;
  GroupSpec group;
  std::string r_class;
  bool predicate = false;
  std::vector<Condition> predicate_reasons;
  // nullopt when the search budget was exceeded.
  std::optional<bool> oracle;
  std::optional<SurfaceKernelMap> witness;
  std::optional<std::int64_t> witness_q;
  // Signatures searched and maps inspected, or the budget overrun.
  std::string certificate;

  bool discrepancy() const { return oracle && *oracle != predicate; }
};

struct CrossValidationReport
{
  std::int64_t p;
  std::int64_t g_from;
  std::int64_t g_to;
  std::vector<CellResult> cells;
  std::vector<std::string> notes;
  bool partial = false;

  std::size_t discrepancies() const;
};

// Every cell (g, n, group) with g even in range, n even with l1 or l2 a
// positive integer, group C_np or any C_n x|_r C_p; the oracle is the
// existence of a pseudo-real p-gonal map on a family signature.
CrossValidationReport cross_validate(std::int64_t p, std::int64_t g_from, std::int64_t g_to,
                                     SearchOptions const &options = {});

} // namespace pgonal
