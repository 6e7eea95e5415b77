#pragma once

/**
 * @file nec.hpp
 * @brief Signatures of NEC groups and the exact arithmetic on them.
 *
 * A signature (h; +/-; [m_1, ..., m_r]; {C_1, ..., C_k}) determines an NEC
 * group up to isomorphism. Everything in this header is exact: areas are
 * rationals normalized by 2*pi, genera are integers.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgonal/rational.hpp"

namespace pgonal
{

struct NecSignature
{
  std::int64_t genus = 0;
  bool orientable = true;
  // Kept in the order given: generator x_i has period proper_periods[i].
  std::vector<std::int64_t> proper_periods;
  std::vector<std::vector<std::int64_t>> period_cycles;

  // Proper periods in ascending order, for comparisons.
  std::vector<std::int64_t> sorted_periods() const;

  // Order-insensitive on proper periods and on the list of period cycles.
  friend bool operator==(NecSignature const &lhs, NecSignature const &rhs);

  static NecSignature surface(std::int64_t genus)
  { return {genus, true, {}, {}}; }
};

// Every violated invariant, in a fixed order; empty means valid.
std::vector<std::string> validate(NecSignature const &sig);

bool is_valid(NecSignature const &sig);

// mu(Gamma) / 2pi. Throws InvalidSignature.
Rational normalized_area(NecSignature const &sig);

// Genus of the kernel of a surface-kernel epimorphism onto a group of the
// given order, i.e. 1 + order * area / 2. nullopt when that is not an
// integer >= 2. Throws DegenerateSignature when area <= 0.
std::optional<std::int64_t> genus_of_surface_kernel(NecSignature const &sig,
                                                    std::int64_t group_order);

// (h; -; [m_1..m_r]) -> (h-1; +; [m_1, m_1, ..., m_r, m_r]).
NecSignature canonical_fuchsian(NecSignature const &sig);

enum class Family { i, ii };

std::string to_string(Family family);
Family parse_family(std::string_view text);

// One of the two signature shapes admitted by a pseudo-real cyclic p-gonal
// action of a group of order n*p:
//   family i:  (1; -; [p x l, n/2])    with l = 2(g+p-1) / (n(p-1))
//   family ii: (1; -; [p x l, n*p/2])  with l = 2g / (n(p-1))
struct FamilySignature
{
  NecSignature signature;
  Family family;
  std::int64_t l;

  // l == 1 signatures are never realized by full automorphism groups of the
  // surfaces in question; callers decide what to do with them.
  bool l_equals_one() const { return l == 1; }
};

Rational family_l(std::int64_t p, std::int64_t n, std::int64_t g, Family family);

// nullopt when l is not a positive integer (or the trailing period would be
// < 2). Throws InvalidParameters unless p is an odd prime and n is even.
std::optional<FamilySignature> family_signature(std::int64_t p, std::int64_t n,
                                                std::int64_t g, Family family);

// Text form "(h;+;[m1,m2];{(n11,n12),()})"; the cycle part is omitted when
// there are no period cycles.
std::string to_string(NecSignature const &sig);
NecSignature parse_signature(std::string_view text);

} // namespace pgonal
