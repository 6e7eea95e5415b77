#pragma once

// Reference implementations used only by the tests. They work on
// GroupElement values and plain loops, never on FiniteGroup tables.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pgonal/actions.hpp"
#include "pgonal/groups.hpp"
#include "pgonal/nec.hpp"

namespace oracle
{

using pgonal::GroupElement;
using pgonal::GroupSpec;
using pgonal::NecSignature;
using pgonal::Word;

// Letters of a word in x, y and their inverses.
enum class Letter { x, X, y, Y };

// String rewriting in C_n x|_r C_p: moves every x to the left with
// y x -> x^(r^-1) y and Y x -> x^r Y, then reduces exponents. Returns (a, b)
// for x^a y^b.
Word rewrite_metacyclic(std::int64_t n, std::int64_t p, std::int64_t r,
                        std::vector<Letter> word);

// Letters spelling x^a y^b.
std::vector<Letter> spell(Word const &normal_form);

std::vector<GroupElement> all_elements(GroupSpec const &spec);

struct Verdict
{
  bool valid = false;
  bool pseudo_real = false;
};

// Direct reading of the definitions on one map.
Verdict judge(NecSignature const &sig, GroupElement const &d, std::vector<GroupElement> const &x);

// Every (d, x_1..x_r) in G^(r+1), no pruning.
std::vector<pgonal::SurfaceKernelMap> brute_force_maps(NecSignature const &sig,
                                                       GroupSpec const &spec,
                                                       bool want_pseudo_real);

// Signature of theta^-1(N) from the cycle structure of each x_i acting on
// the cosets G/N by left multiplication.
NecSignature coset_quotient_signature(pgonal::SurfaceKernelMap const &map,
                                      std::vector<GroupElement> const &normal_sub);

} // namespace oracle
