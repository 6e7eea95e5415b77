#pragma once

/**
 * @file groups.hpp
 * @brief Normal-form arithmetic in the finite groups acted on by the
 *        surfaces: C_N, C_n x|_r C_p, inverting C_2-extensions and D_N.
 *
 * Elements are integer words in a fixed normal form:
 *
 *   C_N              t^e           (e mod N)
 *   C_n x|_r C_p     x^a y^b       (a mod p, b mod n),  y^-1 x y = x^r
 *   Ext2(K)          s^c w         (c mod 2, w a word of K),
 *                                  s x s = x^-1, s y s = y^-1 (s t s = t^-1)
 *   D_N              s^c t^e       (c mod 2, e mod N),  s t s = t^-1
 *
 * `FiniteGroup` materializes the Cayley table of a spec; the search and
 * verification code works on element indices of that table, which are
 * assigned in lexicographic order of the words.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pgonal
{

using Word = std::vector<std::int64_t>;

class GroupSpec;

struct Cyclic
{
  std::int64_t order;
};

struct Metacyclic
{
  std::int64_t n;
  std::int64_t p;
  std::int64_t r;
};

struct InvertingExtension
{
  std::shared_ptr<GroupSpec const> inner;
};

struct Dihedral
{
  std::int64_t n;
};

class GroupSpec
{
public:
  using Variant = std::variant<Cyclic, Metacyclic, InvertingExtension, Dihedral>;

  static GroupSpec cyclic(std::int64_t order);
  // Requires p an odd prime, 0 < r < p and r^n = 1 (mod p).
  static GroupSpec metacyclic(std::int64_t n, std::int64_t p, std::int64_t r);
  // Requires the inner group to be cyclic or metacyclic with r^2 = 1
  // (mod p); throws InconsistentPresentation otherwise.
  static GroupSpec inverting_extension(GroupSpec const &inner);
  static GroupSpec dihedral(std::int64_t n);

  Variant const &variant() const { return _variant; }

  template<typename T>
  bool is() const { return std::holds_alternative<T>(_variant); }

  template<typename T>
  T const &as() const { return std::get<T>(_variant); }

  std::int64_t order() const;

  // Modulus of every word coordinate.
  std::vector<std::int64_t> moduli() const;

  Word identity_word() const;
  bool is_normal_form(Word const &w) const;
  Word multiply(Word const &lhs, Word const &rhs) const;

  // Natural generators: t / x, y / s, inner generators / s, t.
  std::vector<Word> generators() const;

  friend bool operator==(GroupSpec const &lhs, GroupSpec const &rhs);

private:
  explicit GroupSpec(Variant v)
  : _variant(std::move(v))
  {}

  Variant _variant;
};

// "C12", "M(n=4,p=3,r=2)", "Ext2(M(n=4,p=3,r=2))", "D12".
std::string to_string(GroupSpec const &spec);
// Also accepts the short metacyclic form "M(4,3,2)".
GroupSpec parse_group(std::string_view text);

struct GroupElement
{
  GroupSpec spec;
  Word word;

  friend bool operator==(GroupElement const &lhs, GroupElement const &rhs) = default;
};

// Validates that the word is in normal form.
GroupElement make_element(GroupSpec const &spec, Word word);
GroupElement identity(GroupSpec const &spec);

// Throws SpecMismatch when the specs differ.
GroupElement mul(GroupElement const &lhs, GroupElement const &rhs);
GroupElement inverse(GroupElement const &a);
GroupElement power(GroupElement const &a, std::int64_t k);
// Least k >= 1 with a^k = 1, by iterated multiplication.
std::int64_t order(GroupElement const &a);

std::string to_string(GroupElement const &a);

// Closure of gens under multiplication, sorted by word.
std::vector<GroupElement> subgroup(GroupSpec const &spec, std::span<GroupElement const> gens);

// All involutions of the group not lying in sub. Throws InvalidParameters if
// sub is not a subgroup of index 1 or 2.
std::vector<GroupElement> involutions_outside(GroupSpec const &spec,
                                              std::span<GroupElement const> sub);

// Brute-force isomorphism test; throws OutOfScope above order 200.
bool is_isomorphic(GroupSpec const &a, GroupSpec const &b);

inline constexpr std::int64_t max_isomorphism_order = 200;

using ElementId = std::uint32_t;

// Membership bitmap plus sorted element list.
class Subset
{
public:
  Subset() = default;
  explicit Subset(std::size_t universe)
  : _member(universe, false)
  {}

  bool contains(ElementId g) const { return _member[g]; }
  std::size_t size() const { return _elements.size(); }
  std::vector<ElementId> const &elements() const { return _elements; }

  bool insert(ElementId g)
  {
    if (_member[g])
      return false;
    _member[g] = true;
    _elements.push_back(g);
    return true;
  }

  void sort();

  friend bool operator==(Subset const &lhs, Subset const &rhs)
  { return lhs._member == rhs._member; }

private:
  std::vector<bool> _member;
  std::vector<ElementId> _elements;
};

class FiniteGroup
{
public:
  static constexpr std::int64_t max_order = 4096;

  explicit FiniteGroup(GroupSpec spec);

  GroupSpec const &spec() const { return _spec; }
  std::size_t order() const { return _order; }

  ElementId identity() const { return _identity; }
  ElementId mul(ElementId a, ElementId b) const { return _table[a * _order + b]; }
  ElementId inverse(ElementId a) const { return _inverse[a]; }
  ElementId power(ElementId a, std::int64_t k) const;
  std::uint32_t element_order(ElementId a) const { return _element_order[a]; }
  ElementId conjugate(ElementId g, ElementId by) const  // by g by^-1
  { return mul(mul(by, g), inverse(by)); }

  Word const &word(ElementId a) const { return _words[a]; }
  ElementId id_of(Word const &w) const;
  ElementId id_of(GroupElement const &a) const;
  GroupElement element(ElementId a) const { return {_spec, _words[a]}; }

  // Elements of exactly the given order, ascending.
  std::vector<ElementId> elements_of_order(std::uint32_t k) const;
  // All r with r^2 = a, ascending.
  std::vector<ElementId> const &square_roots(ElementId a) const { return _square_roots[a]; }

  Subset closure(std::span<ElementId const> gens) const;
  bool is_whole(std::span<ElementId const> gens) const
  { return closure(gens).size() == _order; }
  bool is_subgroup(Subset const &s) const;
  bool is_normal(Subset const &s) const;

  std::vector<ElementId> const &generators() const { return _generators; }

  // Kernels of the epimorphisms onto C_2.
  std::vector<Subset> index_two_subgroups() const;

  // If gens -> images extends to a homomorphism from <gens> into target,
  // returns it as a table indexed by ElementId (entries outside <gens> are
  // left as target.order()).
  std::optional<std::vector<ElementId>>
  extend_homomorphism(std::span<ElementId const> gens, std::span<ElementId const> images,
                      FiniteGroup const &target) const;

private:
  GroupSpec _spec;
  std::size_t _order;
  std::vector<std::int64_t> _moduli;
  std::vector<Word> _words;
  std::vector<ElementId> _table;
  std::vector<ElementId> _inverse;
  std::vector<std::uint32_t> _element_order;
  std::vector<std::vector<ElementId>> _square_roots;
  std::vector<ElementId> _generators;
  ElementId _identity;
};

} // namespace pgonal
