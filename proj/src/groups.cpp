#include "pgonal/groups.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

#include "pgonal/arith.hpp"
#include "pgonal/errors.hpp"

namespace pgonal
{

GroupSpec GroupSpec::cyclic(std::int64_t order)
{
  if (order < 1)
    throw InvalidParameters("cyclic group order must be >= 1");
  return GroupSpec(Cyclic{order});
}

GroupSpec GroupSpec::metacyclic(std::int64_t n, std::int64_t p, std::int64_t r)
{
  if (n < 1)
    throw InvalidParameters("metacyclic n must be >= 1");
  if (!is_odd_prime(p))
    throw InvalidParameters("metacyclic p = " + std::to_string(p) + " is not an odd prime");
  if (r <= 0 || r >= p)
    throw InvalidParameters("metacyclic r must satisfy 0 < r < p");
  if (pow_mod(r, n, p) != 1)
    throw InconsistentPresentation("r^n != 1 (mod p) for n=" + std::to_string(n) +
                                   ", p=" + std::to_string(p) + ", r=" + std::to_string(r));
  return GroupSpec(Metacyclic{n, p, r});
}

GroupSpec GroupSpec::inverting_extension(GroupSpec const &inner)
{
  if (inner.is<Metacyclic>()) {
    auto const &m = inner.as<Metacyclic>();
    if (m.r * m.r % m.p != 1)
      throw InconsistentPresentation(
        "x -> x^-1, y -> y^-1 is not an automorphism of " + to_string(inner) +
        " since r^2 != 1 (mod p)");
  } else if (!inner.is<Cyclic>()) {
    throw InvalidParameters("inverting extension needs a cyclic or metacyclic inner group");
  }
  return GroupSpec(InvertingExtension{std::make_shared<GroupSpec const>(inner)});
}

GroupSpec GroupSpec::dihedral(std::int64_t n)
{
  if (n < 1)
    throw InvalidParameters("dihedral N must be >= 1");
  return GroupSpec(Dihedral{n});
}

std::int64_t GroupSpec::order() const
{
  return std::visit([](auto const &g) -> std::int64_t {
    using T = std::decay_t<decltype(g)>;
    if constexpr (std::is_same_v<T, Cyclic>)
      return g.order;
    else if constexpr (std::is_same_v<T, Metacyclic>)
      return g.n * g.p;
    else if constexpr (std::is_same_v<T, InvertingExtension>)
      return 2 * g.inner->order();
    else
      return 2 * g.n;
  }, _variant);
}

std::vector<std::int64_t> GroupSpec::moduli() const
{
  return std::visit([](auto const &g) -> std::vector<std::int64_t> {
    using T = std::decay_t<decltype(g)>;
    if constexpr (std::is_same_v<T, Cyclic>) {
      return {g.order};
    } else if constexpr (std::is_same_v<T, Metacyclic>) {
      return {g.p, g.n};
    } else if constexpr (std::is_same_v<T, InvertingExtension>) {
      std::vector<std::int64_t> m{2};
      auto const inner = g.inner->moduli();
      m.insert(m.end(), inner.begin(), inner.end());
      return m;
    } else {
      return {2, g.n};
    }
  }, _variant);
}

Word GroupSpec::identity_word() const
{ return Word(moduli().size(), 0); }

bool GroupSpec::is_normal_form(Word const &w) const
{
  auto const m = moduli();
  if (w.size() != m.size())
    return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= m[i])
      return false;
  }
  return true;
}

namespace
{

// x^a y^b x^c y^d = x^(a + c r^-b) y^(b + d), from y^-b x y^b = x^(r^b).
Word metacyclic_multiply(Metacyclic const &m, std::int64_t a, std::int64_t b,
                         std::int64_t c, std::int64_t d)
{
  std::int64_t const r_inv = pow_mod(m.r, m.n - 1, m.p);
  return {mod(a + c * pow_mod(r_inv, b, m.p), m.p), mod(b + d, m.n)};
}

// The automorphism inverting the natural generators of a cyclic or
// metacyclic group: t^e -> t^-e, x^a y^b -> x^-a y^-b.
Word invert_generators(GroupSpec const &inner, Word const &w)
{
  if (inner.is<Cyclic>())
    return {mod(-w[0], inner.as<Cyclic>().order)};

  auto const &m = inner.as<Metacyclic>();
  return {mod(-w[0], m.p), mod(-w[1], m.n)};
}

} // anonymous namespace

Word GroupSpec::multiply(Word const &lhs, Word const &rhs) const
{
  return std::visit([&](auto const &g) -> Word {
    using T = std::decay_t<decltype(g)>;
    if constexpr (std::is_same_v<T, Cyclic>) {
      return {mod(lhs[0] + rhs[0], g.order)};
    } else if constexpr (std::is_same_v<T, Metacyclic>) {
      return metacyclic_multiply(g, lhs[0], lhs[1], rhs[0], rhs[1]);
    } else if constexpr (std::is_same_v<T, InvertingExtension>) {
      // s^c w s^e v = s^(c+e) phi^e(w) v
      Word const w(lhs.begin() + 1, lhs.end());
      Word const v(rhs.begin() + 1, rhs.end());
      Word const moved = rhs[0] ? invert_generators(*g.inner, w) : w;

      Word result{mod(lhs[0] + rhs[0], 2)};
      auto const product = g.inner->multiply(moved, v);
      result.insert(result.end(), product.begin(), product.end());
      return result;
    } else {
      // s^c t^e s^d t^f = s^(c+d) t^((-1)^d e + f)
      std::int64_t const e = rhs[0] ? -lhs[1] : lhs[1];
      return {mod(lhs[0] + rhs[0], 2), mod(e + rhs[1], g.n)};
    }
  }, _variant);
}

std::vector<Word> GroupSpec::generators() const
{
  return std::visit([&](auto const &g) -> std::vector<Word> {
    using T = std::decay_t<decltype(g)>;
    if constexpr (std::is_same_v<T, Cyclic>) {
      return {{g.order > 1 ? 1 : 0}};
    } else if constexpr (std::is_same_v<T, Metacyclic>) {
      return {{1, 0}, {0, g.n > 1 ? 1 : 0}};
    } else if constexpr (std::is_same_v<T, InvertingExtension>) {
      std::vector<Word> gens;
      Word s{1};
      for (std::size_t i = 1; i < moduli().size(); ++i)
        s.push_back(0);
      gens.push_back(s);
      for (auto const &inner : g.inner->generators()) {
        Word w{0};
        w.insert(w.end(), inner.begin(), inner.end());
        gens.push_back(w);
      }
      return gens;
    } else {
      return {{1, 0}, {0, g.n > 1 ? 1 : 0}};
    }
  }, _variant);
}

bool operator==(GroupSpec const &lhs, GroupSpec const &rhs)
{
  if (lhs._variant.index() != rhs._variant.index())
    return false;

  return std::visit([&](auto const &g) -> bool {
    using T = std::decay_t<decltype(g)>;
    auto const &h = std::get<T>(rhs._variant);
    if constexpr (std::is_same_v<T, Cyclic>)
      return g.order == h.order;
    else if constexpr (std::is_same_v<T, Metacyclic>)
      return g.n == h.n && g.p == h.p && g.r == h.r;
    else if constexpr (std::is_same_v<T, InvertingExtension>)
      return *g.inner == *h.inner;
    else
      return g.n == h.n;
  }, lhs._variant);
}

std::string to_string(GroupSpec const &spec)
{
  return std::visit([](auto const &g) -> std::string {
    using T = std::decay_t<decltype(g)>;
    if constexpr (std::is_same_v<T, Cyclic>)
      return "C" + std::to_string(g.order);
    else if constexpr (std::is_same_v<T, Metacyclic>)
      return "M(n=" + std::to_string(g.n) + ",p=" + std::to_string(g.p) +
             ",r=" + std::to_string(g.r) + ")";
    else if constexpr (std::is_same_v<T, InvertingExtension>)
      return "Ext2(" + to_string(*g.inner) + ")";
    else
      return "D" + std::to_string(g.n);
  }, spec.variant());
}

namespace
{

class GroupParser
{
public:
  explicit GroupParser(std::string_view text)
  : _text(text)
  {}

  GroupSpec parse()
  {
    GroupSpec spec = group();
    skip_space();
    if (_pos != _text.size())
      fail("trailing characters");
    return spec;
  }

private:
  [[noreturn]] void fail(std::string const &what) const
  {
    throw ParseError("cannot parse group '" + std::string(_text) + "' at offset " +
                     std::to_string(_pos) + ": " + what);
  }

  void skip_space()
  {
    while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
      ++_pos;
  }

  bool accept(std::string_view token)
  {
    skip_space();
    if (_text.substr(_pos, token.size()) == token) {
      _pos += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token)
  {
    if (!accept(token))
      fail("expected '" + std::string(token) + "'");
  }

  std::int64_t integer()
  {
    skip_space();
    std::size_t const start = _pos;
    while (_pos < _text.size() && std::isdigit(static_cast<unsigned char>(_text[_pos])))
      ++_pos;
    if (_pos == start)
      fail("expected integer");
    if (_pos - start > 18)
      fail("integer out of range");
    return std::stoll(std::string(_text.substr(start, _pos - start)));
  }

  // "n=4" or "4"
  std::int64_t parameter(std::string_view name)
  {
    skip_space();
    if (accept(name))
      expect("=");
    return integer();
  }

  GroupSpec group()
  {
    if (accept("Ext2")) {
      expect("(");
      GroupSpec inner = group();
      expect(")");
      return GroupSpec::inverting_extension(inner);
    }
    if (accept("C"))
      return GroupSpec::cyclic(integer());
    if (accept("D"))
      return GroupSpec::dihedral(integer());
    if (accept("M")) {
      expect("(");
      std::int64_t const n = parameter("n");
      expect(",");
      std::int64_t const p = parameter("p");
      expect(",");
      std::int64_t const r = parameter("r");
      expect(")");
      return GroupSpec::metacyclic(n, p, r);
    }
    fail("expected C, D, M or Ext2");
  }

  std::string_view _text;
  std::size_t _pos = 0;
};

} // anonymous namespace

GroupSpec parse_group(std::string_view text)
{ return GroupParser(text).parse(); }

GroupElement make_element(GroupSpec const &spec, Word word)
{
  if (!spec.is_normal_form(word))
    throw InvalidParameters("word is not in normal form for " + to_string(spec));
  return {spec, std::move(word)};
}

GroupElement identity(GroupSpec const &spec)
{ return {spec, spec.identity_word()}; }

GroupElement mul(GroupElement const &lhs, GroupElement const &rhs)
{
  if (!(lhs.spec == rhs.spec))
    throw SpecMismatch("cannot multiply elements of " + to_string(lhs.spec) + " and " +
                       to_string(rhs.spec));
  return {lhs.spec, lhs.spec.multiply(lhs.word, rhs.word)};
}

GroupElement power(GroupElement const &a, std::int64_t k)
{
  GroupElement base = k < 0 ? inverse(a) : a;
  GroupElement result = identity(a.spec);
  for (std::int64_t e = k < 0 ? -k : k; e > 0; e >>= 1) {
    if (e & 1)
      result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

std::int64_t order(GroupElement const &a)
{
  Word const one = a.spec.identity_word();
  Word current = a.word;
  std::int64_t k = 1;
  while (current != one) {
    current = a.spec.multiply(current, a.word);
    ++k;
  }
  return k;
}

GroupElement inverse(GroupElement const &a)
{ return power(a, order(a) - 1); }

std::string to_string(GroupElement const &a)
{
  std::string out = "[";
  for (std::size_t i = 0; i < a.word.size(); ++i)
    out += (i ? "," : "") + std::to_string(a.word[i]);
  return out + "]";
}

std::vector<GroupElement> subgroup(GroupSpec const &spec, std::span<GroupElement const> gens)
{
  FiniteGroup const group(spec);

  std::vector<ElementId> ids;
  for (auto const &g : gens)
    ids.push_back(group.id_of(g));

  Subset closure = group.closure(ids);
  closure.sort();

  std::vector<GroupElement> result;
  for (ElementId id : closure.elements())
    result.push_back(group.element(id));
  return result;
}

std::vector<GroupElement> involutions_outside(GroupSpec const &spec,
                                              std::span<GroupElement const> sub)
{
  FiniteGroup const group(spec);

  Subset members(group.order());
  for (auto const &g : sub)
    members.insert(group.id_of(g));

  if (!group.is_subgroup(members))
    throw InvalidParameters("element set is not closed under multiplication");
  if (members.size() != group.order() && 2 * members.size() != group.order())
    throw InvalidParameters("subgroup must have index 1 or 2");

  std::vector<GroupElement> result;
  for (ElementId g = 0; g < group.order(); ++g) {
    if (group.element_order(g) == 2 && !members.contains(g))
      result.push_back(group.element(g));
  }
  return result;
}

namespace
{

std::map<std::uint32_t, std::size_t> order_statistics(FiniteGroup const &g)
{
  std::map<std::uint32_t, std::size_t> stats;
  for (ElementId a = 0; a < g.order(); ++a)
    ++stats[g.element_order(a)];
  return stats;
}

// Backtracking over generator images, checking each partial assignment on
// the subgroup generated so far.
bool find_isomorphism(FiniteGroup const &a, FiniteGroup const &b,
                      std::vector<ElementId> const &gens, std::vector<ElementId> &images)
{
  std::size_t const k = images.size();
  if (k == gens.size()) {
    auto const hom = a.extend_homomorphism(gens, images, b);
    return hom && b.is_whole(images);
  }

  for (ElementId candidate : b.elements_of_order(a.element_order(gens[k]))) {
    images.push_back(candidate);

    std::span<ElementId const> prefix(gens.data(), k + 1);
    if (a.extend_homomorphism(prefix, images, b) && find_isomorphism(a, b, gens, images))
      return true;

    images.pop_back();
  }
  return false;
}

} // anonymous namespace

bool is_isomorphic(GroupSpec const &a, GroupSpec const &b)
{
  if (a.order() != b.order())
    return false;
  if (a.order() > max_isomorphism_order)
    throw OutOfScope("isomorphism test is brute force and limited to order " +
                     std::to_string(max_isomorphism_order));
  if (a == b)
    return true;

  FiniteGroup const ga(a);
  FiniteGroup const gb(b);

  if (order_statistics(ga) != order_statistics(gb))
    return false;

  // Largest-order generators first: fewest candidate images.
  std::vector<ElementId> gens = ga.generators();
  std::stable_sort(gens.begin(), gens.end(), [&](ElementId x, ElementId y) {
    return ga.element_order(x) > ga.element_order(y);
  });

  std::vector<ElementId> images;
  return find_isomorphism(ga, gb, gens, images);
}

void Subset::sort()
{ std::sort(_elements.begin(), _elements.end()); }

FiniteGroup::FiniteGroup(GroupSpec spec)
: _spec(std::move(spec)),
  _order(0),
  _identity(0)
{
  std::int64_t const order = _spec.order();
  if (order > max_order)
    throw OutOfScope("group " + to_string(_spec) + " of order " + std::to_string(order) +
                     " exceeds the table limit " + std::to_string(max_order));

  _order = static_cast<std::size_t>(order);
  _moduli = _spec.moduli();

  // lexicographic enumeration of words = mixed-radix counting
  _words.reserve(_order);
  Word w(_moduli.size(), 0);
  for (std::size_t i = 0; i < _order; ++i) {
    _words.push_back(w);
    for (std::size_t j = w.size(); j-- > 0;) {
      if (++w[j] < _moduli[j])
        break;
      w[j] = 0;
    }
  }

  _identity = id_of(_spec.identity_word());

  _table.resize(_order * _order);
  for (std::size_t a = 0; a < _order; ++a) {
    for (std::size_t b = 0; b < _order; ++b)
      _table[a * _order + b] = id_of(_spec.multiply(_words[a], _words[b]));
  }

  _inverse.resize(_order);
  _square_roots.resize(_order);
  for (ElementId a = 0; a < _order; ++a) {
    for (ElementId b = 0; b < _order; ++b) {
      if (mul(a, b) == _identity) {
        _inverse[a] = b;
        break;
      }
    }
    _square_roots[mul(a, a)].push_back(a);
  }

  _element_order.resize(_order);
  for (ElementId a = 0; a < _order; ++a) {
    std::uint32_t k = 1;
    for (ElementId c = a; c != _identity; c = mul(c, a))
      ++k;
    _element_order[a] = k;
  }

  for (auto const &g : _spec.generators())
    _generators.push_back(id_of(g));
}

ElementId FiniteGroup::id_of(Word const &w) const
{
  if (!_spec.is_normal_form(w))
    throw InvalidParameters("word is not in normal form for " + to_string(_spec));

  std::size_t id = 0;
  for (std::size_t j = 0; j < w.size(); ++j)
    id = id * static_cast<std::size_t>(_moduli[j]) + static_cast<std::size_t>(w[j]);
  return static_cast<ElementId>(id);
}

ElementId FiniteGroup::id_of(GroupElement const &a) const
{
  if (!(a.spec == _spec))
    throw SpecMismatch("element of " + to_string(a.spec) + " used in " + to_string(_spec));
  return id_of(a.word);
}

ElementId FiniteGroup::power(ElementId a, std::int64_t k) const
{
  std::int64_t const m = _element_order[a];
  std::int64_t e = mod(k, m);
  ElementId result = _identity;
  while (e-- > 0)
    result = mul(result, a);
  return result;
}

std::vector<ElementId> FiniteGroup::elements_of_order(std::uint32_t k) const
{
  std::vector<ElementId> result;
  for (ElementId a = 0; a < _order; ++a) {
    if (_element_order[a] == k)
      result.push_back(a);
  }
  return result;
}

Subset FiniteGroup::closure(std::span<ElementId const> gens) const
{
  Subset s(_order);
  s.insert(_identity);

  // In a finite group closure under multiplication by generators is enough.
  std::vector<ElementId> frontier{_identity};
  while (!frontier.empty()) {
    std::vector<ElementId> next;
    for (ElementId a : frontier) {
      for (ElementId g : gens) {
        ElementId const b = mul(a, g);
        if (s.insert(b))
          next.push_back(b);
      }
    }
    frontier = std::move(next);
  }
  return s;
}

bool FiniteGroup::is_subgroup(Subset const &s) const
{
  if (!s.contains(_identity))
    return false;
  for (ElementId a : s.elements()) {
    for (ElementId b : s.elements()) {
      if (!s.contains(mul(a, b)))
        return false;
    }
  }
  return true;
}

bool FiniteGroup::is_normal(Subset const &s) const
{
  for (ElementId g : _generators) {
    for (ElementId a : s.elements()) {
      if (!s.contains(conjugate(a, g)))
        return false;
    }
  }
  return true;
}

std::optional<std::vector<ElementId>>
FiniteGroup::extend_homomorphism(std::span<ElementId const> gens,
                                 std::span<ElementId const> images,
                                 FiniteGroup const &target) const
{
  auto const unset = static_cast<ElementId>(target.order());
  std::vector<ElementId> phi(_order, unset);
  phi[_identity] = target.identity();

  // Define phi along a BFS tree of the Cayley graph of <gens> and check it
  // on every remaining edge.
  std::deque<ElementId> queue{_identity};
  while (!queue.empty()) {
    ElementId const a = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      ElementId const b = mul(a, gens[i]);
      ElementId const image = target.mul(phi[a], images[i]);
      if (phi[b] == unset) {
        phi[b] = image;
        queue.push_back(b);
      } else if (phi[b] != image) {
        return std::nullopt;
      }
    }
  }
  return phi;
}

std::vector<Subset> FiniteGroup::index_two_subgroups() const
{
  FiniteGroup const c2(GroupSpec::cyclic(2));
  ElementId const flip = c2.id_of(Word{1});

  std::vector<Subset> result;
  for (std::size_t mask = 1; mask < (std::size_t{1} << _generators.size()); ++mask) {
    std::vector<ElementId> images;
    for (std::size_t i = 0; i < _generators.size(); ++i)
      images.push_back(mask >> i & 1 ? flip : c2.identity());

    auto const phi = extend_homomorphism(_generators, images, c2);
    if (!phi)
      continue;

    Subset kernel(_order);
    for (ElementId g = 0; g < _order; ++g) {
      if ((*phi)[g] == c2.identity())
        kernel.insert(g);
    }
    result.push_back(std::move(kernel));
  }
  return result;
}

} // namespace pgonal
