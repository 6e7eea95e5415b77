#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "pgonal/arith.hpp"
#include "pgonal/rational.hpp"

namespace oracle
{

using pgonal::make_rational;
using pgonal::Rational;

namespace
{

std::int64_t inverse_mod(std::int64_t a, std::int64_t p)
{
  for (std::int64_t s = 1; s < p; ++s) {
    if (a * s % p == 1)
      return s;
  }
  throw std::logic_error("no inverse");
}

struct Token
{
  bool is_x;
  std::int64_t count;  // x exponent; y tokens are single letters
};

} // namespace

Word rewrite_metacyclic(std::int64_t n, std::int64_t p, std::int64_t r,
                        std::vector<Letter> word)
{
  std::int64_t const s = inverse_mod(r, p);

  std::vector<Token> tokens;
  for (Letter l : word) {
    switch (l) {
    case Letter::x: tokens.push_back({true, 1}); break;
    case Letter::X: tokens.push_back({true, p - 1}); break;
    case Letter::y: tokens.push_back({false, 1}); break;
    case Letter::Y:
      for (std::int64_t i = 0; i < n - 1; ++i)
        tokens.push_back({false, 1});
      break;
    }
  }

  auto normalize = [&] {
    std::vector<Token> out;
    for (Token t : tokens) {
      if (t.is_x) {
        t.count %= p;
        if (t.count == 0)
          continue;
        if (!out.empty() && out.back().is_x) {
          out.back().count = (out.back().count + t.count) % p;
          if (out.back().count == 0)
            out.pop_back();
          continue;
        }
      }
      out.push_back(t);
    }
    tokens = std::move(out);
  };

  normalize();
  for (;;) {
    // y x^a -> x^(a s) y
    auto it = std::adjacent_find(tokens.begin(), tokens.end(), [](Token const &a, Token const &b) {
      return !a.is_x && b.is_x;
    });
    if (it == tokens.end())
      break;
    Token const y = *it;
    Token x = *(it + 1);
    x.count = x.count * s % p;
    *it = x;
    *(it + 1) = y;
    normalize();
  }

  std::int64_t a = 0;
  std::int64_t b = 0;
  for (Token const &t : tokens) {
    if (t.is_x)
      a = t.count;
    else
      ++b;
  }
  return {a, b % n};
}

std::vector<Letter> spell(Word const &normal_form)
{
  std::vector<Letter> out(static_cast<std::size_t>(normal_form.at(0)), Letter::x);
  out.insert(out.end(), static_cast<std::size_t>(normal_form.at(1)), Letter::y);
  return out;
}

std::vector<GroupElement> all_elements(GroupSpec const &spec)
{
  std::vector<std::int64_t> const moduli = spec.moduli();
  std::vector<GroupElement> out;
  Word w(moduli.size(), 0);
  for (;;) {
    if (spec.is_normal_form(w))
      out.push_back({spec, w});
    std::size_t i = moduli.size();
    while (i > 0) {
      --i;
      if (++w[i] < moduli[i])
        break;
      w[i] = 0;
      if (i == 0)
        return out;
    }
    if (moduli.empty())
      return out;
  }
}

namespace
{

std::vector<GroupElement> closure(GroupSpec const &spec, std::vector<GroupElement> const &gens)
{
  std::set<Word> seen{spec.identity_word()};
  std::deque<Word> queue{spec.identity_word()};
  while (!queue.empty()) {
    Word const w = queue.front();
    queue.pop_front();
    for (GroupElement const &g : gens) {
      Word next = spec.multiply(w, g.word);
      if (seen.insert(next).second)
        queue.push_back(std::move(next));
    }
  }
  std::vector<GroupElement> out;
  for (Word const &w : seen)
    out.push_back({spec, w});
  return out;
}

bool contains(std::vector<GroupElement> const &set, GroupElement const &g)
{
  return std::find(set.begin(), set.end(), g) != set.end();
}

// Whether d -> d^-1, a -> a^-1 extends to an automorphism of G = <d, a>.
bool inverting_automorphism_exists(GroupSpec const &spec, GroupElement const &d,
                                   GroupElement const &a)
{
  std::vector<std::pair<Word, Word>> const gens{
      {d.word, pgonal::inverse(d).word},
      {a.word, pgonal::inverse(a).word},
  };
  std::map<Word, Word> phi{{spec.identity_word(), spec.identity_word()}};
  std::deque<Word> queue{spec.identity_word()};
  while (!queue.empty()) {
    Word const w = queue.front();
    queue.pop_front();
    Word const image = phi.at(w);
    for (auto const &[g, g_image] : gens) {
      Word next = spec.multiply(w, g);
      Word next_image = spec.multiply(image, g_image);
      auto [it, inserted] = phi.emplace(next, next_image);
      if (!inserted) {
        if (it->second != next_image)
          return false;
      } else {
        queue.push_back(std::move(next));
      }
    }
  }
  return true;
}

} // namespace

Verdict judge(NecSignature const &sig, GroupElement const &d, std::vector<GroupElement> const &x)
{
  GroupSpec const &spec = d.spec;
  Verdict v;

  GroupElement product = pgonal::identity(spec);
  for (GroupElement const &xi : x)
    product = pgonal::mul(product, xi);
  product = pgonal::mul(product, pgonal::mul(d, d));
  if (product != pgonal::identity(spec))
    return v;

  for (std::size_t i = 0; i < x.size(); ++i) {
    if (pgonal::order(x[i]) != sig.proper_periods[i])
      return v;
  }

  std::vector<GroupElement> gens = x;
  gens.push_back(d);
  if (static_cast<std::int64_t>(closure(spec, gens).size()) != spec.order())
    return v;

  std::vector<GroupElement> plus_gens = x;
  for (GroupElement const &xi : x)
    plus_gens.push_back(pgonal::mul(pgonal::mul(d, xi), pgonal::inverse(d)));
  plus_gens.push_back(pgonal::mul(d, d));
  std::vector<GroupElement> const plus = closure(spec, plus_gens);
  if (2 * static_cast<std::int64_t>(plus.size()) != spec.order() || contains(plus, d))
    return v;

  v.valid = true;
  v.pseudo_real = true;
  for (GroupElement const &g : all_elements(spec)) {
    if (!contains(plus, g) && pgonal::mul(g, g) == pgonal::identity(spec)) {
      v.pseudo_real = false;
      return v;
    }
  }
  if (x.size() == 2 && inverting_automorphism_exists(spec, d, x[0]))
    v.pseudo_real = false;
  return v;
}

std::vector<pgonal::SurfaceKernelMap> brute_force_maps(NecSignature const &sig,
                                                       GroupSpec const &spec,
                                                       bool want_pseudo_real)
{
  std::vector<GroupElement> const elems = all_elements(spec);
  std::size_t const r = sig.proper_periods.size();
  std::vector<pgonal::SurfaceKernelMap> out;

  std::vector<std::size_t> idx(r + 1, 0);
  for (;;) {
    GroupElement const &d = elems[idx[r]];
    std::vector<GroupElement> x;
    for (std::size_t i = 0; i < r; ++i)
      x.push_back(elems[idx[i]]);

    Verdict const v = judge(sig, d, x);
    if (v.valid && (!want_pseudo_real || v.pseudo_real))
      out.push_back({sig, spec, d, x});

    std::size_t i = 0;
    while (i <= r && ++idx[i] == elems.size()) {
      idx[i] = 0;
      ++i;
    }
    if (i > r)
      break;
  }
  return out;
}

NecSignature coset_quotient_signature(pgonal::SurfaceKernelMap const &map,
                                      std::vector<GroupElement> const &normal_sub)
{
  GroupSpec const &spec = map.group;

  auto coset_key = [&](GroupElement const &g) {
    Word best;
    bool first = true;
    for (GroupElement const &n : normal_sub) {
      Word w = pgonal::mul(g, n).word;
      if (first || w < best)
        best = std::move(w);
      first = false;
    }
    return best;
  };

  std::set<Word> cosets;
  for (GroupElement const &g : all_elements(spec))
    cosets.insert(coset_key(g));

  std::vector<std::int64_t> periods;
  for (std::size_t i = 0; i < map.x.size(); ++i) {
    std::int64_t const m = map.signature.proper_periods[i];
    std::set<Word> visited;
    for (Word const &start : cosets) {
      if (visited.count(start))
        continue;
      std::int64_t length = 0;
      Word cur = start;
      do {
        visited.insert(cur);
        cur = coset_key(pgonal::mul(map.x[i], GroupElement{spec, cur}));
        ++length;
      } while (cur != start);
      if (m / length > 1)
        periods.push_back(m / length);
    }
  }

  Rational const index = make_rational(static_cast<std::int64_t>(cosets.size()));
  Rational area = index * pgonal::normalized_area(map.signature);
  for (std::int64_t m : periods)
    area -= make_rational(m - 1, m);
  // area = 2h - 2
  Rational const h = (area + 2) / 2;
  auto const genus = pgonal::as_int64(h);
  if (!genus)
    throw std::logic_error("non-integral quotient genus");

  return {*genus, true, periods, {}};
}

} // namespace oracle
