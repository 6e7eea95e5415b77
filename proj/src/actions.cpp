#include "pgonal/actions.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

#include "pgonal/arith.hpp"
#include "pgonal/errors.hpp"

namespace pgonal
{

namespace
{

void require_action_signature(NecSignature const &sig)
{
  if (!is_valid(sig) || sig.genus != 1 || sig.orientable || !sig.period_cycles.empty())
    throw InvalidSignature("expected a signature (1;-;[m1,...,mr]), got " + to_string(sig));
}

std::vector<ElementId> distinct(std::vector<ElementId> ids)
{
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool all_involutions_inside(FiniteGroup const &group, Subset const &sub)
{
  for (ElementId g = 0; g < group.order(); ++g) {
    if (group.element_order(g) == 2 && !sub.contains(g))
      return false;
  }
  return true;
}

} // anonymous namespace

IndexedMap to_indexed(FiniteGroup const &group, SurfaceKernelMap const &map)
{
  IndexedMap result{group.id_of(map.d), {}};
  for (auto const &x : map.x)
    result.x.push_back(group.id_of(x));
  return result;
}

SurfaceKernelMap to_map(FiniteGroup const &group, NecSignature const &sig,
                        IndexedMap const &map)
{
  SurfaceKernelMap result{sig, group.spec(), group.element(map.d), {}};
  for (ElementId x : map.x)
    result.x.push_back(group.element(x));
  return result;
}

Subset orientation_subgroup(FiniteGroup const &group, IndexedMap const &map)
{
  std::vector<ElementId> gens;
  for (ElementId x : distinct(map.x)) {
    gens.push_back(x);
    gens.push_back(group.conjugate(x, map.d));
  }
  gens.push_back(group.mul(map.d, map.d));
  return group.closure(distinct(std::move(gens)));
}

std::vector<GroupElement> orientation_subgroup(SurfaceKernelMap const &map)
{
  FiniteGroup const group(map.group);
  Subset plus = orientation_subgroup(group, to_indexed(group, map));
  plus.sort();

  std::vector<GroupElement> result;
  for (ElementId g : plus.elements())
    result.push_back(group.element(g));
  return result;
}

bool extends_to_reflection_overgroup(FiniteGroup const &group, IndexedMap const &map)
{
  if (map.x.empty())
    return false;

  std::vector<ElementId> const gens{map.d, map.x.front()};
  std::vector<ElementId> const images{group.inverse(map.d), group.inverse(map.x.front())};

  // d and x_1 generate G whenever the map is onto, so a well-defined
  // extension is an automorphism.
  auto const phi = group.extend_homomorphism(gens, images, group);
  return phi && std::none_of(phi->begin(), phi->end(),
                             [&](ElementId v) { return v == group.order(); });
}

CheckReport check(FiniteGroup const &group, NecSignature const &sig, IndexedMap const &map)
{
  require_action_signature(sig);
  if (map.x.size() != sig.proper_periods.size())
    throw InvalidParameters("map has " + std::to_string(map.x.size()) + " x-images but " +
                            to_string(sig) + " has " +
                            std::to_string(sig.proper_periods.size()) + " proper periods");

  CheckReport report;

  ElementId product = group.identity();
  for (ElementId x : map.x)
    product = group.mul(product, x);
  product = group.mul(product, group.mul(map.d, map.d));
  if (product != group.identity())
    report.failures.emplace_back("long relation x_1...x_r d^2 = 1 fails");

  for (std::size_t i = 0; i < map.x.size(); ++i) {
    auto const m = sig.proper_periods[i];
    if (group.element_order(map.x[i]) != m)
      report.failures.push_back("x_" + std::to_string(i + 1) + " has order " +
                                std::to_string(group.element_order(map.x[i])) + ", expected " +
                                std::to_string(m));
  }

  auto all = map.x;
  all.push_back(map.d);
  if (!group.is_whole(distinct(all)))
    report.failures.emplace_back("images do not generate the group");

  Subset const plus = orientation_subgroup(group, map);
  report.orientation_index = static_cast<std::int64_t>(group.order() / plus.size());
  if (report.orientation_index != 2)
    report.failures.push_back("orientation subgroup has index " +
                              std::to_string(report.orientation_index) + ", expected 2");
  else if (plus.contains(map.d))
    report.failures.emplace_back("image of d lies in the orientation subgroup");

  Rational const area = normalized_area(sig);
  if (area <= 0)
    report.failures.emplace_back("degenerate signature");

  report.valid = report.failures.empty();
  if (!report.valid)
    return report;

  report.genus = genus_of_surface_kernel(sig, static_cast<std::int64_t>(group.order()));
  report.involution_free = all_involutions_inside(group, plus);
  if (sig.proper_periods.size() == 2)
    report.extends = extends_to_reflection_overgroup(group, map);
  report.pseudo_real = report.involution_free && !report.extends.value_or(false);

  return report;
}

CheckReport check(SurfaceKernelMap const &map)
{
  FiniteGroup const group(map.group);
  return check(group, map.signature, to_indexed(group, map));
}

namespace
{

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Every valid map has G+ equal to one of the index-2 subgroups K, with all
// x_i in K and d outside, so the search runs once per admissible K. For
// pseudo-real maps K must also contain every involution.
struct Branch
{
  Subset plus;
  std::vector<std::vector<ElementId>> candidates;
};

std::vector<Branch> search_branches(FiniteGroup const &group, NecSignature const &sig,
                                    MapFilter filter)
{
  std::vector<Branch> branches;
  for (Subset &k : group.index_two_subgroups()) {
    if (filter == MapFilter::pseudo_real && !all_involutions_inside(group, k))
      continue;

    Branch b{std::move(k), {}};
    for (std::int64_t m : sig.proper_periods) {
      std::vector<ElementId> in_k;
      if (m <= static_cast<std::int64_t>(group.order())) {
        for (ElementId g : group.elements_of_order(static_cast<std::uint32_t>(m))) {
          if (b.plus.contains(g))
            in_k.push_back(g);
        }
      }
      b.candidates.push_back(std::move(in_k));
    }
    branches.push_back(std::move(b));
  }
  return branches;
}

class MapSearch
{
public:
  using Visitor = std::function<bool(IndexedMap const &)>;

  MapSearch(FiniteGroup const &group, NecSignature const &sig, MapFilter filter)
  : _group(group),
    _filter(filter),
    _branches(search_branches(group, sig, filter))
  {}

  // Visits the part of the space whose first image has a candidate index
  // congruent to `slice` modulo `slices`; false when the visitor stopped it.
  bool run(unsigned slice, unsigned slices, Visitor const &visit) const
  {
    std::vector<ElementId> xs;
    for (auto const &branch : _branches) {
      Context const ctx{branch, visit};
      if (branch.candidates.empty()) {
        if (slice == 0 && !leaf(ctx, _group.identity(), xs))
          return false;
        continue;
      }

      auto const &first = branch.candidates.front();
      for (std::size_t i = slice; i < first.size(); i += slices) {
        xs.push_back(first[i]);
        bool const go_on = descend(ctx, 1, first[i], xs);
        xs.pop_back();
        if (!go_on)
          return false;
      }
    }
    return true;
  }

private:
  struct Context
  {
    Branch const &branch;
    Visitor const &visit;
  };

  bool descend(Context const &ctx, std::size_t pos, ElementId prefix,
               std::vector<ElementId> &xs) const
  {
    if (pos == ctx.branch.candidates.size())
      return leaf(ctx, prefix, xs);

    for (ElementId x : ctx.branch.candidates[pos]) {
      xs.push_back(x);
      bool const go_on = descend(ctx, pos + 1, _group.mul(prefix, x), xs);
      xs.pop_back();
      if (!go_on)
        return false;
    }
    return true;
  }

  // The long relation forces d^2 = (x_1...x_r)^-1.
  bool leaf(Context const &ctx, ElementId product, std::vector<ElementId> const &xs) const
  {
    auto const x_gens = distinct(xs);

    for (ElementId d : _group.square_roots(_group.inverse(product))) {
      if (ctx.branch.plus.contains(d))
        continue;

      auto gens = x_gens;
      gens.push_back(d);
      if (!_group.is_whole(distinct(gens)))
        continue;

      IndexedMap map{d, xs};
      if (orientation_subgroup(_group, map).size() != ctx.branch.plus.size())
        continue;

      if (_filter == MapFilter::pseudo_real && xs.size() == 2 &&
          extends_to_reflection_overgroup(_group, map))
        continue;

      if (!ctx.visit(map))
        return false;
    }
    return true;
  }

  FiniteGroup const &_group;
  MapFilter _filter;
  std::vector<Branch> _branches;
};

void require_searchable(NecSignature const &sig)
{
  require_action_signature(sig);
  if (normalized_area(sig) <= 0)
    throw DegenerateSignature("signature " + to_string(sig) + " has non-positive area");
}

} // anonymous namespace

std::uint64_t search_space_size(FiniteGroup const &group, NecSignature const &sig,
                                MapFilter filter)
{
  std::uint64_t total = 0;
  for (auto const &branch : search_branches(group, sig, filter)) {
    std::uint64_t size = group.order();
    for (auto const &c : branch.candidates)
      size = saturating_mul(size, c.size());
    total = total > std::numeric_limits<std::uint64_t>::max() - size
              ? std::numeric_limits<std::uint64_t>::max()
              : total + size;
  }
  return total;
}

bool visit_maps(FiniteGroup const &group, NecSignature const &sig, MapFilter filter,
                SearchOptions const &options,
                std::function<bool(IndexedMap const &)> const &visit)
{
  require_searchable(sig);

  std::uint64_t const required = search_space_size(group, sig, filter);
  if (required > options.budget)
    throw BudgetExceeded(required, options.budget);

  return MapSearch(group, sig, filter).run(0, 1, visit);
}

std::vector<IndexedMap> enumerate_indexed(FiniteGroup const &group, NecSignature const &sig,
                                          MapFilter filter, SearchOptions const &options)
{
  require_searchable(sig);

  std::uint64_t const required = search_space_size(group, sig, filter);
  if (required > options.budget)
    throw BudgetExceeded(required, options.budget);

  MapSearch const search(group, sig, filter);

  unsigned const workers = std::max(1u, options.workers);
  std::vector<std::vector<IndexedMap>> parts(workers);
  auto collect = [&](unsigned w) {
    search.run(w, workers, [&parts, w](IndexedMap const &m) {
      parts[w].push_back(m);
      return true;
    });
  };

  if (workers == 1) {
    collect(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back(collect, w);
  }

  std::vector<IndexedMap> found;
  for (auto &part : parts)
    found.insert(found.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

std::vector<SurfaceKernelMap> enumerate(NecSignature const &sig, GroupSpec const &spec,
                                        bool want_pseudo_real, SearchOptions const &options)
{
  FiniteGroup const group(spec);
  auto const indexed = enumerate_indexed(
    group, sig, want_pseudo_real ? MapFilter::pseudo_real : MapFilter::valid, options);

  std::vector<SurfaceKernelMap> maps;
  maps.reserve(indexed.size());
  for (auto const &m : indexed)
    maps.push_back(to_map(group, sig, m));
  return maps;
}

namespace
{

void require_construction_parameters(std::int64_t p, std::int64_t n, std::int64_t r,
                                     std::int64_t l)
{
  if (!is_odd_prime(p))
    throw InvalidParameters("p = " + std::to_string(p) + " is not an odd prime");
  if (n <= 0 || n % 4 != 0)
    throw InvalidParameters("n = " + std::to_string(n) + " is not a positive multiple of 4");
  if (r <= 0 || r >= p || pow_mod(r, n, p) != 1)
    throw InvalidParameters("r = " + std::to_string(r) + " does not satisfy 0 < r < p, "
                            "r^n = 1 (mod p)");
  if (l < 2)
    throw InvalidParameters("l = " + std::to_string(l) + " must be an integer > 1");
}

struct MetacyclicWords
{
  GroupSpec spec;
  std::int64_t p;
  std::int64_t n;

  // x^a y^b
  GroupElement xy(std::int64_t a, std::int64_t b) const
  { return {spec, {mod(a, p), mod(b, n)}}; }
};

SurfaceKernelMap assemble(MetacyclicWords const &w, std::int64_t l, std::int64_t last_period,
                          std::vector<GroupElement> xs)
{
  NecSignature sig{1, false, std::vector<std::int64_t>(static_cast<std::size_t>(l), w.p), {}};
  sig.proper_periods.push_back(last_period);
  return {std::move(sig), w.spec, w.xy(0, -1), std::move(xs)};
}

} // anonymous namespace

SurfaceKernelMap construct_family_i_action(std::int64_t p, std::int64_t n, std::int64_t r,
                                           std::int64_t l)
{
  require_construction_parameters(p, n, r, l);
  MetacyclicWords const w{GroupSpec::metacyclic(n, p, r), p, n};

  // for odd l the pairs stop before x_{l-2} so that x, x, x^-2 closes them
  std::int64_t const pairs = l % 2 == 0 ? l / 2 : (l - 3) / 2;

  std::vector<GroupElement> xs;
  for (std::int64_t i = 0; i < pairs; ++i) {
    xs.push_back(w.xy(1, 0));
    xs.push_back(w.xy(-1, 0));
  }
  if (l % 2 != 0) {
    xs.push_back(w.xy(1, 0));
    xs.push_back(w.xy(1, 0));
    xs.push_back(w.xy(-2, 0));
  }
  xs.push_back(w.xy(0, 2));

  return assemble(w, l, n / 2, std::move(xs));
}

SurfaceKernelMap construct_family_ii_action(std::int64_t p, std::int64_t n, std::int64_t r,
                                            std::int64_t l)
{
  require_construction_parameters(p, n, r, l);
  if (r != 1 && r != p - 1)
    throw InvalidParameters("family ii actions need r = 1 or r = p-1");
  if (std::gcd(p, n / 2) != 1)
    throw InvalidParameters("gcd(p, n/2) != 1: no element of order np/2 in the "
                            "orientation-preserving subgroup");

  MetacyclicWords const w{GroupSpec::metacyclic(n, p, r), p, n};

  std::vector<GroupElement> xs;
  if (l % 2 != 0) {
    for (std::int64_t i = 0; i < (l - 1) / 2; ++i) {
      xs.push_back(w.xy(1, 0));
      xs.push_back(w.xy(-1, 0));
    }
    xs.push_back(w.xy(1, 0));
    xs.push_back(w.xy(-1, 2));
  } else {
    for (std::int64_t i = 0; i < (l - 2) / 2; ++i) {
      xs.push_back(w.xy(1, 0));
      xs.push_back(w.xy(-1, 0));
    }
    xs.push_back(w.xy(1, 0));
    xs.push_back(w.xy(1, 0));
    xs.push_back(w.xy(-2, 2));
  }

  return assemble(w, l, n * p / 2, std::move(xs));
}

NecSignature induced_quotient_signature(FiniteGroup const &group, NecSignature const &sig,
                                        IndexedMap const &map, Subset const &normal_sub)
{
  require_action_signature(sig);

  if (!group.is_subgroup(normal_sub) || !group.is_normal(normal_sub))
    throw InvalidParameters("subgroup is not normal");

  if (normal_sub.size() == group.order())
    return sig;

  Subset const plus = orientation_subgroup(group, map);
  for (ElementId h : normal_sub.elements()) {
    if (!plus.contains(h))
      throw InvalidParameters("normal subgroup is not contained in the orientation subgroup");
  }

  auto const index = static_cast<std::int64_t>(group.order() / normal_sub.size());

  NecSignature result{0, true, {}, {}};
  Rational period_sum = 0;
  for (std::size_t i = 0; i < map.x.size(); ++i) {
    // order of x_i modulo N
    std::int64_t k = 1;
    for (ElementId c = map.x[i]; !normal_sub.contains(c); c = group.mul(c, map.x[i]))
      ++k;

    std::int64_t const period = sig.proper_periods[i] / k;
    if (period < 2)
      continue;
    for (std::int64_t j = 0; j < index / k; ++j) {
      result.proper_periods.push_back(period);
      period_sum += 1 - make_rational(1, period);
    }
  }

  // 2h - 2 + sum(1 - 1/m) = [G:N] * area
  Rational const twice_genus = make_rational(index) * normalized_area(sig) + 2 - period_sum;
  auto const genus = as_int64(twice_genus / 2);
  if (!genus || *genus < 0)
    throw Error("induced signature has non-integral genus " + to_string(twice_genus / 2));

  result.genus = *genus;
  return result;
}

NecSignature induced_quotient_signature(SurfaceKernelMap const &map,
                                        std::vector<GroupElement> const &normal_sub)
{
  FiniteGroup const group(map.group);
  Subset sub(group.order());
  for (auto const &h : normal_sub)
    sub.insert(group.id_of(h));
  return induced_quotient_signature(group, map.signature, to_indexed(group, map), sub);
}

PGonalSearch::PGonalSearch(FiniteGroup const &group, std::int64_t p)
: _group(group),
  _p(p)
{
  if (p < 2 || p > static_cast<std::int64_t>(group.order()))
    return;

  std::vector<Subset> seen;
  for (ElementId h : group.elements_of_order(static_cast<std::uint32_t>(p))) {
    std::vector<ElementId> const gen{h};
    Subset sub = group.closure(gen);
    if (std::find(seen.begin(), seen.end(), sub) != seen.end())
      continue;
    seen.push_back(sub);
    if (group.is_normal(sub))
      _candidates.emplace_back(h, std::move(sub));
  }
}

std::optional<PGonalSearch::Result> PGonalSearch::verify(NecSignature const &sig,
                                                         IndexedMap const &map) const
{
  if (_candidates.empty())
    return std::nullopt;

  Subset const plus = orientation_subgroup(_group, map);
  for (auto const &[h, sub] : _candidates) {
    bool const inside = std::all_of(sub.elements().begin(), sub.elements().end(),
                                    [&](ElementId g) { return plus.contains(g); });
    if (!inside)
      continue;

    NecSignature quotient = induced_quotient_signature(_group, sig, map, sub);
    bool const all_p = std::all_of(quotient.proper_periods.begin(),
                                   quotient.proper_periods.end(),
                                   [&](std::int64_t m) { return m == _p; });
    if (quotient.genus == 0 && all_p) {
      auto const q = static_cast<std::int64_t>(quotient.proper_periods.size());
      return Result{h, std::move(quotient), q};
    }
  }
  return std::nullopt;
}

std::optional<PGonalWitness> verify_p_gonal(SurfaceKernelMap const &map, std::int64_t p)
{
  FiniteGroup const group(map.group);
  PGonalSearch const search(group, p);
  auto const found = search.verify(map.signature, to_indexed(group, map));
  if (!found)
    return std::nullopt;

  return PGonalWitness{map, group.element(found->h_generator), found->quotient_signature,
                       found->q};
}

} // namespace pgonal
