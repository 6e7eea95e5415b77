#include "pgonal/classify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <thread>

#include "pgonal/arith.hpp"
#include "pgonal/errors.hpp"

namespace pgonal
{

namespace
{

char const *const four_divides_n = "4 | n";
char const *const general_r_exists = "some r with 1 < r < p-1 and r^n = 1 (mod p)";
char const *const l1_integer = "l1 integer > 1";
char const *const l2_integer = "l2 integer > 1";
char const *const gcd_condition = "gcd(p, n/2) = 1";

bool integer_above_one(Rational const &q)
{ return is_integer(q) && q > 1; }

ExistenceVerdict verdict_base(std::int64_t p, std::int64_t n, std::int64_t g)
{
  if (!is_odd_prime(p))
    throw InvalidParameters("p = " + std::to_string(p) + " is not an odd prime");
  if (n < 2 || n % 2 != 0)
    throw InvalidParameters("n = " + std::to_string(n) + " must be a positive even integer");
  if (g < 0)
    throw InvalidParameters("genus must be non-negative");

  ExistenceVerdict v;
  v.p = p;
  v.n = n;
  v.g = g;
  v.l1 = family_l(p, n, g, Family::i);
  v.l2 = family_l(p, n, g, Family::ii);
  v.gcd_pn2 = std::gcd(p, n / 2);
  v.hypothesis_warning = hypothesis_warning(p, g);
  v.reasons.push_back({four_divides_n, n % 4 == 0});
  return v;
}

} // anonymous namespace

bool ExistenceVerdict::passed(std::string const &condition) const
{
  return std::any_of(reasons.begin(), reasons.end(), [&](Condition const &c) {
    return c.name == condition && c.passed;
  });
}

std::optional<std::string> hypothesis_warning(std::int64_t p, std::int64_t g)
{
  if (g > (p - 1) * (p - 1))
    return std::nullopt;
  return "g <= (p-1)^2 = " + std::to_string((p - 1) * (p - 1)) +
         ": hypothesis g > (p-1)^2 violated, the p-gonal morphism need not be unique";
}

ExistenceVerdict exists_semidirect_general(std::int64_t p, std::int64_t n, std::int64_t g)
{
  ExistenceVerdict v = verdict_base(p, n, g);

  for (std::int64_t r = 2; r < p - 1; ++r) {
    if (pow_mod(r, n, p) == 1)
      v.qualifying_r.push_back(r);
  }
  v.reasons.push_back({general_r_exists, !v.qualifying_r.empty()});
  v.reasons.push_back({l1_integer, integer_above_one(v.l1)});

  v.exists = std::all_of(v.reasons.begin(), v.reasons.end(),
                         [](Condition const &c) { return c.passed; });
  if (v.exists)
    v.families.push_back(Family::i);
  return v;
}

ExistenceVerdict exists_cyclic(std::int64_t p, std::int64_t n, std::int64_t g)
{
  ExistenceVerdict v = verdict_base(p, n, g);

  bool const gcd_ok = v.gcd_pn2 == 1;
  bool const fam_i = integer_above_one(v.l1);
  bool const fam_ii = integer_above_one(v.l2);
  v.reasons.push_back({gcd_condition, gcd_ok});
  v.reasons.push_back({l1_integer, fam_i});
  v.reasons.push_back({l2_integer, fam_ii});

  v.exists = n % 4 == 0 && gcd_ok && (fam_i || fam_ii);
  if (v.exists) {
    if (fam_i)
      v.families.push_back(Family::i);
    if (fam_ii)
      v.families.push_back(Family::ii);
  }
  return v;
}

ExistenceVerdict exists_semidirect_r1_pm1(std::int64_t p, std::int64_t n, std::int64_t g)
{
  ExistenceVerdict v = verdict_base(p, n, g);

  bool const gcd_ok = v.gcd_pn2 == 1;
  bool const fam_i = integer_above_one(v.l1);
  bool const fam_ii = integer_above_one(v.l2) && gcd_ok;
  v.reasons.push_back({l1_integer, fam_i});
  v.reasons.push_back({l2_integer, integer_above_one(v.l2)});
  v.reasons.push_back({gcd_condition, gcd_ok});

  v.exists = n % 4 == 0 && (fam_i || fam_ii);
  if (v.exists) {
    if (fam_i)
      v.families.push_back(Family::i);
    if (fam_ii)
      v.families.push_back(Family::ii);
    if (std::gcd(n, p) == 1)
      v.notes.emplace_back("r = 1 with gcd(n, p) = 1 gives the cyclic group C_np");
  }
  return v;
}

std::string r_class(GroupSpec const &group)
{
  if (group.is<Cyclic>())
    return "cyclic";
  if (!group.is<Metacyclic>())
    throw InvalidParameters("no r-class for " + to_string(group));

  auto const &m = group.as<Metacyclic>();
  if (m.r == 1)
    return "r=1";
  if (m.r == m.p - 1)
    return "r=p-1";
  return "r=" + std::to_string(m.r);
}

namespace
{

// <r> as a sorted list of residues.
std::vector<std::int64_t> cyclic_subgroup_mod(std::int64_t r, std::int64_t p)
{
  std::vector<std::int64_t> powers{1};
  for (std::int64_t v = mod(r, p); v != 1; v = mod(v * r, p))
    powers.push_back(v);
  std::sort(powers.begin(), powers.end());
  return powers;
}

bool metacyclic_is_cyclic(Metacyclic const &m)
{ return m.r == 1 && std::gcd(m.n, m.p) == 1; }

bool structurally_isomorphic(GroupSpec const &a, GroupSpec const &b)
{
  if (a.order() != b.order())
    return false;
  if (a.is<Cyclic>() && b.is<Cyclic>())
    return true;
  if (a.is<Cyclic>() && b.is<Metacyclic>())
    return metacyclic_is_cyclic(b.as<Metacyclic>());
  if (a.is<Metacyclic>() && b.is<Cyclic>())
    return metacyclic_is_cyclic(a.as<Metacyclic>());
  if (a.is<Metacyclic>() && b.is<Metacyclic>()) {
    auto const &x = a.as<Metacyclic>();
    auto const &y = b.as<Metacyclic>();
    return x.n == y.n && x.p == y.p &&
           cyclic_subgroup_mod(x.r, x.p) == cyclic_subgroup_mod(y.r, y.p);
  }
  throw OutOfScope("no structural isomorphism rule for " + to_string(a) + " and " +
                   to_string(b));
}

// Preference when merging: cyclic, then r = 1, r = p-1, then ascending r.
std::int64_t merge_rank(GroupSpec const &g)
{
  if (g.is<Cyclic>())
    return 0;
  auto const &m = g.as<Metacyclic>();
  if (m.r == 1)
    return 1;
  if (m.r == m.p - 1)
    return 2;
  return 2 + m.r;
}

std::int64_t q_value(std::int64_t p, std::int64_t g)
{ return 2 * (g + p - 1) / (p - 1); }

std::optional<SurfaceKernelMap> search_witness(GroupSpec const &group, NecSignature const &sig,
                                               std::int64_t p, SearchOptions const &options)
{
  FiniteGroup const g(group);
  PGonalSearch const gonal(g, p);
  std::optional<SurfaceKernelMap> found;
  visit_maps(g, sig, MapFilter::pseudo_real, options, [&](IndexedMap const &m) {
    if (!gonal.verify(sig, m))
      return true;
    found = to_map(g, sig, m);
    return false;
  });
  return found;
}

} // anonymous namespace

bool same_isomorphism_type(GroupSpec const &a, GroupSpec const &b)
{
  if (a.order() <= max_isomorphism_order && b.order() <= max_isomorphism_order)
    return is_isomorphic(a, b);
  return structurally_isomorphic(a, b);
}

Classification classify_genus(std::int64_t p, std::int64_t g, bool with_witnesses,
                              SearchOptions const &options)
{
  if (!is_odd_prime(p))
    throw InvalidParameters("p = " + std::to_string(p) + " is not an odd prime");

  Classification result;
  if (auto w = hypothesis_warning(p, g))
    result.warnings.push_back(*w);
  if (g % 2 != 0) {
    result.warnings.emplace_back("genus must be even: no pseudo-real cyclic p-gonal surface "
                                 "of odd genus");
    return result;
  }
  if (g < 2)
    return result;

  std::vector<ClassificationRecord> found;
  auto add = [&](std::int64_t n, GroupSpec group, Family family) {
    auto const fam = family_signature(p, n, g, family);
    ClassificationRecord rec{p, g, n, group, r_class(group), family, fam->signature,
                             std::nullopt, true, q_value(p, g), false};
    found.push_back(std::move(rec));
  };

  // l1 >= 2 bounds n by (g+p-1)/(p-1); l2 >= 2 gives a smaller bound.
  for (std::int64_t n = 4; n * (p - 1) <= g + p - 1; n += 4) {
    auto const general = exists_semidirect_general(p, n, g);
    if (general.exists) {
      for (std::int64_t r : general.qualifying_r)
        add(n, GroupSpec::metacyclic(n, p, r), Family::i);
    }

    auto const r1 = exists_semidirect_r1_pm1(p, n, g);
    if (r1.exists) {
      for (Family f : r1.families) {
        add(n, GroupSpec::metacyclic(n, p, 1), f);
        add(n, GroupSpec::metacyclic(n, p, p - 1), f);
      }
    }

    auto const cyclic = exists_cyclic(p, n, g);
    if (cyclic.exists) {
      for (Family f : cyclic.families)
        add(n, GroupSpec::cyclic(n * p), f);
    }
  }

  std::stable_sort(found.begin(), found.end(), [](auto const &a, auto const &b) {
    return std::tie(a.n, a.family) < std::tie(b.n, b.family) ||
           (std::tie(a.n, a.family) == std::tie(b.n, b.family) &&
            merge_rank(a.group) < merge_rank(b.group));
  });

  for (auto &rec : found) {
    auto const kept = std::find_if(
      result.records.begin(), result.records.end(), [&](ClassificationRecord const &k) {
        return k.n == rec.n && k.family == rec.family && k.signature == rec.signature &&
               same_isomorphism_type(k.group, rec.group);
      });
    if (kept != result.records.end()) {
      result.merges.push_back(to_string(rec.group) + " merged into " + to_string(kept->group) +
                              " on " + to_string(rec.signature));
      continue;
    }
    result.records.push_back(std::move(rec));
  }

  std::int64_t max_order = 0;
  for (auto const &rec : result.records)
    max_order = std::max(max_order, rec.order());

  for (auto &rec : result.records) {
    rec.is_max_order = rec.order() == max_order;
    if (!with_witnesses)
      continue;

    if (rec.group.is<Cyclic>()) {
      rec.witness = search_witness(rec.group, rec.signature, p, options);
    } else {
      auto const &m = rec.group.as<Metacyclic>();
      std::int64_t const l = static_cast<std::int64_t>(rec.signature.proper_periods.size()) - 1;
      rec.witness = rec.family == Family::i ? construct_family_i_action(p, m.n, m.r, l)
                                            : construct_family_ii_action(p, m.n, m.r, l);
    }

    if (!rec.witness) {
      rec.pseudo_real = false;
      result.warnings.push_back("no pseudo-real p-gonal witness for " + to_string(rec.group) +
                                " on " + to_string(rec.signature));
      continue;
    }
    auto const report = check(*rec.witness);
    rec.pseudo_real = report.pseudo_real;
    if (auto const w = verify_p_gonal(*rec.witness, p))
      rec.q = w->q;
  }

  std::sort(result.records.begin(), result.records.end(), [](auto const &a, auto const &b) {
    auto const ka = std::make_tuple(a.g, a.n, to_string(a.group), a.family);
    auto const kb = std::make_tuple(b.g, b.n, to_string(b.group), b.family);
    return ka < kb;
  });

  return result;
}

std::optional<MaximalOrder> maximal_order(std::int64_t p, std::int64_t g)
{
  if (!is_odd_prime(p))
    throw InvalidParameters("p = " + std::to_string(p) + " is not an odd prime");
  if (g % (p - 1) != 0)
    throw InvalidParameters("p-1 must divide g");
  if (g <= (p - 1) * (p - 1))
    throw InvalidParameters("g must exceed (p-1)^2");

  auto const classification = classify_genus(p, g, false);
  if (classification.records.empty())
    return std::nullopt;

  auto const &top = *std::max_element(
    classification.records.begin(), classification.records.end(),
    [](auto const &a, auto const &b) { return a.order() < b.order(); });

  MaximalOrder result{top.order(), top.n, {}, top.signature, top.family, "enumerated",
                      std::nullopt, top.order(), std::nullopt, ""};
  for (auto const &rec : classification.records) {
    if (rec.order() == top.order())
      result.group_types.push_back(rec.r_class);
  }

  std::int64_t const k = g / (p - 1);
  if (k % 4 == 3) {
    result.method = "g/(p-1) = 3 mod 4";
    result.formula_order = p * (g + p - 1) / (p - 1);
  } else if (k % 4 == 0) {
    result.method = "g/(p-1) = 0 mod 4";
    std::int64_t const n = k;
    if (std::gcd(p, n / 2) == 1)
      result.formula_order = n * p;

    MaximalOrderReadings r;
    r.statement_order = make_rational(p * g, p - 1);
    r.argument_order = make_rational(p * g, 2 * (p - 1));
    r.statement_gcd_argument = make_rational(g + p - 1, 2 * (p - 1));
    r.argument_gcd_argument = make_rational(g, 2 * (p - 1));
    if (auto v = as_int64(r.statement_gcd_argument))
      r.statement_gcd = std::gcd(p, *v);
    if (auto v = as_int64(r.argument_gcd_argument))
      r.argument_gcd = std::gcd(p, *v);
    result.readings = r;
  }

  if (result.formula_order) {
    result.resolution = *result.formula_order == result.enumerated_order
                          ? "closed form agrees with enumeration"
                          : "closed form " + std::to_string(*result.formula_order) +
                              " disagrees with enumeration; enumeration value reported";
  } else {
    result.resolution = "maximum over the classification";
  }

  if (result.readings) {
    auto const &r = *result.readings;
    result.resolution += "; stated order " + to_string(r.statement_order) +
                         (r.statement_order == result.order ? " matches" : " does not match") +
                         ", argued order " + to_string(r.argument_order) +
                         (r.argument_order == result.order ? " matches" : " does not match");
  }

  return result;
}

std::size_t CrossValidationReport::discrepancies() const
{
  return static_cast<std::size_t>(
    std::count_if(cells.begin(), cells.end(), [](auto const &c) { return c.discrepancy(); }));
}

namespace
{

struct CellSpec
{
  std::int64_t g;
  std::int64_t n;
  GroupSpec group;
};

ExistenceVerdict predicate_for(std::int64_t p, CellSpec const &cell)
{
  if (cell.group.is<Cyclic>())
    return exists_cyclic(p, cell.n, cell.g);

  std::int64_t const r = cell.group.as<Metacyclic>().r;
  if (r == 1 || r == p - 1)
    return exists_semidirect_r1_pm1(p, cell.n, cell.g);

  auto v = exists_semidirect_general(p, cell.n, cell.g);
  if (v.exists && std::find(v.qualifying_r.begin(), v.qualifying_r.end(), r) ==
                    v.qualifying_r.end())
    v.exists = false;
  return v;
}

CellResult run_cell(std::int64_t p, CellSpec const &cell, SearchOptions const &options)
{
  auto const verdict = predicate_for(p, cell);
  CellResult result{cell.g, cell.n, cell.group, r_class(cell.group), verdict.exists,
                    verdict.reasons, std::nullopt, std::nullopt, std::nullopt, ""};

  FiniteGroup const group(cell.group);
  PGonalSearch const gonal(group, p);
  SearchOptions single = options;
  single.workers = 1;

  std::vector<std::string> parts;
  try {
    for (Family f : {Family::i, Family::ii}) {
      auto const fam = family_signature(p, cell.n, cell.g, f);
      if (!fam || result.witness)
        continue;
      auto const &sig = fam->signature;

      std::size_t seen = 0;
      visit_maps(group, sig, MapFilter::pseudo_real, single, [&](IndexedMap const &m) {
        ++seen;
        auto const w = gonal.verify(sig, m);
        if (!w)
          return true;
        result.witness = to_map(group, sig, m);
        result.witness_q = w->q;
        return false;
      });

      parts.push_back(result.witness
                        ? to_string(sig) + ": p-gonal witness is pseudo-real map " +
                            std::to_string(seen)
                        : to_string(sig) + ": exhausted, " + std::to_string(seen) +
                            " pseudo-real maps, none p-gonal");
    }
    result.oracle = result.witness.has_value();
  } catch (BudgetExceeded const &e) {
    parts.push_back("budget exceeded: search space " + std::to_string(e.required) + " > " +
                    std::to_string(e.budget));
  }

  for (std::size_t i = 0; i < parts.size(); ++i)
    result.certificate += (i ? "; " : "") + parts[i];
  return result;
}

} // anonymous namespace

CrossValidationReport cross_validate(std::int64_t p, std::int64_t g_from, std::int64_t g_to,
                                     SearchOptions const &options)
{
  if (!is_odd_prime(p))
    throw InvalidParameters("p = " + std::to_string(p) + " is not an odd prime");
  if (g_from > g_to)
    throw InvalidParameters("empty genus range");

  CrossValidationReport report{p, g_from, g_to, {}, {}, false};

  std::vector<CellSpec> cells;
  for (std::int64_t g = g_from; g <= g_to; ++g) {
    if (g % 2 != 0) {
      report.notes.push_back("g = " + std::to_string(g) + " skipped: odd genus");
      continue;
    }
    if (g < 2)
      continue;
    if (auto w = hypothesis_warning(p, g))
      report.notes.push_back("g = " + std::to_string(g) + ": " + *w);

    for (std::int64_t n = 4; n * (p - 1) <= 2 * (g + p - 1); n += 2) {
      bool const any_family = family_signature(p, n, g, Family::i).has_value() ||
                              family_signature(p, n, g, Family::ii).has_value();
      if (!any_family)
        continue;

      cells.push_back({g, n, GroupSpec::cyclic(n * p)});
      for (std::int64_t r = 1; r < p; ++r) {
        if (pow_mod(r, n, p) == 1)
          cells.push_back({g, n, GroupSpec::metacyclic(n, p, r)});
      }
    }
  }

  report.cells.resize(cells.size(), CellResult{0, 0, GroupSpec::cyclic(1), "", false, {},
                                               std::nullopt, std::nullopt, std::nullopt, ""});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++)
      report.cells[i] = run_cell(p, cells[i], options);
  };

  unsigned const workers = std::max(1u, std::min<unsigned>(options.workers,
                                                           static_cast<unsigned>(cells.size())));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back(worker);
  }

  report.partial = std::any_of(report.cells.begin(), report.cells.end(),
                               [](auto const &c) { return !c.oracle.has_value(); });
  return report;
}

} // namespace pgonal
