#include <algorithm>

#include "pgonal/actions.hpp"
#include "pgonal/arith.hpp"
#include "pgonal/errors.hpp"

namespace pgonal
{

std::vector<std::string> reflection_group_failures(ReflectionGroupImages const &images,
                                                   std::int64_t a, std::int64_t b)
{
  GroupSpec const &spec = images.elliptic.spec;
  for (auto const *g : {&images.c0, &images.c1, &images.c2, &images.e}) {
    if (!(g->spec == spec))
      throw SpecMismatch("reflection group images live in different groups");
  }

  FiniteGroup const group(spec);
  ElementId const x1 = group.id_of(images.elliptic);
  ElementId const c0 = group.id_of(images.c0);
  ElementId const c1 = group.id_of(images.c1);
  ElementId const c2 = group.id_of(images.c2);
  ElementId const e = group.id_of(images.e);

  std::vector<std::string> failures;
  if (group.element_order(x1) != 2)
    failures.emplace_back("x_1 must have order 2");
  if (group.element_order(c0) != 2)
    failures.emplace_back("c_0 must be an involution");
  if (group.element_order(c1) != 2)
    failures.emplace_back("c_1 must be an involution");
  if (group.element_order(c2) != 2)
    failures.emplace_back("c_2 must be an involution");
  if (group.element_order(group.mul(c0, c1)) != a)
    failures.push_back("c_0 c_1 must have order " + std::to_string(a));
  if (group.element_order(group.mul(c1, c2)) != b)
    failures.push_back("c_1 c_2 must have order " + std::to_string(b));
  if (group.mul(group.mul(group.inverse(e), c0), e) != c2)
    failures.emplace_back("c_2 = e^-1 c_0 e fails");
  if (group.mul(x1, e) != group.identity())
    failures.emplace_back("x_1 e = 1 fails");

  std::vector<ElementId> const gens{x1, c0, c1, c2, e};
  if (!group.is_whole(gens))
    failures.emplace_back("images do not generate the group");

  return failures;
}

namespace
{

struct Embedding
{
  FiniteGroup const &source;
  FiniteGroup const &target;

  // Both D_N and Ext2(K) words are the inner word prefixed by s^0.
  ElementId operator()(ElementId g) const
  {
    Word w{0};
    auto const &inner = source.word(g);
    w.insert(w.end(), inner.begin(), inner.end());
    return target.id_of(w);
  }
};

// Some involution S outside the image of G with S D S = D^-1, S X_1 S = X_1^-1.
std::optional<ElementId> inverting_involution(FiniteGroup const &extended, ElementId d,
                                              ElementId x1)
{
  for (ElementId s = 0; s < extended.order(); ++s) {
    if (extended.word(s).front() != 1 || extended.element_order(s) != 2)
      continue;
    if (extended.conjugate(d, s) == extended.inverse(d) &&
        extended.conjugate(x1, s) == extended.inverse(x1))
      return s;
  }
  return std::nullopt;
}

GroupElement ext_word(GroupSpec const &spec, Word w)
{ return make_element(spec, std::move(w)); }

// The map and extension written out for each case of the obstruction.
struct ClosedForm
{
  SurfaceKernelMap map;
  std::optional<ReflectionGroupImages> extension;
};

std::vector<ClosedForm> closed_forms(std::int64_t p, std::int64_t n, Family family,
                                     GroupSpec const &group, GroupSpec const &extended,
                                     NecSignature const &sig)
{
  std::vector<ClosedForm> forms;

  if (group.is<Cyclic>()) {
    if (family != Family::i)
      return forms;

    std::int64_t const N = n * p;
    for (std::int64_t m = 1; m < p; ++m) {
      auto t = [&](std::int64_t e) { return make_element(group, {mod(e, N)}); };
      auto st = [&](std::int64_t c, std::int64_t e) {
        return ext_word(extended, {c, mod(e, N)});
      };

      // t^2m s = s t^-2m
      GroupElement const elliptic = st(0, 2 * m + 1);
      ReflectionGroupImages ext{elliptic, st(1, -2 * m), st(1, 0), st(1, -2 * m - 2),
                                inverse(elliptic)};
      forms.push_back({{sig, group, t(1), {t(2 * m), t(-2 * m - 2)}}, std::move(ext)});
    }
    return forms;
  }

  auto const &meta = group.as<Metacyclic>();
  auto xy = [&](std::int64_t a, std::int64_t b) {
    return make_element(group, {mod(a, p), mod(b, n)});
  };
  auto sxy = [&](std::int64_t c, std::int64_t a, std::int64_t b) {
    return ext_word(extended, {c, mod(a, p), mod(b, n)});
  };

  if (family == Family::i) {
    std::int64_t const alpha = mod((p + 1) / 2 * pow_mod(meta.r, n - 1, p), p);
    ReflectionGroupImages ext{sxy(1, alpha, -1), sxy(1, 0, 0), sxy(1, 1, 0), sxy(1, 1, -2),
                              sxy(1, alpha, -1)};
    forms.push_back({{sig, group, xy(0, 1), {xy(1, 0), xy(0, -2)}}, std::move(ext)});
  } else {
    std::optional<ReflectionGroupImages> ext;
    if (meta.r == 1)
      ext = ReflectionGroupImages{sxy(1, 0, -1), sxy(1, 0, 0), sxy(1, 1, 0), sxy(1, 0, -2),
                                  sxy(1, 0, -1)};
    forms.push_back({{sig, group, xy(0, 1), {xy(1, 0), xy(-1, -2)}}, std::move(ext)});
  }
  return forms;
}

} // anonymous namespace

L1Outcome l1_obstruction(std::int64_t p, std::int64_t n, Family family,
                         GroupSpec const &group, SearchOptions const &options)
{
  if (!is_odd_prime(p))
    throw InvalidParameters("p = " + std::to_string(p) + " is not an odd prime");
  if (n <= 0 || n % 4 != 0)
    throw InvalidParameters("n = " + std::to_string(n) + " is not a positive multiple of 4");

  std::int64_t const genus = family == Family::i ? n * (p - 1) / 2 - p + 1 : n * (p - 1) / 2;
  auto const fam = family_signature(p, n, genus, family);
  if (!fam || fam->l != 1)
    throw InvalidParameters("not an l = 1 instance");

  bool const cyclic = group.is<Cyclic>() && group.as<Cyclic>().order == n * p;
  bool const metacyclic = group.is<Metacyclic>() && group.as<Metacyclic>().n == n &&
                          group.as<Metacyclic>().p == p;
  if (!cyclic && !metacyclic)
    throw InvalidParameters("group must be C_" + std::to_string(n * p) + " or M(n=" +
                            std::to_string(n) + ",p=" + std::to_string(p) + ",r)");

  NecSignature const &sig = fam->signature;
  std::int64_t const last = sig.proper_periods.back();
  FiniteGroup const g(group);

  if (metacyclic) {
    std::int64_t const r = group.as<Metacyclic>().r;
    if (pow_mod(r, 2, p) != 1) {
      InconsistentObstruction result{group, "", 0, 0};
      result.reason = "r = " + std::to_string(r) + " has r^2 != 1 (mod " + std::to_string(p) +
                      "): s x s = x^-1, s y s = y^-1 is incompatible with y^-1 x y = x^r, "
                      "so no inverting extension of " + to_string(group) + " exists";
      result.maps_total = enumerate_indexed(g, sig, MapFilter::valid, options).size();
      result.pseudo_real_maps = enumerate_indexed(g, sig, MapFilter::pseudo_real, options).size();
      return result;
    }
  }

  GroupSpec const extended = cyclic ? GroupSpec::dihedral(n * p)
                                    : GroupSpec::inverting_extension(group);
  FiniteGroup const ext(extended);
  Embedding const iota{g, ext};

  L1Evidence ev{genus, sig, NecSignature{0, true, {2}, {{p, last}}}, extended, 0, 0,
                std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt, {}};

  auto const maps = enumerate_indexed(g, sig, MapFilter::valid, options);
  ev.maps_total = maps.size();
  std::optional<IndexedMap> first_extending;
  for (auto const &m : maps) {
    if (extends_to_reflection_overgroup(g, m)) {
      ++ev.maps_extending;
      if (!first_extending)
        first_extending = m;
    }
  }

  if (maps.empty()) {
    ev.notes.push_back("no surface-kernel map from " + to_string(sig) + " onto " +
                       to_string(group) + " exists");
  } else if (ev.maps_extending == ev.maps_total) {
    ev.notes.push_back("all " + std::to_string(ev.maps_total) +
                       " maps extend to the reflection overgroup");
  } else {
    ev.notes.push_back(std::to_string(ev.maps_total - ev.maps_extending) + " of " +
                       std::to_string(ev.maps_total) + " maps do not extend");
  }

  std::optional<IndexedMap> chosen;
  auto const forms = closed_forms(p, n, family, group, extended, sig);
  if (!forms.empty()) {
    ev.closed_form_map_valid = false;
    for (auto const &form : forms) {
      auto const report = check(form.map);
      if (report.valid) {
        ev.closed_form_map_valid = true;
        chosen = to_indexed(g, form.map);
        break;
      }
    }
    if (!*ev.closed_form_map_valid)
      ev.notes.push_back("closed-form map fails: " + check(forms.front().map).failures.front());

    for (auto const &form : forms) {
      if (!form.extension)
        continue;
      bool const ok = reflection_group_failures(*form.extension, p, last).empty();
      ev.closed_form_extension_valid = ev.closed_form_extension_valid.value_or(false) || ok;
    }
    if (ev.closed_form_extension_valid && !*ev.closed_form_extension_valid) {
      auto const &front = std::find_if(forms.begin(), forms.end(),
                                       [](auto const &f) { return f.extension.has_value(); });
      ev.notes.push_back("closed-form extension fails: " +
                         reflection_group_failures(*front->extension, p, last).front());
    }
  }

  if (!chosen)
    chosen = first_extending ? first_extending
                             : (maps.empty() ? std::nullopt : std::optional(maps.front()));
  if (!chosen)
    return ev;

  ev.restricted_map = to_map(g, sig, *chosen);

  ElementId const D = iota(chosen->d);
  ElementId const X1 = iota(chosen->x[0]);
  ElementId const X2 = iota(chosen->x[1]);
  auto const s = inverting_involution(ext, D, X1);
  if (!s) {
    ev.notes.push_back("the chosen map does not extend");
    return ev;
  }

  ElementId const elliptic = ext.mul(D, *s);
  ReflectionGroupImages images{ext.element(elliptic), ext.element(*s),
                               ext.element(ext.mul(*s, X1)),
                               ext.element(ext.mul(ext.mul(*s, X1), X2)),
                               ext.element(ext.inverse(elliptic))};

  auto const failures = reflection_group_failures(images, p, last);
  if (!failures.empty())
    throw Error("extension of the restricted map is inconsistent: " + failures.front());

  ev.involution_found = images.c0;
  ev.extended_action = std::move(images);
  return ev;
}

} // namespace pgonal
