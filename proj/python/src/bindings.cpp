// Thin pybind11 layer: signatures and groups travel as their text forms,
// maps and records as JSON strings that the Python package decodes.

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.hpp"
#include "pgonal/actions.hpp"
#include "pgonal/classify.hpp"
#include "pgonal/errors.hpp"
#include "pgonal/nec.hpp"
#include "pgonal/serialize.hpp"

namespace py = pybind11;
using namespace pgonal;

namespace
{

SearchOptions options(std::uint64_t budget, unsigned workers)
{
  SearchOptions o;
  o.budget = budget;
  o.workers = workers;
  return o;
}

std::string dump(Json const &j) { return j.dump(); }

std::string verdict_json(ExistenceVerdict const &v)
{
  Json j;
  j["exists"] = v.exists;
  j["p"] = v.p;
  j["n"] = v.n;
  j["g"] = v.g;
  j["l1"] = to_string(v.l1);
  j["l2"] = to_string(v.l2);
  j["gcd_pn2"] = v.gcd_pn2;
  j["reasons"] = Json::array();
  for (auto const &c : v.reasons)
    j["reasons"].push_back({{"name", c.name}, {"passed", c.passed}});
  j["families"] = Json::array();
  for (Family f : v.families)
    j["families"].push_back(to_string(f));
  j["qualifying_r"] = v.qualifying_r;
  j["notes"] = v.notes;
  j["hypothesis_warning"] = v.hypothesis_warning ? Json(*v.hypothesis_warning) : Json(nullptr);
  return dump(j);
}

SurfaceKernelMap load_map(std::string const &text) { return map_from_json(Json::parse(text)); }

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Pseudo-real cyclic p-gonal surfaces: signatures, groups, actions, classification.";

  auto base = py::register_exception<Error>(m, "PgonalError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<InvalidSignature>(m, "InvalidSignature", base);
  py::register_exception<DegenerateSignature>(m, "DegenerateSignature", base);
  py::register_exception<InvalidParameters>(m, "InvalidParameters", base);
  py::register_exception<SpecMismatch>(m, "SpecMismatch", base);
  py::register_exception<InconsistentPresentation>(m, "InconsistentPresentation", base);
  py::register_exception<OutOfScope>(m, "OutOfScope", base);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base);

  m.attr("DEFAULT_BUDGET") = SearchOptions{}.budget;

  m.def("canonical_signature", [](std::string const &s) { return to_string(parse_signature(s)); });
  m.def("validate_signature", [](std::string const &s) { return validate(parse_signature(s)); });
  m.def("normalized_area", [](std::string const &s) {
    return to_string(normalized_area(parse_signature(s)));
  });
  m.def("genus_of_surface_kernel", [](std::string const &s, std::int64_t order) {
    return genus_of_surface_kernel(parse_signature(s), order);
  });
  m.def("canonical_fuchsian",
        [](std::string const &s) { return to_string(canonical_fuchsian(parse_signature(s))); });
  m.def("family_signature", [](std::int64_t p, std::int64_t n, std::int64_t g,
                               std::string const &family) -> std::optional<py::tuple> {
    auto const s = family_signature(p, n, g, parse_family(family));
    if (!s)
      return std::nullopt;
    return py::make_tuple(to_string(s->signature), s->l);
  });

  m.def("canonical_group", [](std::string const &g) { return to_string(parse_group(g)); });
  m.def("group_order", [](std::string const &g) { return parse_group(g).order(); });
  m.def("is_isomorphic", [](std::string const &a, std::string const &b) {
    return is_isomorphic(parse_group(a), parse_group(b));
  });
  m.def("element_order", [](std::string const &g, Word const &w) {
    return order(make_element(parse_group(g), w));
  });
  m.def("multiply", [](std::string const &g, Word const &a, Word const &b) {
    GroupSpec const spec = parse_group(g);
    return mul(make_element(spec, a), make_element(spec, b)).word;
  });

  m.def("check", [](std::string const &map) {
    CheckReport const r = check(load_map(map));
    Json j;
    j["valid"] = r.valid;
    j["genus"] = r.genus ? Json(*r.genus) : Json(nullptr);
    j["orientation_index"] = r.orientation_index;
    j["involution_free"] = r.involution_free;
    j["extends"] = r.extends ? Json(*r.extends) : Json(nullptr);
    j["pseudo_real"] = r.pseudo_real;
    j["failures"] = r.failures;
    return dump(j);
  });
  m.def(
    "enumerate",
    [](std::string const &sig, std::string const &group, bool pseudo_real, std::uint64_t budget,
       unsigned workers) {
      std::vector<std::string> out;
      {
        py::gil_scoped_release release;
        for (auto const &map : enumerate(parse_signature(sig), parse_group(group), pseudo_real,
                                         options(budget, workers)))
          out.push_back(dump(to_json(map)));
      }
      return out;
    },
    py::arg("signature"), py::arg("group"), py::arg("pseudo_real") = false,
    py::arg("budget") = SearchOptions{}.budget, py::arg("workers") = 1u);
  m.def("construct_family_i_action",
        [](std::int64_t p, std::int64_t n, std::int64_t r, std::int64_t l) {
          return dump(to_json(construct_family_i_action(p, n, r, l)));
        });
  m.def("construct_family_ii_action",
        [](std::int64_t p, std::int64_t n, std::int64_t r, std::int64_t l) {
          return dump(to_json(construct_family_ii_action(p, n, r, l)));
        });
  m.def("verify_p_gonal", [](std::string const &map, std::int64_t p) -> std::optional<std::string> {
    auto const w = verify_p_gonal(load_map(map), p);
    if (!w)
      return std::nullopt;
    Json j;
    j["h"] = to_json(w->h_generator);
    j["quotient_signature"] = to_string(w->quotient_signature);
    j["q"] = w->q;
    return dump(j);
  });

  m.def("exists_cyclic", [](std::int64_t p, std::int64_t n, std::int64_t g) {
    return verdict_json(exists_cyclic(p, n, g));
  });
  m.def("exists_semidirect_r1_pm1", [](std::int64_t p, std::int64_t n, std::int64_t g) {
    return verdict_json(exists_semidirect_r1_pm1(p, n, g));
  });
  m.def("exists_semidirect_general", [](std::int64_t p, std::int64_t n, std::int64_t g) {
    return verdict_json(exists_semidirect_general(p, n, g));
  });

  m.def(
    "classify_genus",
    [](std::int64_t p, std::int64_t g, bool witnesses, std::uint64_t budget, unsigned workers) {
      Classification c;
      {
        py::gil_scoped_release release;
        c = classify_genus(p, g, witnesses, options(budget, workers));
      }
      Json j;
      j["records"] = Json::array();
      for (auto const &r : c.records)
        j["records"].push_back(to_json(r));
      j["warnings"] = c.warnings;
      j["merges"] = c.merges;
      return dump(j);
    },
    py::arg("p"), py::arg("g"), py::arg("witnesses") = false,
    py::arg("budget") = SearchOptions{}.budget, py::arg("workers") = 1u);
  m.def("maximal_order", [](std::int64_t p, std::int64_t g) -> std::optional<std::string> {
    auto const mo = maximal_order(p, g);
    if (!mo)
      return std::nullopt;
    return dump(to_json(*mo));
  });
  m.def(
    "cross_validate",
    [](std::int64_t p, std::int64_t from, std::int64_t to, std::uint64_t budget,
       unsigned workers) {
      CrossValidationReport r;
      {
        py::gil_scoped_release release;
        r = cross_validate(p, from, to, options(budget, workers));
      }
      return dump(to_json(r));
    },
    py::arg("p"), py::arg("g_from"), py::arg("g_to"), py::arg("budget") = SearchOptions{}.budget,
    py::arg("workers") = 1u);
  m.def(
    "l1_obstruction",
    [](std::int64_t p, std::int64_t n, std::string const &family, std::string const &group,
       std::uint64_t budget) {
      return dump(to_json(l1_obstruction(p, n, parse_family(family), parse_group(group),
                                         options(budget, 1))));
    },
    py::arg("p"), py::arg("n"), py::arg("family"), py::arg("group"),
    py::arg("budget") = SearchOptions{}.budget);

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "pgonal");
    std::vector<char const *> argv;
    for (auto const &a : args)
      argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });
}
