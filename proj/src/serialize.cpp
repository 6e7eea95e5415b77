#include "pgonal/serialize.hpp"

#include <algorithm>
#include <sstream>

#include "pgonal/errors.hpp"

namespace pgonal
{

Json to_json(GroupElement const &a)
{ return Json(a.word); }

Json to_json(SurfaceKernelMap const &map)
{
  Json j;
  j["signature"] = to_string(map.signature);
  j["group"] = to_string(map.group);
  j["d"] = to_json(map.d);
  j["x"] = Json::array();
  for (auto const &x : map.x)
    j["x"].push_back(to_json(x));
  return j;
}

SurfaceKernelMap map_from_json(Json const &j)
{
  try {
    NecSignature sig = parse_signature(j.at("signature").get<std::string>());
    GroupSpec const group = parse_group(j.at("group").get<std::string>());

    SurfaceKernelMap map{std::move(sig), group,
                         make_element(group, j.at("d").get<Word>()), {}};
    for (auto const &x : j.at("x"))
      map.x.push_back(make_element(group, x.get<Word>()));
    return map;
  } catch (nlohmann::json::exception const &e) {
    throw ParseError(std::string("malformed map JSON: ") + e.what());
  }
}

Json to_json(ClassificationRecord const &rec)
{
  Json j;
  j["p"] = rec.p;
  j["g"] = rec.g;
  j["n"] = rec.n;
  j["order"] = rec.order();
  j["group"] = to_string(rec.group);
  j["r_class"] = rec.r_class;
  j["family"] = to_string(rec.family);
  j["signature"] = to_string(rec.signature);
  j["pseudo_real"] = rec.pseudo_real;
  j["q"] = rec.q;
  j["max_order"] = rec.is_max_order;
  if (rec.witness)
    j["witness"] = to_json(*rec.witness);
  return j;
}

Json to_json(CellResult const &cell)
{
  Json j;
  j["g"] = cell.g;
  j["n"] = cell.n;
  j["group"] = to_string(cell.group);
  j["r_class"] = cell.r_class;
  j["predicate"] = cell.predicate;
  j["oracle"] = cell.oracle ? Json(*cell.oracle) : Json(nullptr);
  j["discrepancy"] = cell.discrepancy();
  j["conditions"] = Json::object();
  for (auto const &c : cell.predicate_reasons)
    j["conditions"][c.name] = c.passed;
  if (cell.witness) {
    j["witness"] = to_json(*cell.witness);
    j["q"] = *cell.witness_q;
  }
  j["certificate"] = cell.certificate;
  return j;
}

Json to_json(CrossValidationReport const &report)
{
  Json j;
  j["p"] = report.p;
  j["genus_from"] = report.g_from;
  j["genus_to"] = report.g_to;
  j["partial"] = report.partial;
  j["discrepancies"] = report.discrepancies();
  j["notes"] = report.notes;
  j["cells"] = Json::array();
  for (auto const &c : report.cells)
    j["cells"].push_back(to_json(c));
  return j;
}

Json to_json(MaximalOrder const &m)
{
  Json j;
  j["order"] = m.order;
  j["n"] = m.n;
  j["group_types"] = m.group_types;
  j["signature"] = to_string(m.signature);
  j["family"] = to_string(m.family);
  j["method"] = m.method;
  j["formula_order"] = m.formula_order ? Json(*m.formula_order) : Json(nullptr);
  j["enumerated_order"] = m.enumerated_order;
  if (m.readings) {
    auto const &r = *m.readings;
    Json rj;
    rj["statement_order"] = to_string(r.statement_order);
    rj["argument_order"] = to_string(r.argument_order);
    rj["statement_gcd_argument"] = to_string(r.statement_gcd_argument);
    rj["argument_gcd_argument"] = to_string(r.argument_gcd_argument);
    rj["statement_gcd"] = r.statement_gcd ? Json(*r.statement_gcd) : Json(nullptr);
    rj["argument_gcd"] = r.argument_gcd ? Json(*r.argument_gcd) : Json(nullptr);
    j["readings"] = rj;
  }
  j["resolution"] = m.resolution;
  return j;
}

Json to_json(L1Outcome const &outcome)
{
  Json j;
  if (auto const *ev = std::get_if<L1Evidence>(&outcome)) {
    j["outcome"] = "extended";
    j["genus"] = ev->genus;
    j["signature"] = to_string(ev->delta_signature);
    j["extended_signature"] = to_string(ev->extended_signature);
    j["extended_group"] = to_string(ev->extended_group);
    j["maps_total"] = ev->maps_total;
    j["maps_extending"] = ev->maps_extending;
    if (ev->restricted_map)
      j["map"] = to_json(*ev->restricted_map);
    if (ev->extended_action) {
      auto const &a = *ev->extended_action;
      j["extension"] = {{"x1", to_json(a.elliptic)}, {"c0", to_json(a.c0)},
                        {"c1", to_json(a.c1)},       {"c2", to_json(a.c2)},
                        {"e", to_json(a.e)}};
    }
    j["involution"] = ev->involution_found ? to_json(*ev->involution_found) : Json(nullptr);
    j["notes"] = ev->notes;
    return j;
  }

  auto const &inc = std::get<InconsistentObstruction>(outcome);
  j["outcome"] = "inconsistent-presentation";
  j["group"] = to_string(inc.group);
  j["reason"] = inc.reason;
  j["maps_total"] = inc.maps_total;
  j["pseudo_real_maps"] = inc.pseudo_real_maps;
  return j;
}

TableFormat parse_table_format(std::string_view text)
{
  if (text == "csv")
    return TableFormat::csv;
  if (text == "json")
    return TableFormat::json;
  if (text == "markdown")
    return TableFormat::markdown;
  throw ParseError("unknown format '" + std::string(text) + "'");
}

namespace
{

std::vector<std::string> row_cells(ClassificationRecord const &rec, bool witness_column)
{
  std::vector<std::string> cells{std::to_string(rec.p),
                                 std::to_string(rec.g),
                                 std::to_string(rec.n),
                                 std::to_string(rec.order()),
                                 to_string(rec.group),
                                 rec.r_class,
                                 to_string(rec.family),
                                 to_string(rec.signature),
                                 rec.pseudo_real ? "true" : "false",
                                 std::to_string(rec.q),
                                 rec.is_max_order ? "true" : "false"};
  if (witness_column)
    cells.push_back(rec.witness ? to_json(*rec.witness).dump() : "");
  return cells;
}

std::string csv_field(std::string const &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;

  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"')
      quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string markdown_field(std::string const &s)
{
  std::string out;
  for (char c : s) {
    if (c == '|')
      out += '\\';
    out += c;
  }
  return out;
}

} // anonymous namespace

std::string render_table(std::vector<ClassificationRecord> const &records, TableFormat format)
{
  bool const witness_column = std::any_of(records.begin(), records.end(),
                                          [](auto const &r) { return r.witness.has_value(); });

  std::vector<std::string> header(std::begin(table_columns), std::end(table_columns));
  if (witness_column)
    header.emplace_back("witness");

  std::ostringstream out;
  switch (format) {
  case TableFormat::json: {
    Json rows = Json::array();
    for (auto const &rec : records)
      rows.push_back(to_json(rec));
    out << rows.dump(2) << '\n';
    break;
  }
  case TableFormat::csv: {
    auto emit = [&](std::vector<std::string> const &cells) {
      for (std::size_t i = 0; i < cells.size(); ++i)
        out << (i ? "," : "") << csv_field(cells[i]);
      out << '\n';
    };
    emit(header);
    for (auto const &rec : records)
      emit(row_cells(rec, witness_column));
    break;
  }
  case TableFormat::markdown: {
    auto emit = [&](std::vector<std::string> const &cells) {
      out << '|';
      for (auto const &c : cells)
        out << ' ' << markdown_field(c) << " |";
      out << '\n';
    };
    emit(header);
    out << '|';
    for (std::size_t i = 0; i < header.size(); ++i)
      out << " --- |";
    out << '\n';
    for (auto const &rec : records)
      emit(row_cells(rec, witness_column));
    break;
  }
  }
  return out.str();
}

} // namespace pgonal
