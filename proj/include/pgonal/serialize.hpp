#pragma once

/**
 * @file serialize.hpp
 * @brief JSON for maps and records, and the csv / json / markdown tables.
 *
 * A map is `{"signature": "(1;-;[3,3,2])", "group": "C12", "d": [3],
 * "x": [[4],[8],[6]]}` with elements as their normal-form words.
 */

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pgonal/actions.hpp"
#include "pgonal/classify.hpp"

namespace pgonal
{

using Json = nlohmann::ordered_json;

Json to_json(GroupElement const &a);
Json to_json(SurfaceKernelMap const &map);
SurfaceKernelMap map_from_json(Json const &j);

Json to_json(ClassificationRecord const &rec);
Json to_json(CellResult const &cell);
Json to_json(CrossValidationReport const &report);
Json to_json(MaximalOrder const &m);
Json to_json(L1Outcome const &outcome);

enum class TableFormat { csv, json, markdown };

TableFormat parse_table_format(std::string_view text);

inline constexpr char const *table_columns[] = {"p",     "g",         "n",         "order",
                                                "group", "r_class",   "family",    "signature",
                                                "pseudo_real", "q",   "max_order"};

// Rows in the given order; a trailing witness column appears when any
// record carries a witness.
std::string render_table(std::vector<ClassificationRecord> const &records, TableFormat format);

} // namespace pgonal
