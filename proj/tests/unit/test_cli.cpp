#include <cstdlib>
#include <algorithm>
#include <filesystem>
#include <optional>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "pgonal/serialize.hpp"

using namespace pgonal;

namespace
{

struct Result
{
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args)
{
  args.insert(args.begin(), "pgonal");
  std::vector<char const *> argv;
  for (auto const &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int const code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path golden(std::string const &name)
{ return std::filesystem::path(PGONAL_GOLDEN_DIR) / name; }

std::vector<std::vector<std::string>> parse_csv(std::string const &text)
{
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char const c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\n') {
      row.push_back(field);
      field.clear();
      rows.push_back(row);
      row.clear();
    } else {
      field += c;
    }
  }
  return rows;
}

std::vector<std::vector<std::string>> parse_markdown(std::string const &text)
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  bool separator = true;
  while (std::getline(in, line)) {
    if (!first && separator) {
      separator = false;
      continue;
    }
    first = false;
    std::vector<std::string> row;
    std::string field;
    for (std::size_t i = 1; i < line.size(); ++i) {
      if (line[i] == '\\' && i + 1 < line.size() && line[i + 1] == '|') {
        field += '|';
        ++i;
      } else if (line[i] == '|') {
        row.push_back(field.substr(1, field.size() - 2));
        field.clear();
      } else {
        field += line[i];
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::vector<std::string>> json_rows(std::string const &text)
{
  Json const j = Json::parse(text);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header(std::begin(table_columns), std::end(table_columns));
  rows.push_back(header);
  for (auto const &rec : j) {
    std::vector<std::string> row;
    for (auto const &col : header) {
      Json const &v = rec.at(col);
      row.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    rows.push_back(row);
  }
  return rows;
}

class EnvGuard
{
public:
  EnvGuard(char const *name, char const *value)
  : _name(name)
  {
    if (char const *old = std::getenv(name))
      _old = old;
    if (value)
      setenv(name, value, 1);
    else
      unsetenv(name);
  }
  ~EnvGuard()
  {
    if (_old)
      setenv(_name, _old->c_str(), 1);
    else
      unsetenv(_name);
  }

private:
  char const *_name;
  std::optional<std::string> _old;
};

} // namespace

TEST(Cli, ClassifyGenusSix)
{
  EnvGuard const env("PGONAL_BUDGET", nullptr);
  Result const r = run_cli({"classify", "--p", "3", "--genus", "6"});
  EXPECT_EQ(r.code, 0);
  auto const rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][4], "C12");
  EXPECT_EQ(rows[2][4], "M(n=4,p=3,r=2)");
}

TEST(Cli, ClassifyOddGenus)
{
  Result const r = run_cli({"classify", "--p", "3", "--genus", "7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse_csv(r.out).size(), 1u);
  EXPECT_NE(r.err.find("genus must be even"), std::string::npos);
}

TEST(Cli, ClassifyLowGenusWarns)
{
  Result const r = run_cli({"classify", "--p", "3", "--genus", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("hypothesis g > (p-1)^2 violated"), std::string::npos);
}

TEST(Cli, UsageErrors)
{
  EXPECT_EQ(run_cli({"classify", "--p", "4", "--genus", "6"}).code, 2);
  EXPECT_EQ(run_cli({"classify", "--p", "3"}).code, 2);
  EXPECT_EQ(run_cli({"classify", "--p", "3", "--genus", "6", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"table", "--p", "3", "--genus", "9..6"}).code, 2);
  EXPECT_EQ(run_cli({"search", "(1;-;[3,3,2]", "C12"}).code, 2);
  EXPECT_EQ(run_cli({"search", "(1;-;[3,3,2])", "Q8"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"table", "--p", "3", "--genus", "6..6", "--out", "/nonexistent/dir/x"}).code,
            2);
}

TEST(Cli, TableJsonMatchesClassify)
{
  Result const table = run_cli({"table", "--p", "3", "--genus", "6..6", "--format", "json"});
  Result const classify = run_cli({"classify", "--p", "3", "--genus", "6", "--format", "json"});
  EXPECT_EQ(table.code, 0);
  EXPECT_EQ(table.out, classify.out);
}

TEST(Cli, FormatsCarryTheSameData)
{
  for (char const *range : {"6..20", "18..24"}) {
    std::string const p = std::string(range) == "6..20" ? "3" : "5";
    Result const csv = run_cli({"table", "--p", p, "--genus", range, "--format", "csv"});
    Result const json = run_cli({"table", "--p", p, "--genus", range, "--format", "json"});
    Result const md = run_cli({"table", "--p", p, "--genus", range, "--format", "markdown"});
    auto const rows = parse_csv(csv.out);
    EXPECT_GT(rows.size(), 2u);
    EXPECT_EQ(rows, json_rows(json.out));
    EXPECT_EQ(rows, parse_markdown(md.out));
  }
}

TEST(Cli, GeneralRRowsForFive)
{
  Result const r = run_cli({"table", "--p", "5", "--genus", "18..24"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("5,20,4,20,\"M(n=4,p=5,r=2)\",r=2"), std::string::npos) << r.out;
}

TEST(Cli, TableIsDeterministicAcrossWorkers)
{
  Result const a = run_cli({"table", "--p", "3", "--genus", "6..20", "--witnesses", "--workers", "1"});
  Result const b = run_cli({"table", "--p", "3", "--genus", "6..20", "--witnesses", "--workers", "5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
}

TEST(Cli, TableWritesFile)
{
  auto const path = std::filesystem::temp_directory_path() / "pgonal_table_test.csv";
  Result const r = run_cli({"table", "--p", "3", "--genus", "6..8", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_file(path), run_cli({"table", "--p", "3", "--genus", "6..8"}).out);
  std::filesystem::remove(path);
}

TEST(Cli, VerifyExitCodes)
{
  EnvGuard const env("PGONAL_BUDGET", nullptr);
  EXPECT_EQ(run_cli({"verify", "--p", "3", "--genus", "6..12"}).code, 0);
  EXPECT_EQ(run_cli({"verify", "--p", "3", "--genus", "6..6", "--budget", "10"}).code, 3);
  Result const odd = run_cli({"verify", "--p", "3", "--genus", "5..5"});
  EXPECT_EQ(odd.code, 0);
  EXPECT_NE(odd.err.find("odd genus"), std::string::npos);
  EXPECT_EQ(run_cli({"verify", "--p", "3", "--genus", "6..6", "--budget", "0"}).code, 2);
}

TEST(Cli, VerifyJsonReport)
{
  Result const r = run_cli({"verify", "--p", "3", "--genus", "6..6", "--json"});
  EXPECT_EQ(r.code, 0);
  Json const j = Json::parse(r.out);
  EXPECT_EQ(j.at("discrepancies"), 0);
  EXPECT_FALSE(j.at("cells").empty());
}

TEST(Cli, BudgetPrecedence)
{
  auto const config = std::filesystem::temp_directory_path() / "pgonal_test.conf";
  {
    std::ofstream out(config);
    out << "# search limits\nbudget = 10\nworkers = 2\n";
  }
  std::vector<std::string> const base{"verify", "--p", "3", "--genus", "6..6"};
  {
    EnvGuard const env("PGONAL_BUDGET", "5");
    EXPECT_EQ(run_cli(base).code, 3);
    auto with_flag = base;
    with_flag.insert(with_flag.end(), {"--budget", "100000000"});
    EXPECT_EQ(run_cli(with_flag).code, 0);
  }
  {
    EnvGuard const env("PGONAL_BUDGET", "100000000");
    auto with_config = base;
    with_config.insert(with_config.end(), {"--config", config.string()});
    EXPECT_EQ(run_cli(with_config).code, 3);
    with_config.insert(with_config.end(), {"--budget", "100000000"});
    EXPECT_EQ(run_cli(with_config).code, 0);
  }
  {
    EnvGuard const env("PGONAL_BUDGET", "lots");
    EXPECT_EQ(run_cli(base).code, 2);
  }
  {
    std::ofstream out(config);
    out << "colour = blue\n";
  }
  auto bad = base;
  bad.insert(bad.end(), {"--config", config.string()});
  EXPECT_EQ(run_cli(bad).code, 2);
  std::filesystem::remove(config);
}

TEST(Cli, SearchExamples)
{
  EnvGuard const env("PGONAL_BUDGET", nullptr);
  Result const c12 = run_cli({"search", "(1;-;[3,3,2])", "C12", "--pseudo-real"});
  EXPECT_EQ(c12.code, 0);
  EXPECT_NE(c12.out.find(R"j({"signature":"(1;-;[3,3,2])","group":"C12","d":[3],"x":[[4],[8],[6]]})j"),
            std::string::npos);

  Result const c24 = run_cli({"search", "(1;-;[3,4])", "C24", "--pseudo-real"});
  EXPECT_EQ(c24.out, "count: 0\n");
  Result const d12 = run_cli({"search", "(1;-;[3,3,2])", "D12", "--pseudo-real"});
  EXPECT_EQ(d12.out, "count: 0\n");

  Result const limited = run_cli({"search", "(1;-;[3,3,2])", "C12", "--limit", "1"});
  EXPECT_EQ(std::count(limited.out.begin(), limited.out.end(), '\n'), 2);

  EXPECT_EQ(run_cli({"search", "(1;-;[3,3,2])", "C12", "--budget", "10"}).code, 3);
}

TEST(Cli, SearchOutputParsesBack)
{
  Result const r = run_cli({"search", "(1;-;[3,3,6])", "M(4,3,2)", "--pseudo-real"});
  std::istringstream in(r.out);
  std::string line;
  int maps = 0;
  while (std::getline(in, line)) {
    if (line.rfind("count:", 0) == 0)
      break;
    SurfaceKernelMap const m = map_from_json(Json::parse(line));
    EXPECT_TRUE(check(m).pseudo_real);
    EXPECT_EQ(to_json(m).dump(), line);
    ++maps;
  }
  EXPECT_GT(maps, 0);
}

TEST(Cli, ExistsMaxOrderAndObstruction)
{
  Result const e = run_cli({"exists", "--p", "5", "--n", "4", "--genus", "20"});
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("1 < r < p-1: exists"), std::string::npos);
  EXPECT_NE(e.out.find("r in {2, 3}"), std::string::npos);

  Result const m = run_cli({"max-order", "--p", "3", "--genus", "8"});
  EXPECT_EQ(m.code, 0);
  EXPECT_EQ(Json::parse(m.out).at("order"), 12);
  EXPECT_EQ(run_cli({"max-order", "--p", "3", "--genus", "7"}).code, 2);

  Result const o = run_cli({"obstruction", "--p", "3", "--n", "8", "--family", "i", "--group", "C24"});
  EXPECT_EQ(o.code, 0);
  Json const oj = Json::parse(o.out);
  EXPECT_EQ(oj.at("extended_group"), "D24");
  EXPECT_EQ(oj.at("involution"), Json::parse("[1,0]"));

  Result const inc =
    run_cli({"obstruction", "--p", "5", "--n", "4", "--family", "i", "--group", "M(4,5,2)"});
  EXPECT_EQ(Json::parse(inc.out).at("outcome"), "inconsistent-presentation");
}

TEST(Golden, Tables)
{
  struct Case
  {
    char const *file;
    std::vector<std::string> args;
  };
  Case const cases[] = {
      {"table_p3_6_20.csv", {"table", "--p", "3", "--genus", "6..20", "--format", "csv"}},
      {"table_p3_6_12.json", {"table", "--p", "3", "--genus", "6..12", "--format", "json"}},
      {"table_p3_6_12.md", {"table", "--p", "3", "--genus", "6..12", "--format", "markdown"}},
      {"table_p5_18_24.csv", {"table", "--p", "5", "--genus", "18..24"}},
      {"classify_p3_g8_witnesses.json",
       {"classify", "--p", "3", "--genus", "8", "--witnesses", "--format", "json"}},
      {"search_c12.jsonl", {"search", "(1;-;[3,3,2])", "C12", "--pseudo-real"}},
  };
  for (auto const &c : cases) {
    Result const r = run_cli(c.args);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, read_file(golden(c.file))) << c.file;
  }
}

TEST(Golden, RecordsMatchSchema)
{
  Json const schema = Json::parse(read_file(std::filesystem::path(PGONAL_DOCS_DIR) /
                                            "record.schema.json"));
  Json const rows = Json::parse(
    run_cli({"table", "--p", "3", "--genus", "6..14", "--witnesses", "--format", "json"}).out);
  ASSERT_FALSE(rows.empty());

  auto type_ok = [](Json const &v, std::string const &type) {
    if (type == "integer")
      return v.is_number_integer();
    if (type == "string")
      return v.is_string();
    if (type == "boolean")
      return v.is_boolean();
    if (type == "object")
      return v.is_object();
    if (type == "array")
      return v.is_array();
    return false;
  };

  for (auto const &row : rows) {
    for (auto const &key : schema.at("required"))
      EXPECT_TRUE(row.contains(key.get<std::string>())) << key;
    for (auto const &[key, value] : row.items()) {
      ASSERT_TRUE(schema.at("properties").contains(key)) << key;
      Json const &prop = schema.at("properties").at(key);
      EXPECT_TRUE(type_ok(value, prop.at("type").get<std::string>())) << key;
      if (prop.contains("enum"))
        EXPECT_NE(std::find(prop.at("enum").begin(), prop.at("enum").end(), value),
                  prop.at("enum").end());
    }
    ASSERT_TRUE(row.contains("witness"));
    for (auto const &key : schema.at("properties").at("witness").at("required"))
      EXPECT_TRUE(row.at("witness").contains(key.get<std::string>()));
  }
}
