#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pgonal/actions.hpp"
#include "pgonal/arith.hpp"
#include "pgonal/classify.hpp"
#include "pgonal/errors.hpp"
#include "pgonal/serialize.hpp"

namespace pgonal::cli
{

namespace
{

struct UsageError : Error
{
  using Error::Error;
};

struct GenusRange
{
  std::int64_t from;
  std::int64_t to;
};

GenusRange parse_genus_range(std::string const &text)
{
  auto parse_int = [&](std::string const &s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (std::exception const &) {
      used = 0;
    }
    if (used == 0 || used != s.size())
      throw UsageError("malformed genus '" + text + "', expected G or A..B");
    return v;
  };

  auto const dots = text.find("..");
  if (dots == std::string::npos) {
    auto const g = parse_int(text);
    return {g, g};
  }
  GenusRange const r{parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
  if (r.from > r.to)
    throw UsageError("empty genus range '" + text + "'");
  if (r.from < 0)
    throw UsageError("genus must be non-negative");
  return r;
}

// budget / workers from flags, then the config file, then PGONAL_BUDGET.
struct Settings
{
  std::optional<std::uint64_t> budget;
  std::optional<unsigned> workers;
  std::string config;

  SearchOptions resolve() const
  {
    SearchOptions options;
    std::optional<std::uint64_t> config_budget;
    std::optional<unsigned> config_workers;

    if (!config.empty()) {
      std::ifstream in(config);
      if (!in)
        throw UsageError("cannot read config file " + config);

      std::string line;
      int number = 0;
      while (std::getline(in, line)) {
        ++number;
        if (auto const hash = line.find('#'); hash != std::string::npos)
          line.erase(hash);
        auto const eq = line.find('=');
        auto trim = [](std::string s) {
          auto const b = s.find_first_not_of(" \t\r");
          auto const e = s.find_last_not_of(" \t\r");
          return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(line).empty())
          continue;
        if (eq == std::string::npos)
          throw UsageError(config + ":" + std::to_string(number) + ": expected key=value");

        std::string const key = trim(line.substr(0, eq));
        std::string const value = trim(line.substr(eq + 1));
        try {
          if (key == "budget")
            config_budget = std::stoull(value);
          else if (key == "workers")
            config_workers = static_cast<unsigned>(std::stoul(value));
          else
            throw UsageError(config + ":" + std::to_string(number) + ": unknown key '" + key +
                             "'");
        } catch (std::logic_error const &) {
          throw UsageError(config + ":" + std::to_string(number) + ": bad value '" + value +
                           "'");
        }
      }
    }

    std::optional<std::uint64_t> env_budget;
    if (char const *env = std::getenv("PGONAL_BUDGET"); env && *env) {
      try {
        env_budget = std::stoull(env);
      } catch (std::logic_error const &) {
        throw UsageError(std::string("PGONAL_BUDGET is not a number: ") + env);
      }
    }

    if (auto b = budget ? budget : config_budget ? config_budget : env_budget)
      options.budget = *b;
    if (auto w = workers ? workers : config_workers)
      options.workers = *w;

    if (options.budget < 1)
      throw UsageError("budget must be >= 1");
    if (options.workers < 1)
      throw UsageError("workers must be >= 1");
    return options;
  }
};

void add_search_flags(CLI::App *cmd, Settings &s)
{
  cmd->add_option("--budget", s.budget, "Bound on the search space per signature and group");
  cmd->add_option("--workers", s.workers, "Parallel workers");
  cmd->add_option("--config", s.config, "key=value file with budget and workers");
}

void require_odd_prime(std::int64_t p)
{
  if (!is_odd_prime(p))
    throw UsageError("p must be a prime > 2, got " + std::to_string(p));
}

void write_output(std::string const &text, std::string const &path, std::ostream &out)
{
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text))
    throw UsageError("cannot write " + path);
}

struct Emitter
{
  std::ostream &err;

  void warnings(std::vector<std::string> const &lines) const
  {
    for (auto const &w : lines)
      err << "warning: " << w << '\n';
  }

  void notes(std::vector<std::string> const &lines) const
  {
    for (auto const &n : lines)
      err << "note: " << n << '\n';
  }
};

std::vector<ClassificationRecord> classify_range(std::int64_t p, GenusRange range,
                                                 bool witnesses, SearchOptions const &options,
                                                 Emitter const &emit)
{
  std::vector<ClassificationRecord> rows;
  for (std::int64_t g = range.from; g <= range.to; ++g) {
    auto c = classify_genus(p, g, witnesses, options);
    for (auto &w : c.warnings)
      w = "g = " + std::to_string(g) + ": " + w;
    emit.warnings(c.warnings);
    emit.notes(c.merges);
    rows.insert(rows.end(), std::make_move_iterator(c.records.begin()),
                std::make_move_iterator(c.records.end()));
  }
  return rows;
}

void print_verdict(ExistenceVerdict const &v, std::string const &name, std::ostream &out)
{
  out << name << ": " << (v.exists ? "exists" : "does not exist") << " (l1 = " << to_string(v.l1)
      << ", l2 = " << to_string(v.l2) << ", gcd(p, n/2) = " << v.gcd_pn2 << ")\n";
  for (auto const &c : v.reasons)
    out << "  [" << (c.passed ? "x" : " ") << "] " << c.name << '\n';
  if (!v.qualifying_r.empty()) {
    out << "  r in {";
    for (std::size_t i = 0; i < v.qualifying_r.size(); ++i)
      out << (i ? ", " : "") << v.qualifying_r[i];
    out << "}\n";
  }
  for (auto const &n : v.notes)
    out << "  note: " << n << '\n';
}

} // anonymous namespace

int run(int argc, char const *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Pseudo-real cyclic p-gonal Riemann surfaces: classification and verification",
               "pgonal"};
  app.require_subcommand(1);

  Settings settings;
  std::int64_t p = 0;
  std::string genus;
  std::string format = "csv";
  std::string out_path;
  bool witnesses = false;
  bool json_report = false;

  auto *classify = app.add_subcommand("classify", "Classification table for one genus");
  classify->add_option("--p", p, "Odd prime p")->required();
  classify->add_option("--genus", genus, "Genus g")->required();
  classify->add_flag("--witnesses", witnesses, "Attach a witness map to every row");
  classify->add_option("--format", format, "csv, json or markdown")
    ->check(CLI::IsMember({"csv", "json", "markdown"}));
  add_search_flags(classify, settings);

  auto *table = app.add_subcommand("table", "Classification tables over a genus range");
  table->add_option("--p", p, "Odd prime p")->required();
  table->add_option("--genus", genus, "Genus range A..B")->required();
  table->add_flag("--witnesses", witnesses, "Attach a witness map to every row");
  table->add_option("--format", format, "csv, json or markdown")
    ->check(CLI::IsMember({"csv", "json", "markdown"}));
  table->add_option("--out", out_path, "Output file");
  add_search_flags(table, settings);

  auto *verify = app.add_subcommand("verify", "Compare the existence predicates with search");
  verify->add_option("--p", p, "Odd prime p")->required();
  verify->add_option("--genus", genus, "Genus range A..B")->required();
  verify->add_flag("--json", json_report, "Print the full report as JSON");
  add_search_flags(verify, settings);

  std::string signature_text;
  std::string group_text;
  bool pseudo_real = false;
  std::optional<std::size_t> limit;
  auto *search = app.add_subcommand("search", "Enumerate surface-kernel maps");
  search->add_option("signature", signature_text, "NEC signature, e.g. \"(1;-;[3,3,2])\"")
    ->required();
  search->add_option("group", group_text, "Group, e.g. C12 or M(4,3,2)")->required();
  search->add_flag("--pseudo-real", pseudo_real, "Only pseudo-real maps");
  search->add_option("--limit", limit, "Print at most K maps");
  add_search_flags(search, settings);

  std::int64_t n = 0;
  auto *exists = app.add_subcommand("exists", "Evaluate the existence predicates");
  exists->add_option("--p", p, "Odd prime p")->required();
  exists->add_option("--n", n, "n, with |G| = n p")->required();
  exists->add_option("--genus", genus, "Genus g")->required();

  auto *max_order = app.add_subcommand("max-order", "Maximal group order for a genus");
  max_order->add_option("--p", p, "Odd prime p")->required();
  max_order->add_option("--genus", genus, "Genus g")->required();

  std::string family_text;
  auto *obstruction = app.add_subcommand("obstruction", "Extension of an l = 1 action");
  obstruction->add_option("--p", p, "Odd prime p")->required();
  obstruction->add_option("--n", n, "n, with |G| = n p")->required();
  obstruction->add_option("--family", family_text, "i or ii")->required();
  obstruction->add_option("--group", group_text, "C_np or M(n,p,r)")->required();
  add_search_flags(obstruction, settings);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }

  Emitter const emit{err};

  try {
    if (*classify || *table) {
      require_odd_prime(p);
      GenusRange const range = parse_genus_range(genus);
      if (*classify && range.from != range.to)
        throw UsageError("classify takes a single genus; use table for ranges");

      auto const rows =
        classify_range(p, range, witnesses, settings.resolve(), emit);
      write_output(render_table(rows, parse_table_format(format)), out_path, out);
      return exit_ok;
    }

    if (*verify) {
      require_odd_prime(p);
      GenusRange const range = parse_genus_range(genus);
      auto const report = cross_validate(p, range.from, range.to, settings.resolve());
      emit.notes(report.notes);

      if (json_report) {
        out << to_json(report).dump(2) << '\n';
      } else {
        std::size_t agree = 0;
        for (auto const &cell : report.cells) {
          if (!cell.oracle) {
            out << "BUDGET g=" << cell.g << " n=" << cell.n << ' ' << to_string(cell.group)
                << ": " << cell.certificate << '\n';
          } else if (cell.discrepancy()) {
            out << "DISCREPANCY g=" << cell.g << " n=" << cell.n << ' '
                << to_string(cell.group) << ": predicate "
                << (cell.predicate ? "exists" : "does not exist") << ", search "
                << (*cell.oracle ? "found" : "found none") << '\n';
            out << "  " << cell.certificate << '\n';
            if (cell.witness)
              out << "  witness " << to_json(*cell.witness).dump() << " q=" << *cell.witness_q
                  << '\n';
          } else {
            ++agree;
          }
        }
        out << "p=" << p << " genus " << range.from << ".." << range.to << ": "
            << report.cells.size() << " cells, " << agree << " agree, "
            << report.discrepancies() << " discrepancies"
            << (report.partial ? ", PARTIAL (budget exceeded)" : "") << '\n';
      }

      if (report.discrepancies() > 0)
        return exit_discrepancy;
      return report.partial ? exit_budget : exit_ok;
    }

    if (*search) {
      NecSignature const sig = parse_signature(signature_text);
      GroupSpec const group = parse_group(group_text);
      auto const maps = enumerate(sig, group, pseudo_real, settings.resolve());

      std::size_t const shown = std::min(maps.size(), limit.value_or(maps.size()));
      for (std::size_t i = 0; i < shown; ++i)
        out << to_json(maps[i]).dump() << '\n';
      out << "count: " << maps.size() << '\n';
      return exit_ok;
    }

    if (*exists) {
      require_odd_prime(p);
      GenusRange const range = parse_genus_range(genus);
      if (range.from != range.to)
        throw UsageError("exists takes a single genus");
      std::int64_t const g = range.from;
      if (n < 2 || n % 2 != 0)
        throw UsageError("n must be a positive even integer");

      print_verdict(exists_cyclic(p, n, g), "C_np", out);
      print_verdict(exists_semidirect_r1_pm1(p, n, g), "C_n x|_r C_p, r = 1 or p-1", out);
      print_verdict(exists_semidirect_general(p, n, g), "C_n x|_r C_p, 1 < r < p-1", out);
      if (auto w = hypothesis_warning(p, g))
        emit.warnings({*w});
      return exit_ok;
    }

    if (*max_order) {
      require_odd_prime(p);
      GenusRange const range = parse_genus_range(genus);
      if (range.from != range.to)
        throw UsageError("max-order takes a single genus");
      auto const m = pgonal::maximal_order(p, range.from);
      if (!m) {
        out << "null\n";
        return exit_ok;
      }
      out << to_json(*m).dump(2) << '\n';
      return exit_ok;
    }

    if (*obstruction) {
      require_odd_prime(p);
      auto const outcome =
        l1_obstruction(p, n, parse_family(family_text), parse_group(group_text),
                       settings.resolve());

      Json const j = to_json(outcome);
      out << j.dump(2) << '\n';
      return exit_ok;
    }
  } catch (BudgetExceeded const &e) {
    err << "error: " << e.what() << '\n';
    return exit_budget;
  } catch (Error const &e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  return exit_usage;
}

} // namespace pgonal::cli
