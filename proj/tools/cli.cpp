#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fibkit/oracle.hpp"
#include "fibkit/report.hpp"
#include "fibkit/seq.hpp"
#include "fibkit/verify.hpp"

namespace fibkit::cli {

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Format { Human, Json, Csv };

verify::Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos)
    throw UsageError("range '" + text + "' must look like lo..hi");
  try {
    const verify::Range r{to_index(parse_decimal(text.substr(0, dots))), to_index(parse_decimal(text.substr(dots + 2)))};
    if (r.lo > r.hi)
      throw UsageError("range '" + text + "' is empty");
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError("range '" + text + "' must look like lo..hi");
  } catch (const std::out_of_range&) {
    throw UsageError("range '" + text + "' is out of bounds");
  }
}

seq::Seed parse_seed(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw UsageError("seed '" + text + "' must look like g0,g1");
  try {
    return {parse_decimal(text.substr(0, comma)), parse_decimal(text.substr(comma + 1))};
  } catch (const std::invalid_argument&) {
    throw UsageError("seed '" + text + "' must look like g0,g1");
  }
}

Format parse_format(const std::string& f) {
  if (f == "human")
    return Format::Human;
  if (f == "json")
    return Format::Json;
  if (f == "csv")
    return Format::Csv;
  throw UsageError("unknown format '" + f + "'");
}

dsl::Catalog active_catalog(const std::string& file) {
  if (!file.empty())
    return dsl::load_catalog_file(file);
  if (const char* env = std::getenv("FIBKIT_CATALOG"); env && *env)
    return dsl::load_catalog_file(env);
  return dsl::builtin_catalog();
}

std::vector<dsl::Identity> select(const dsl::Catalog& catalog, const std::vector<std::string>& ids, bool all,
                                  bool from_file) {
  if (all || (ids.empty() && from_file))
    return catalog.entries();
  if (ids.empty())
    throw UsageError("select identities with --id, --all or --file");
  std::vector<dsl::Identity> out;
  for (const auto& sel : ids) {
    if (const auto* id = catalog.find(sel)) {
      out.push_back(*id);
      continue;
    }
    const auto tagged = catalog.find_by_tag(sel);
    if (tagged.empty())
      throw UsageError("no identity named or tagged '" + sel + "'");
    for (const auto* id : tagged)
      out.push_back(*id);
  }
  return out;
}

void emit(const std::vector<verify::VerifyReport>& reports, Format format, bool timing, std::ostream& out) {
  switch (format) {
  case Format::Json:
    out << report::to_json(reports, timing).dump(2) << "\n";
    break;
  case Format::Csv:
    out << report::csv_header();
    for (const auto& r : reports)
      out << report::to_csv_rows(r);
    break;
  case Format::Human:
    for (const auto& r : reports)
      out << report::to_human(r);
    break;
  }
}

int status_of(const std::vector<verify::VerifyReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed())
      return kFail;
  return kPass;
}

/// Second opinion on every grid point: the oracle's values for both sides
/// must match the fast evaluator and each other.
verify::VerifyReport oracle_pass(const dsl::Identity& id, const verify::GridSpec& grid, int workers) {
  const auto window = oracle::index_range(id, grid).value_or(oracle::IndexWindow{0, 1});
  const oracle::Oracle reference(oracle::OracleConfig{window, grid.seeds});
  const verify::PointCheck check = [&](const verify::ParamPoint& pt) -> std::optional<verify::Failure> {
    BigInt l = reference.eval(id.lhs, pt);
    BigInt r = reference.eval(id.rhs, pt);
    if (l == r && l == verify::eval_side(id.lhs, pt) && r == verify::eval_side(id.rhs, pt))
      return std::nullopt;
    return verify::Failure{pt.values, pt.seed, std::move(l), std::move(r), {}};
  };
  return verify::run_grid_check(id, grid, verify::Mode::Grid, "oracle", check, workers);
}

struct GridOptions {
  std::string n = "0..4";
  std::string index = "-8..8";
  std::string m, p, q;
  std::vector<std::string> seeds;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "Rank range lo..hi for summation bounds")->capture_default_str();
    cmd->add_option("--index", index, "Range for parameters without their own flag")->capture_default_str();
    cmd->add_option("--m", m, "Range for m");
    cmd->add_option("--p", p, "Range for p");
    cmd->add_option("--q", q, "Range for q");
    cmd->add_option("--seeds", seeds, "Seeds g0,g1 (default 0,1 2,1 3,7 -4,5)");
  }

  verify::GridSpec build() const {
    verify::GridSpec g;
    g.rank = parse_range(n);
    g.index = parse_range(index);
    for (const auto& [name, text] : {std::pair{"m", &m}, std::pair{"p", &p}, std::pair{"q", &q}})
      if (!text->empty())
        g.overrides.emplace_back(name, parse_range(*text));
    if (seeds.empty())
      g.seeds = verify::GridSpec::standard_seeds();
    for (const auto& s : seeds)
      g.seeds.push_back(parse_seed(s));
    return g;
  }
};

int digits_of(const BigInt& v) {
  std::string s = to_decimal(v);
  return static_cast<int>(s.size()) - (s[0] == '-' ? 1 : 0);
}

/// F_n mod 10^64 by plain iteration; cheap even where full naive iteration is not.
BigInt naive_low_digits(Index n, const BigInt& modulus) {
  BigInt a = 0, b = 1;
  for (Index i = 0; i < n; ++i) {
    a += b;
    if (a >= modulus)
      a -= modulus;
    std::swap(a, b);
  }
  return a;
}

int cmd_bench(const std::vector<std::string>& ns, Index naive_limit, bool json, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  report::Json rows = report::Json::array();
  bool ok = true;
  BigInt modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), 10, 64);
  if (!json)
    out << "n\tdigits\texpected\tdoubling_ms\tnaive_ms\tlow64\n";
  for (const auto& text : ns) {
    Index n;
    try {
      n = to_index(parse_decimal(text));
    } catch (const std::exception&) {
      throw UsageError("bench index '" + text + "' is not an integer");
    }
    if (n < 0)
      throw UsageError("bench index must be >= 0");
    auto t0 = clock::now();
    const BigInt fast = seq::fib_pair_doubling(n).first;
    const double fast_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    const int digits = digits_of(fast);
    // Display-only estimate: floor(n log10 phi) + 1.
    const int expected = n == 0 ? 1 : static_cast<int>(std::floor(n * std::log10((1.0 + std::sqrt(5.0)) / 2.0))) + 1;
    const bool digits_ok = std::abs(digits - expected) <= 1;

    std::optional<double> naive_ms;
    bool naive_ok = true;
    if (n <= naive_limit) {
      t0 = clock::now();
      const BigInt slow = seq::fib_naive(n);
      naive_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      naive_ok = slow == fast;
    }
    const BigInt fast_low = fast % modulus;
    const bool low_ok = naive_low_digits(n, modulus) == fast_low;
    ok = ok && digits_ok && naive_ok && low_ok;

    if (json) {
      report::Json row;
      row["n"] = n;
      row["digits"] = digits;
      row["expected_digits"] = expected;
      row["doubling_ms"] = fast_ms;
      row["naive_ms"] = naive_ms ? report::Json(*naive_ms) : report::Json(nullptr);
      row["naive_agrees"] = naive_ms ? report::Json(naive_ok) : report::Json(nullptr);
      row["low64_agrees"] = low_ok;
      rows.push_back(std::move(row));
    } else {
      std::ostringstream line;
      line << n << "\t" << digits << "\t" << expected << "\t" << fast_ms << "\t"
           << (naive_ms ? std::to_string(*naive_ms) + (naive_ok ? "" : " MISMATCH") : "skipped") << "\t"
           << (low_ok ? "ok" : "MISMATCH") << "\n";
      out << line.str();
    }
  }
  if (json)
    out << rows.dump(2) << "\n";
  return ok ? kPass : kFail;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Fibonacci-family arithmetic and identity verification", "fibkit"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Print F_n, L_n or G_n exactly");
  std::string seq_name, eval_index, eval_seed;
  eval->add_option("seq", seq_name, "F, L or G")->required();
  eval->add_option("n", eval_index, "Index (may be negative)")->required();
  eval->add_option("--seed", eval_seed, "Seed g0,g1 (required for G)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check identities on a parameter grid");
  std::vector<std::string> ids;
  bool all = false, use_oracle = false, no_timing = false, expansions = false;
  std::string file, format_text = "human";
  int workers = 0;
  GridOptions grid_opts;
  verify_cmd->add_option("--id", ids, "Identity names or source tags");
  verify_cmd->add_flag("--all", all, "Every catalog identity");
  verify_cmd->add_option("--file", file, "Catalog file to read instead of the built-in one");
  verify_cmd->add_option("--format", format_text, "human, json or csv")->capture_default_str();
  verify_cmd->add_option("--workers", workers, "Worker threads (0 = all cores)")->capture_default_str();
  verify_cmd->add_flag("--oracle", use_oracle, "Double-check every point with the brute-force oracle");
  verify_cmd->add_flag("--expansions", expansions, "Also compare expanded entries with their parents");
  verify_cmd->add_flag("--no-timing", no_timing, "Write elapsed_ms as null so output is reproducible");
  grid_opts.attach(verify_cmd);

  // recurrence
  auto* rec_cmd = app.add_subcommand("recurrence", "Check the rank recurrence S(n) = W(m+q)S(n-1) - W(m)S'(n-1)");
  std::vector<std::string> rec_ids;
  std::string rec_side = "both", rec_weights;
  GridOptions rec_grid;
  rec_grid.n = "1..4";
  rec_grid.index = "-5..5";
  std::string rec_format = "human";
  bool rec_no_timing = false;
  rec_cmd->add_option("--id", rec_ids, "Identity names (parameters n m p q)")->required();
  rec_cmd->add_option("--side", rec_side, "lhs, rhs or both")->capture_default_str();
  rec_cmd->add_option("--weights", rec_weights, "F or L (default: L if the left side uses L, else F)");
  rec_cmd->add_option("--format", rec_format, "human, json or csv")->capture_default_str();
  rec_cmd->add_option("--workers", workers, "Worker threads (0 = all cores)");
  rec_cmd->add_flag("--no-timing", rec_no_timing, "Write elapsed_ms as null");
  rec_grid.attach(rec_cmd);

  // prove
  auto* prove = app.add_subcommand("prove", "Prove identities for all integer parameters at fixed ranks");
  std::vector<std::string> prove_ids;
  std::vector<Index> prove_ranks;
  bool prove_all = false, prove_no_timing = false;
  std::string prove_file, prove_format = "human";
  prove->add_option("--id", prove_ids, "Identity names or source tags");
  prove->add_flag("--all", prove_all, "Every catalog identity");
  prove->add_option("--file", prove_file, "Catalog file to read instead of the built-in one");
  prove->add_option("--n", prove_ranks, "Rank values for summation identities (default 1 2 3 4)");
  prove->add_option("--format", prove_format, "human, json or csv")->capture_default_str();
  prove->add_flag("--no-timing", prove_no_timing, "Write elapsed_ms as null");

  // catalog
  auto* catalog_cmd = app.add_subcommand("catalog", "List catalog identities");
  bool print_stanzas = false;
  std::string catalog_file;
  catalog_cmd->add_flag("--print", print_stanzas, "Print the canonical catalog text");
  catalog_cmd->add_option("--file", catalog_file, "Catalog file to read instead of the built-in one");

  // bench
  auto* bench = app.add_subcommand("bench", "Time fast doubling against naive iteration");
  std::vector<std::string> bench_ns;
  Index naive_limit = 200000;
  bool bench_json = false;
  bench->add_option("n", bench_ns, "Indices")->required();
  bench->add_option("--naive-limit", naive_limit, "Skip full naive iteration above this index")->capture_default_str();
  bench->add_flag("--json", bench_json, "JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    const auto* active = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    if (e.get_exit_code() == 0) {
      out << active->help();
      return kPass;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (eval->parsed()) {
      Index n;
      try {
        n = to_index(parse_decimal(eval_index));
      } catch (const std::exception&) {
        throw UsageError("index '" + eval_index + "' is not an integer");
      }
      if (seq_name != "G" && !eval_seed.empty())
        throw UsageError("--seed only applies to G");
      if (seq_name == "F") {
        out << to_decimal(seq::fib(n)) << "\n";
      } else if (seq_name == "L") {
        out << to_decimal(seq::lucas(n)) << "\n";
      } else if (seq_name == "G") {
        if (eval_seed.empty())
          throw UsageError("G needs --seed g0,g1");
        out << to_decimal(seq::gen(parse_seed(eval_seed), n)) << "\n";
      } else {
        throw UsageError("sequence must be F, L or G");
      }
      return kPass;
    }

    if (verify_cmd->parsed()) {
      const Format format = parse_format(format_text);
      const auto catalog = active_catalog(file);
      const auto selected = select(catalog, ids, all, !file.empty());
      const auto grid = grid_opts.build();
      std::vector<verify::VerifyReport> reports;
      for (const auto& id : selected) {
        grid.validate(id);
        reports.push_back(verify::verify_grid(id, grid, workers));
        if (use_oracle)
          reports.push_back(oracle_pass(id, grid, workers));
        if (expansions && id.expands) {
          const auto* parent = catalog.find(id.expands->parent);
          if (!parent)
            throw UsageError(id.name + " expands unknown identity " + id.expands->parent);
          reports.push_back(verify::check_expansion(id, *parent, grid, workers));
        }
      }
      emit(reports, format, !no_timing, out);
      return status_of(reports);
    }

    if (rec_cmd->parsed()) {
      const Format format = parse_format(rec_format);
      const auto catalog = active_catalog("");
      const auto selected = select(catalog, rec_ids, false, false);
      const auto grid = rec_grid.build();
      std::vector<dsl::Side> sides;
      if (rec_side == "lhs" || rec_side == "both")
        sides.push_back(dsl::Side::Lhs);
      if (rec_side == "rhs" || rec_side == "both")
        sides.push_back(dsl::Side::Rhs);
      if (sides.empty())
        throw UsageError("--side must be lhs, rhs or both");
      std::vector<verify::VerifyReport> reports;
      for (const auto& id : selected) {
        verify::Weights w;
        if (rec_weights.empty())
          w = dsl::print(id.lhs).find("L(") != std::string::npos
                  ? verify::Weights::Lucas
                  : verify::Weights::Fibonacci;
        else if (rec_weights == "F")
          w = verify::Weights::Fibonacci;
        else if (rec_weights == "L")
          w = verify::Weights::Lucas;
        else
          throw UsageError("--weights must be F or L");
        for (auto side : sides)
          reports.push_back(verify::check_recurrence(id, side, w, grid, workers));
      }
      emit(reports, format, !rec_no_timing, out);
      return status_of(reports);
    }

    if (prove->parsed()) {
      const Format format = parse_format(prove_format);
      const auto catalog = active_catalog(prove_file);
      const auto selected = select(catalog, prove_ids, prove_all, !prove_file.empty());
      if (prove_ranks.empty())
        prove_ranks = {1, 2, 3, 4};
      std::vector<verify::VerifyReport> reports;
      for (const auto& id : selected) {
        if (dsl::rank_params(id).empty()) {
          reports.push_back(verify::prove_symbolic(id));
          continue;
        }
        for (Index n : prove_ranks)
          reports.push_back(verify::prove_symbolic(id, n));
      }
      emit(reports, format, !prove_no_timing, out);
      return status_of(reports);
    }

    if (catalog_cmd->parsed()) {
      const auto catalog = active_catalog(catalog_file);
      if (print_stanzas) {
        out << dsl::print_catalog(catalog);
        return kPass;
      }
      for (const auto& id : catalog.entries()) {
        out << id.name << "\t" << id.paper_tag << "\t";
        for (std::size_t i = 0; i < id.params.size(); ++i)
          out << (i ? " " : "") << id.params[i];
        out << "\t" << dsl::pretty_print(id) << "\n";
      }
      return kPass;
    }

    if (bench->parsed())
      return cmd_bench(bench_ns, naive_limit, bench_json, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const dsl::SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const dsl::UnboundSymbolError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const dsl::CatalogError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const verify::SymbolicError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

} // namespace fibkit::cli
