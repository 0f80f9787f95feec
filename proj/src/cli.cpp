#include "cyclefrac/cli.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclefrac/cfkit.hpp"
#include "cyclefrac/families.hpp"
#include "cyclefrac/permstat.hpp"
#include "cyclefrac/polyring.hpp"
#include "cyclefrac/verifier.hpp"

namespace cyclefrac {

namespace {

// Raised for bad flag values found after CLI11 has accepted the syntax.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// --set name=value. `name` is a variable ("x1", "a[0,1]"), a family name
// covering all its subscripted variables ("a"), or "all" (every variable
// except lambda). The most specific match wins.
struct Assignments {
  std::map<std::string, Polynomial> exact;
  std::map<std::string, Polynomial> family;
  std::optional<Polynomial> all;

  static Assignments parse(const std::vector<std::string>& items) {
    Assignments a;
    for (const auto& item : items) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--set expects name=value, got '" + item + "'");
      const std::string name = item.substr(0, eq);
      Polynomial value;
      try {
        value = Polynomial::parse(item.substr(eq + 1));
      } catch (const std::exception& e) {
        throw UsageError("--set " + name + ": " + e.what());
      }
      if (name == "all") {
        a.all = value;
        continue;
      }
      VarId v = [&] {
        try {
          return VarId::parse(name);
        } catch (const std::exception& e) {
          throw UsageError("--set: " + std::string(e.what()));
        }
      }();
      if (v == lambda_var()) throw UsageError("set lambda with --lambda, not --set");
      a.exact[v.to_string()] = value;
      if (v.arity() == 0) a.family[name] = value;
    }
    return a;
  }

  bool empty() const { return exact.empty() && family.empty() && !all; }

  VarMap map() const {
    return [this](const VarId& v) -> std::optional<Polynomial> {
      if (v == lambda_var()) return std::nullopt;
      if (auto it = exact.find(v.to_string()); it != exact.end()) return it->second;
      if (auto it = family.find(std::string(v.family())); it != family.end()) return it->second;
      return all;
    };
  }
};

FamilyKind parse_family(const std::string& name) {
  auto k = family_kind_from_name(name);
  if (!k) throw UsageError("unknown family '" + name + "' (available: perm, dperm, cyclealt)");
  return *k;
}

LambdaValue parse_lambda(const std::string& text) {
  auto l = lambda_from_text(text);
  if (!l) throw UsageError("--lambda must be 1, -1 or lambda, got '" + text + "'");
  return *l;
}

Polynomial apply_lambda(const Polynomial& p, LambdaValue lambda) {
  if (lambda == LambdaValue::symbolic) return p;
  const Polynomial value(lambda == LambdaValue::plus_one ? 1 : -1);
  return substitute(p, keep_unmapped([value](const VarId& v) -> std::optional<Polynomial> {
                      if (v == lambda_var()) return value;
                      return std::nullopt;
                    }));
}

// ---------------------------------------------------------------- stats

nlohmann::json stats_json(const Permutation& p) {
  const auto data = analyze(p);
  const auto prof = profile(p, data);
  nlohmann::json j;
  j["permutation"] = p.to_string();
  j["cycles"] = p.cycle_string();
  j["n"] = p.size();
  nlohmann::json stats = nlohmann::json::object();
  for (Stat s : all_stats()) stats[std::string(stat_name(s))] = prof[s];
  j["stats"] = stats;
  j["lemma_1_1"] = check_lemma_1_1(p);
  j["inv_formula"] = check_inv_formula(p);
  j["indices"] = nlohmann::json::array();
  for (int i = 1; i <= p.size(); ++i) {
    const auto& d = data[static_cast<std::size_t>(i - 1)];
    j["indices"].push_back({{"i", i},
                            {"cycle", std::string(to_string(d.cycle))},
                            {"record", std::string(to_string(d.record))},
                            {"category", std::string(to_string(d.category))},
                            {"ucross", d.refined.ucross},
                            {"unest", d.refined.unest},
                            {"lcross", d.refined.lcross},
                            {"lnest", d.refined.lnest},
                            {"psnest", d.refined.psnest}});
  }
  return j;
}

int cmd_stats(const std::string& word, bool json, bool tsv, std::ostream& out) {
  Permutation p;
  try {
    p = Permutation::parse(word);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (json) {
    out << stats_json(p).dump(2) << '\n';
    return 0;
  }
  std::vector<std::pair<std::string, std::string>> rows = {
      {"permutation", p.to_string()}, {"cycles", p.cycle_string()}, {"n", std::to_string(p.size())}};
  const auto prof = profile(p);
  for (Stat s : all_stats()) rows.emplace_back(std::string(stat_name(s)), std::to_string(prof[s]));
  rows.emplace_back("lemma_1_1", check_lemma_1_1(p) ? "true" : "false");
  rows.emplace_back("inv_formula", check_inv_formula(p) ? "true" : "false");
  for (const auto& [k, v] : rows) {
    if (tsv) {
      out << k << '\t' << v << '\n';
    } else {
      out << k << std::string(k.size() < 16 ? 16 - k.size() : 1, ' ') << v << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::vector<std::string>& ids, bool all, int order, const std::string& mode_name,
               std::uint64_t seed, int trials, bool json, bool timing, const Caps& caps,
               std::ostream& out) {
  if (all == !ids.empty()) throw UsageError("give either --id or --all");
  std::optional<VerifyMode> mode;
  if (!mode_name.empty()) {
    mode = verify_mode_from_name(mode_name);
    if (!mode) throw UsageError("--mode must be symbolic, modular or predicate, got '" + mode_name + "'");
  }
  std::vector<std::string> targets = ids;
  if (all) {
    for (const auto& c : identities()) targets.push_back(c.id);
  }
  for (const auto& id : targets) identity(id);  // unknown ids fail before any work

  std::vector<VerifyReport> reports;
  for (const auto& id : targets) {
    const auto& c = identity(id);
    VerifyOptions o;
    o.order = order;
    o.seed = seed;
    o.trials = trials;
    o.caps = caps;
    // Under --all a series mode does not apply to predicates; they run as predicates.
    if (mode && !(all && c.is_predicate)) o.mode = mode;
    reports.push_back(verify(id, o));
  }
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;
  if (json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) {
      auto rj = r.to_json();
      if (!timing) rj.erase("millis");
      j.push_back(rj);
    }
    out << j.dump(2) << '\n';
  } else {
    if (!timing) {
      for (auto& r : reports) r.millis = 0;
    }
    out << report_table(reports);
  }
  return pass ? 0 : 1;
}

int cmd_list(bool json, std::ostream& out) {
  if (json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : identities()) {
      nlohmann::json e{{"id", c.id}, {"title", c.title}, {"kind", c.is_predicate ? "predicate" : "series"}};
      e["family"] = std::string(to_string(c.family));
      if (c.is_predicate) {
        e["default_order"] = c.max_predicate;
      } else {
        e["scheme"] = c.scheme;
        e["lambda"] = std::string(to_string(c.lambda));
        e["max_symbolic"] = c.max_symbolic;
        e["max_modular"] = c.max_modular;
      }
      j.push_back(e);
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  for (const auto& c : identities()) out << c.id << std::string(20 - c.id.size(), ' ') << c.title << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permutation statistics, generating polynomials and continued fractions with a weight per cycle"};
  app.name("cyclefrac");
  app.require_subcommand(1);
  int max_n = -1;
  app.add_option("--max-n", max_n, "Largest permutation size to enumerate (overrides CYCLEFRAC_MAX_N)")
      ->check(CLI::NonNegativeNumber);

  // stats
  auto* stats = app.add_subcommand("stats", "Statistics of one permutation");
  std::string word;
  bool stats_json_flag = false;
  bool stats_tsv = false;
  stats->add_option("permutation", word, "One-line word, e.g. 9,3,7,4,6,11,2,8,10,1,5")->required();
  auto* sj = stats->add_flag("--json", stats_json_flag, "JSON output");
  stats->add_flag("--tsv", stats_tsv, "Tab-separated output")->excludes(sj);

  // enumerate
  auto* enumerate_cmd = app.add_subcommand("enumerate", "List the members of a family");
  std::string family_name = "perm";
  int size = 0;
  bool count_only = false;
  enumerate_cmd->add_option("--family", family_name, "perm, dperm or cyclealt")->required();
  enumerate_cmd->add_option("--n", size, "Permutation size")->required()->check(CLI::NonNegativeNumber);
  enumerate_cmd->add_flag("--count", count_only, "Print only the number of members");

  // poly / series share scheme options
  std::string scheme_name;
  std::string lambda_text = "lambda";
  std::vector<std::string> sets;
  bool poly_json = false;
  int order = 0;
  auto* poly = app.add_subcommand("poly", "Generating polynomial of a family at one size");
  poly->add_option("--family", family_name, "perm, dperm or cyclealt")->required();
  poly->add_option("--scheme", scheme_name, "Weight scheme")->required();
  poly->add_option("--n", size, "Permutation size")->required()->check(CLI::NonNegativeNumber);
  poly->add_option("--lambda", lambda_text, "1, -1 or lambda (default)");
  poly->add_option("--set", sets, "Substitution name=value (variable, family or all)");
  poly->add_flag("--json", poly_json, "JSON output");

  auto* series = app.add_subcommand("series", "Ordinary generating function of a family through t^N");
  series->add_option("--family", family_name, "perm, dperm or cyclealt")->required();
  series->add_option("--scheme", scheme_name, "Weight scheme")->required();
  series->add_option("--order,--n", order, "Truncation order N")->required()->check(CLI::NonNegativeNumber);
  series->add_option("--lambda", lambda_text, "1, -1 or lambda (default)");
  series->add_option("--set", sets, "Substitution name=value (variable, family or all)");
  series->add_flag("--json", poly_json, "JSON output");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check registered identities");
  std::vector<std::string> ids;
  bool all = false;
  int verify_order = -1;
  std::string mode_name;
  std::uint64_t seed = 1;
  int trials = 3;
  bool verify_json = false;
  verify_cmd->add_option("--id", ids, "Identity id (repeatable)");
  verify_cmd->add_flag("--all", all, "Every registered identity");
  verify_cmd->add_option("--order", verify_order, "Highest order (default: the identity's default)")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--mode", mode_name, "symbolic, modular or predicate");
  verify_cmd->add_option("--seed", seed, "Seed of the modular assignments");
  verify_cmd->add_option("--trials", trials, "Random assignments per modular check")->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--json", verify_json, "JSON output");
  bool no_timing = false;
  verify_cmd->add_flag("--no-timing", no_timing, "Omit wall times so output is byte-stable");

  auto* list = app.add_subcommand("list-identities", "Registered identities");
  bool list_json = false;
  list->add_flag("--json", list_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Caps caps = Caps::from_env();
    if (max_n >= 0) caps = Caps{max_n, max_n};

    if (app.got_subcommand(stats)) return cmd_stats(word, stats_json_flag, stats_tsv, out);

    if (app.got_subcommand(enumerate_cmd)) {
      const Family f{parse_family(family_name), size};
      long long count = 0;
      for_each_member(
          f,
          [&](const Permutation& p) {
            ++count;
            if (!count_only) out << p.to_string() << '\n';
          },
          caps);
      if (count_only) out << count << '\n';
      return 0;
    }

    if (app.got_subcommand(poly) || app.got_subcommand(series)) {
      const FamilyKind kind = parse_family(family_name);
      const WeightScheme* s = nullptr;
      try {
        s = &scheme(scheme_name);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const LambdaValue lambda = parse_lambda(lambda_text);
      const Assignments assignments = Assignments::parse(sets);
      const VarMap sub = assignments.empty() ? VarMap{} : assignments.map();

      nlohmann::json j{{"family", std::string(to_string(kind))}, {"scheme", s->name},
                       {"lambda", std::string(to_string(lambda))}};
      if (app.got_subcommand(poly)) {
        Polynomial p = apply_lambda(generating_polynomial(Family{kind, size}, *s, caps), lambda);
        if (sub) p = substitute(p, keep_unmapped(sub));
        if (!poly_json) {
          out << p.to_string() << '\n';
          return 0;
        }
        j["n"] = size;
        j["polynomial"] = to_json(p);
        out << j.dump(2) << '\n';
        return 0;
      }
      const auto ser = series_of_family(kind, *s, lambda, order, sub, caps);
      if (!poly_json) {
        out << to_string(ser) << '\n';
        return 0;
      }
      j["order"] = order;
      j["text"] = to_string(ser);
      j["coefficients"] = nlohmann::json::array();
      for (const auto& c : ser.coeffs()) j["coefficients"].push_back(to_json(c));
      out << j.dump(2) << '\n';
      return 0;
    }

    if (app.got_subcommand(verify_cmd)) {
      return cmd_verify(ids, all, verify_order, mode_name, seed, trials, verify_json, !no_timing, caps, out);
    }
    if (app.got_subcommand(list)) return cmd_list(list_json, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnknownIdentity& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace cyclefrac
