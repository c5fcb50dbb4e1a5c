#include "cli.hpp"

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "posetmine/apriori.hpp"
#include "posetmine/dataset.hpp"
#include "posetmine/dualize.hpp"
#include "posetmine/enumerate.hpp"
#include "posetmine/errors.hpp"
#include "posetmine/rules.hpp"

namespace pmine::cli {

namespace {

using json = nlohmann::json;

struct Config {
  std::string input;
  std::string schema;
  std::string out;
  std::string instance;
  std::string columns;
  std::optional<long long> threshold;
  std::optional<double> support;
  std::optional<double> confidence;
  std::optional<double> s1;
  std::optional<double> s2;
  std::optional<long long> k;
  bool negative = false;
  unsigned workers = 1;
  std::size_t cap_level_width = 0;
  std::size_t cap_depth = 100000;
  double precision = 1.0;
  long long pad = 1;
};

struct Summary {
  std::size_t lines = 0;
  unsigned max_level = 0;
};

TransactionDB load(const Config& cfg) {
  if (cfg.input.empty()) throw ConfigError("--input is required");
  TransactionDB db = load_dataset(cfg.input, cfg.schema);
  if (db.size() == 0) throw IngestError("dataset has no rows");
  if (cfg.negative) db = negative_encode(db);
  return db;
}

std::size_t frequency_threshold(const Config& cfg, std::size_t rows) {
  if (cfg.threshold.has_value() == cfg.support.has_value())
    throw ConfigError("give exactly one of --threshold and --support");
  if (cfg.threshold) {
    if (*cfg.threshold < 0) throw ConfigError("--threshold must be >= 0");
    return static_cast<std::size_t>(*cfg.threshold);
  }
  if (*cfg.support < 0 || *cfg.support > 1) throw ConfigError("--support must lie in [0,1]");
  return absolute_threshold(*cfg.support, rows);
}

RuleOptions rule_options(const Config& cfg) {
  RuleOptions o;
  o.apriori.workers = cfg.workers;
  o.apriori.max_level_width = cfg.cap_level_width;
  o.enumerate.dualize.max_depth = cfg.cap_depth;
  return o;
}

json element_json(const TransactionDB& db, const char* stream, const ElementVector& x, unsigned level,
                  std::size_t support) {
  return json{{"stream", stream}, {"level", level}, {"coords", db.describe(x)}, {"support", support}};
}

void emit(std::ostream& os, const json& j, Summary& s) {
  os << j.dump() << '\n';
  ++s.lines;
}

// Canonical order for element streams: level, then node ids.
void sort_elements(std::vector<LevelElement>& xs) {
  std::sort(xs.begin(), xs.end(), [](const LevelElement& a, const LevelElement& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.element < b.element;
  });
}

void cmd_levelwise(const Config& cfg, bool frequent, std::ostream& os, Summary& s) {
  const TransactionDB db = load(cfg);
  const std::size_t t = frequency_threshold(cfg, db.size());
  AprioriOptions o;
  o.workers = cfg.workers;
  o.max_level_width = cfg.cap_level_width;
  auto xs = frequent ? apriori_frequent(db, t, o) : apriori_infrequent(db, t, o);
  sort_elements(xs);
  for (const auto& e : xs) {
    if (!db.encodes_valid_intervals(e.element)) continue;
    emit(os, element_json(db, frequent ? "frequent" : "infrequent", e.element, e.level, e.support), s);
    s.max_level = std::max(s.max_level, e.level);
  }
}

void cmd_minimal_infrequent(const Config& cfg, std::ostream& os, Summary& s) {
  const TransactionDB db = load(cfg);
  const std::size_t t = frequency_threshold(cfg, db.size());
  EnumerateOptions o;
  o.dualize.max_depth = cfg.cap_depth;
  const Border border = generate_minimal_infrequent(db, t, o);
  auto stream = [&](const Antichain& xs, const char* name) {
    std::vector<LevelElement> es;
    for (const auto& x : xs)
      if (db.encodes_valid_intervals(x)) es.push_back({x, db.space().level(x), db.support_count(x)});
    sort_elements(es);
    for (const auto& e : es) {
      emit(os, element_json(db, name, e.element, e.level, e.support), s);
      s.max_level = std::max(s.max_level, e.level);
    }
  };
  stream(border.minimal_infrequent, "minimal_infrequent");
  stream(border.maximal_frequent, "maximal_frequent");
}

void emit_rules(const TransactionDB& db, const std::vector<Rule>& rules, std::ostream& os, Summary& s) {
  for (const auto& r : rules) {
    json j{{"antecedent", antecedent_terms(db, r)},
           {"consequent", consequent_terms(db, r)},
           {"support", r.support},
           {"confidence", r.confidence},
           {"x", db.describe(r.antecedent)},
           {"z", db.describe(r.consequent)},
           {"text", render_rule(db, r)}};
    emit(os, j, s);
    s.max_level = std::max(s.max_level, db.space().level(r.consequent));
  }
}

void require(const std::optional<double>& v, const char* flag) {
  if (!v) throw ConfigError(std::string(flag) + " is required");
}

void cmd_rules(const Config& cfg, bool generalized, std::ostream& os, Summary& s) {
  require(cfg.support, "--support");
  require(cfg.confidence, "--confidence");
  if (cfg.threshold) throw ConfigError("rules take --support, not --threshold");
  const TransactionDB db = load(cfg);
  const auto rules = generalized ? gen_generalized_rules(db, *cfg.confidence, *cfg.support, rule_options(cfg))
                                 : gen_rules(db, *cfg.confidence, *cfg.support, rule_options(cfg));
  emit_rules(db, rules, os, s);
}

void cmd_rare(const Config& cfg, std::ostream& os, Summary& s) {
  require(cfg.s1, "--s1");
  require(cfg.s2, "--s2");
  require(cfg.confidence, "--confidence");
  const TransactionDB db = load(cfg);
  const RareRuleConfig rc{*cfg.s1, *cfg.s2, *cfg.confidence};
  emit_rules(db, gen_rare_rules(db, rc, rule_options(cfg)), os, s);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

void cmd_kboxes(const Config& cfg, std::ostream& os, Summary& s) {
  if (!cfg.k || *cfg.k < 0) throw ConfigError("--k must be given and >= 0");
  if (cfg.input.empty()) throw ConfigError("--input is required");
  if (!(cfg.precision > 0)) throw ConfigError("--precision must be positive");
  std::ifstream in(cfg.input);
  if (!in) throw ConfigError("cannot open '" + cfg.input + "'");
  std::string line;
  if (!std::getline(in, line)) throw IngestError("missing header row");
  const auto header = split_csv_line(line);

  // Column scales come from the schema when one is given.
  std::map<std::string, ValueScale> scales;
  if (!cfg.schema.empty())
    for (const auto& c : Schema::load(cfg.schema).columns)
      if (c.kind == "quantitative") scales[c.name] = c.scale;
  std::vector<std::string> names = split(cfg.columns, ',');
  if (names.empty())
    for (std::size_t c = 0; c < header.size(); ++c)
      if (!(c == 0 && (header[c] == "ID" || header[c] == "TID"))) names.push_back(header[c]);
  std::vector<std::size_t> idx;
  std::vector<ValueScale> scale;
  for (const auto& n : names) {
    auto it = std::find(header.begin(), header.end(), n);
    if (it == header.end()) throw IngestError("no such column", 1, n);
    idx.push_back(static_cast<std::size_t>(it - header.begin()));
    scale.push_back(scales.count(n) ? scales[n] : ValueScale::number(cfg.precision));
  }

  std::vector<Point> points;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++row;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw IngestError("wrong number of cells", row, "");
    Point p;
    for (std::size_t c = 0; c < idx.size(); ++c) {
      const auto v = scale[c].parse(cells[idx[c]]);
      if (!v) throw IngestError("cannot parse '" + cells[idx[c]] + "'", row, names[c]);
      p.push_back(*v);
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) throw IngestError("dataset has no rows");

  EnumerateOptions o;
  o.dualize.max_depth = cfg.cap_depth;
  const BoundingBox box = default_bounding_box(points, cfg.pad);
  for (const auto& b : gen_maximal_kboxes(points, static_cast<std::size_t>(*cfg.k), box, o)) {
    std::vector<std::string> lo;
    std::vector<std::string> hi;
    for (std::size_t i = 0; i < b.lower.size(); ++i) {
      lo.push_back(scale[i].format(b.lower[i]));
      hi.push_back(scale[i].format(b.upper[i]));
    }
    emit(os, json{{"columns", names}, {"lower", lo}, {"upper", hi}, {"interior_count", b.interior_count}}, s);
  }
}

FactorPoset factor_from_json(const json& f) {
  const std::string kind = f.at("kind").get<std::string>();
  if (kind == "chain") return FactorPoset::chain(f.at("labels").get<std::vector<std::string>>());
  if (kind == "antichain")
    return FactorPoset::bottomed_antichain(f.value("bottom", "*"), f.at("atoms").get<std::vector<std::string>>());
  if (kind == "tree") {
    const auto labels = f.at("labels").get<std::vector<std::string>>();
    std::vector<std::optional<NodeId>> parent;
    for (const auto& p : f.at("parent")) {
      if (p.is_null()) parent.emplace_back();
      else parent.emplace_back(p.get<NodeId>());
    }
    return FactorPoset::tree(labels, parent);
  }
  if (kind == "taxonomy") {
    std::stringstream edges;
    for (const auto& e : f.at("edges")) edges << e.at(0).get<std::string>() << '\t' << e.at(1).get<std::string>() << '\n';
    return read_taxonomy(edges);
  }
  throw ConfigError("unknown factor kind '" + kind + "'");
}

void cmd_dualize(const Config& cfg, std::ostream& os, Summary& s) {
  if (cfg.instance.empty()) throw ConfigError("--instance is required");
  std::ifstream in(cfg.instance);
  if (!in) throw ConfigError("cannot open '" + cfg.instance + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IngestError(std::string("instance is not valid JSON: ") + e.what());
  }
  std::vector<FactorPoset> factors;
  Antichain A;
  Antichain B;
  try {
    for (const auto& f : j.at("factors")) factors.push_back(factor_from_json(f));
    auto parse = [&](const json& xs, Antichain& into) {
      for (const auto& x : xs) {
        const auto labels = x.get<std::vector<std::string>>();
        if (labels.size() != factors.size()) throw InvalidElement("element has wrong dimension");
        ElementVector e;
        for (std::size_t i = 0; i < labels.size(); ++i) {
          const auto v = factors[i].find(labels[i]);
          if (!v) throw InvalidElement("unknown label '" + labels[i] + "' in factor " + std::to_string(i));
          e.coords.push_back(*v);
        }
        into.push_back(std::move(e));
      }
    };
    parse(j.value("A", json::array()), A);
    parse(j.value("B", json::array()), B);
  } catch (const json::exception& e) {
    throw IngestError(std::string("malformed instance: ") + e.what());
  }
  const ProductPoset P(std::move(factors));
  DualizeOptions o;
  o.max_depth = cfg.cap_depth;
  const DualResult r = dual_check(P, A, B, o);
  json outj{{"dual", r.dual}};
  if (r.witness) outj["witness"] = P.labels(*r.witness);
  emit(os, outj, s);
}

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("--input", cfg.input, "CSV dataset");
  sub->add_option("--schema", cfg.schema, "JSON schema sidecar");
  sub->add_option("--out", cfg.out, "Write results here instead of stdout");
  sub->add_option("--workers", cfg.workers, "Threads for support counting")->check(CLI::Range(1u, 256u));
  sub->add_option("--cap-level-width", cfg.cap_level_width, "Largest level width (0 = unbounded)");
  sub->add_option("--cap-depth", cfg.cap_depth, "Largest duality recursion depth");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mining frequent and minimal infrequent elements in products of posets", "posetmine"};
  app.require_subcommand(1);
  Config cfg;

  auto* frequent = app.add_subcommand("frequent", "All elements with support >= t");
  auto* infrequent = app.add_subcommand("infrequent", "All elements with support < t");
  auto* minimal = app.add_subcommand("minimal-infrequent", "Minimal infrequent and maximal frequent elements");
  auto* rules = app.add_subcommand("rules", "Irredundant rules of a binary dataset");
  auto* generalized = app.add_subcommand("generalized-rules", "Irredundant rules over any attribute kinds");
  auto* rare = app.add_subcommand("rare-rules", "Confident rules among sets with support in [s1, s2]");
  auto* kboxes = app.add_subcommand("kboxes", "Maximal boxes holding at most k points");
  auto* dualize = app.add_subcommand("dualize", "Duality test for an antichain pair");

  for (auto* sub : {frequent, infrequent, minimal, rules, generalized, rare, kboxes, dualize}) add_common(sub, cfg);
  for (auto* sub : {frequent, infrequent, minimal}) {
    sub->add_option("--threshold", cfg.threshold, "Absolute support threshold t");
    sub->add_option("--support", cfg.support, "Support fraction s, t = ceil(s|D|)");
  }
  for (auto* sub : {frequent, infrequent, minimal, rules, generalized, rare})
    sub->add_flag("--negative", cfg.negative, "Encode absent items as negative literals");
  for (auto* sub : {rules, generalized}) {
    sub->add_option("--support", cfg.support, "Minimum rule support fraction");
    sub->add_option("--confidence", cfg.confidence, "Minimum rule confidence");
  }
  rare->add_option("--s1", cfg.s1, "Lower support fraction");
  rare->add_option("--s2", cfg.s2, "Upper support fraction");
  rare->add_option("--confidence", cfg.confidence, "Minimum rule confidence");
  kboxes->add_option("--k", cfg.k, "Largest number of interior points");
  kboxes->add_option("--columns", cfg.columns, "Comma-separated coordinate columns (default: all)");
  kboxes->add_option("--precision", cfg.precision, "Grid unit for columns without a schema");
  kboxes->add_option("--pad", cfg.pad, "Bounding box margin in grid units");
  dualize->add_option("--instance", cfg.instance, "JSON instance with factors, A and B");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return e.get_exit_code() == 0 ? ok : config_error;
  }

  std::ostringstream buffer;
  Summary summary;
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "frequent") cmd_levelwise(cfg, true, buffer, summary);
    else if (name == "infrequent") cmd_levelwise(cfg, false, buffer, summary);
    else if (name == "minimal-infrequent") cmd_minimal_infrequent(cfg, buffer, summary);
    else if (name == "rules") cmd_rules(cfg, false, buffer, summary);
    else if (name == "generalized-rules") cmd_rules(cfg, true, buffer, summary);
    else if (name == "rare-rules") cmd_rare(cfg, buffer, summary);
    else if (name == "kboxes") cmd_kboxes(cfg, buffer, summary);
    else cmd_dualize(cfg, buffer, summary);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return config_error;
  } catch (const ResourceExceeded& e) {
    err << "error: " << e.what() << '\n';
    return resource_error;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return internal_failure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return data_error;
  }

  if (cfg.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return config_error;
    }
    f << buffer.str();
  }
  err << name << ": " << summary.lines << " lines, max level " << summary.max_level << '\n';
  return ok;
}

}  // namespace pmine::cli
