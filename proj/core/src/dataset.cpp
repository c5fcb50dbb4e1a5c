#include "posetmine/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "posetmine/errors.hpp"

namespace pmine {

const char* to_string(AttributeKind kind) noexcept {
  switch (kind) {
    case AttributeKind::binary: return "binary";
    case AttributeKind::categorical: return "categorical";
    case AttributeKind::chain: return "chain";
    case AttributeKind::taxonomy: return "taxonomy";
    case AttributeKind::quantitative: return "quantitative";
    case AttributeKind::interval: return "interval";
    case AttributeKind::signed_item: return "signed";
  }
  return "?";
}

TransactionDB::TransactionDB(ProductPoset space, std::vector<ElementVector> rows, std::vector<Attribute> attributes)
    : space_(std::move(space)), rows_(std::move(rows)), attributes_(std::move(attributes)) {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != space_.dimension())
      throw InvalidElement("row " + std::to_string(r + 1) + " has " + std::to_string(rows_[r].size()) +
                           " coordinates, space has " + std::to_string(space_.dimension()));
    space_.check(rows_[r]);
  }
  if (attributes_.empty()) {
    for (std::size_t i = 0; i < space_.dimension(); ++i) {
      Attribute a;
      a.name = "x" + std::to_string(i + 1);
      a.kind = AttributeKind::chain;
      a.first_factor = i;
      attributes_.push_back(std::move(a));
    }
  }
  build_masks();
}

void TransactionDB::build_masks() {
  const std::size_t n = space_.dimension();
  const std::size_t m = rows_.size();
  at_least_.assign(n, {});
  equal_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = space_.factor(i);
    at_least_[i].assign(f.size(), Bitset(m));
    equal_[i].assign(f.size(), Bitset(m));
    for (std::size_t r = 0; r < m; ++r) {
      const NodeId c = rows_[r][i];
      equal_[i][c].set(r);
      f.down_set(c).for_each([&](std::size_t v) { at_least_[i][v].set(r); });
    }
  }
}

Bitset TransactionDB::mask_and(const ElementVector& p, bool strict_every_coordinate) const {
  space_.check(p);
  Bitset acc(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) acc.set(r);
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc &= at_least_[i][p[i]];
    if (strict_every_coordinate) acc.subtract(equal_[i][p[i]]);
  }
  return acc;
}

Bitset TransactionDB::support_mask(const ElementVector& p) const { return mask_and(p, false); }

SupportQueryResult TransactionDB::support(const ElementVector& p, bool with_witnesses) const {
  const Bitset m = mask_and(p, false);
  SupportQueryResult out;
  out.count = m.count();
  if (with_witnesses) m.for_each([&](std::size_t r) { out.witnesses.push_back(r); });
  return out;
}

std::size_t TransactionDB::support_count(const ElementVector& p) const {
  if (p.size() != space_.dimension()) throw InvalidElement("element has wrong dimension");
  if (p.size() == 0) return rows_.size();
  if (p.size() == 1) {
    space_.check(p);
    return at_least_[0][p[0]].count();
  }
  return mask_and(p, false).count();
}

std::vector<std::size_t> TransactionDB::support_counts(std::span<const ElementVector> batch, unsigned workers) const {
  std::vector<std::size_t> out(batch.size());
  const std::size_t w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(batch.size() / 64 + 1)));
  if (w <= 1) {
    for (std::size_t k = 0; k < batch.size(); ++k) out[k] = support_count(batch[k]);
    return out;
  }
  // Each thread writes a disjoint slice, so the result does not depend on scheduling.
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(w);
  const std::size_t chunk = (batch.size() + w - 1) / w;
  for (std::size_t t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t k = t * chunk; k < std::min(batch.size(), (t + 1) * chunk); ++k)
          out[k] = support_count(batch[k]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

SupportQueryResult TransactionDB::strict_support(const ElementVector& p, bool with_witnesses) const {
  Bitset m = mask_and(p, false);
  Bitset eq(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) eq.set(r);
  for (std::size_t i = 0; i < p.size(); ++i) eq &= equal_[i][p[i]];
  m.subtract(eq);
  SupportQueryResult out;
  out.count = m.count();
  if (with_witnesses) m.for_each([&](std::size_t r) { out.witnesses.push_back(r); });
  return out;
}

std::size_t TransactionDB::interior_support(const ElementVector& p) const { return mask_and(p, true).count(); }

std::size_t TransactionDB::multiplicity(const ElementVector& p) const {
  space_.check(p);
  return static_cast<std::size_t>(std::count(rows_.begin(), rows_.end(), p));
}

TransactionDB TransactionDB::subset(const Bitset& keep) const {
  std::vector<ElementVector> rows;
  keep.for_each([&](std::size_t r) {
    if (r < rows_.size()) rows.push_back(rows_[r]);
  });
  return TransactionDB(space_, std::move(rows), attributes_);
}

std::vector<std::string> TransactionDB::describe(const ElementVector& x) const {
  space_.check(x);
  std::vector<std::string> out;
  for (const auto& a : attributes_) {
    if (a.kind == AttributeKind::quantitative) {
      const auto& q = *a.quantitative;
      const NodeId l = x[a.first_factor];
      const NodeId r = x[a.first_factor + 1];
      if (auto iv = q.decode(l, r))
        out.push_back("[" + q.scale().format(iv->lo) + "," + q.scale().format(iv->hi) + "]");
      else
        out.push_back("(" + q.scale().format(q.left_value(l)) + ">" + q.scale().format(q.right_value(r)) + ")");
      continue;
    }
    out.push_back(space_.factor(a.first_factor).label(x[a.first_factor]));
  }
  return out;
}

bool TransactionDB::encodes_valid_intervals(const ElementVector& x) const {
  for (const auto& a : attributes_)
    if (a.kind == AttributeKind::quantitative && !a.quantitative->decode(x[a.first_factor], x[a.first_factor + 1]))
      return false;
  return true;
}

std::size_t absolute_threshold(double fraction, std::size_t rows) {
  if (!(fraction >= 0.0) || !std::isfinite(fraction)) throw ConfigError("support fraction must be a finite value >= 0");
  const double t = std::ceil(fraction * static_cast<double>(rows) - 1e-9);
  return static_cast<std::size_t>(std::max(0.0, t));
}

// ---------------------------------------------------------------------------

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (quoted) throw IngestError("unterminated quote");
  cells.push_back(std::move(cur));
  for (auto& c : cells) {
    const auto b = c.find_first_not_of(" \t");
    const auto e = c.find_last_not_of(" \t");
    c = b == std::string::npos ? std::string{} : c.substr(b, e - b + 1);
  }
  return cells;
}

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
};

Table read_table(std::istream& in) {
  Table t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> cells;
    try {
      cells = split_csv_line(line);
    } catch (const IngestError& e) {
      throw IngestError(e.what(), lineno, "");
    }
    if (t.header.empty()) {
      t.header = std::move(cells);
      std::set<std::string> seen;
      for (const auto& h : t.header) {
        if (h.empty()) throw IngestError("empty column name in header", 1, "");
        if (!seen.insert(h).second) throw IngestError("duplicate column name", 1, h);
      }
      continue;
    }
    if (cells.size() != t.header.size())
      throw IngestError("expected " + std::to_string(t.header.size()) + " cells, got " + std::to_string(cells.size()),
                        t.cells.size() + 1, "");
    t.cells.push_back(std::move(cells));
  }
  if (t.header.empty()) throw IngestError("missing header row");
  return t;
}

bool is_id_column(const std::string& name) {
  std::string up;
  for (char c : name) up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return up == "TID" || up == "ID";
}

bool is_absent(const std::string& cell) { return cell.empty() || cell == "-"; }

std::optional<Interval> parse_interval_cell(const std::string& cell, const ValueScale& scale, std::size_t row,
                                            const std::string& column) {
  if (is_absent(cell)) return std::nullopt;
  // Split at the first '-' after position 0 so that negative numbers survive.
  const auto dash = cell.find('-', 1);
  std::string lo_text = cell;
  std::string hi_text = cell;
  if (dash != std::string::npos) {
    lo_text = cell.substr(0, dash);
    hi_text = cell.substr(dash + 1);
  }
  const auto lo = scale.parse(lo_text);
  const auto hi = scale.parse(hi_text);
  if (!lo || !hi) throw IngestError("malformed interval '" + cell + "'", row, column);
  if (*lo > *hi) throw IngestError("interval start after end in '" + cell + "'", row, column);
  return Interval{*lo, *hi};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

FactorPoset read_taxonomy(std::istream& in) {
  std::vector<std::string> labels;
  std::map<std::string, NodeId> id;
  std::vector<std::pair<NodeId, NodeId>> edges;  // (child, parent)
  auto intern = [&](const std::string& s) {
    auto [it, fresh] = id.emplace(s, static_cast<NodeId>(labels.size()));
    if (fresh) labels.push_back(s);
    return it->second;
  };
  intern("Item");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw IngestError("taxonomy line needs child<TAB>parent", lineno, "");
    const std::string child = line.substr(0, tab);
    const std::string parent = line.substr(tab + 1);
    if (child.empty() || parent.empty()) throw IngestError("empty taxonomy label", lineno, "");
    if (child == "Item") throw IngestError("'Item' is reserved for the taxonomy bottom", lineno, "");
    const NodeId c = intern(child);
    const NodeId p = intern(parent);
    edges.emplace_back(c, p);
  }
  std::vector<std::optional<NodeId>> parent(labels.size());
  for (auto [c, p] : edges) {
    if (parent[c] && *parent[c] != p) throw InvalidPoset("taxonomy node '" + labels[c] + "' has two parents");
    parent[c] = p;
  }
  for (NodeId v = 1; v < labels.size(); ++v)
    if (!parent[v]) parent[v] = 0;  // roots hang below the synthetic bottom
  return FactorPoset::tree(std::move(labels), parent);
}

FactorPoset read_chain(std::istream& in) {
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    labels.push_back(line);
  }
  if (labels.empty()) throw InvalidPoset("chain file is empty");
  return FactorPoset::chain(std::move(labels));
}

Schema Schema::from_json(std::istream& in, const std::string& base_dir) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("schema is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("columns") || !j["columns"].is_array())
    throw ConfigError("schema needs a \"columns\" array");
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? p : (std::filesystem::path(base_dir) / path).string();
  };
  Schema s;
  for (const auto& c : j["columns"]) {
    ColumnSpec spec;
    try {
      spec.name = c.at("name").get<std::string>();
      spec.kind = c.at("kind").get<std::string>();
      if (spec.kind == "taxonomy") spec.taxonomy_path = resolve(c.at("taxonomy").get<std::string>());
      if (spec.kind == "chain") {
        if (c.contains("levels")) spec.chain_levels = c["levels"].get<std::vector<std::string>>();
        else spec.chain_path = resolve(c.at("chain").get<std::string>());
      }
      if (spec.kind == "quantitative" || spec.kind == "interval") {
        const std::string format = c.value("format", spec.kind == "interval" ? "clock" : "number");
        const double precision = c.value("precision", 1.0);
        if (!(precision > 0)) throw ConfigError("column '" + spec.name + "': precision must be positive");
        if (format == "clock") spec.scale = ValueScale::clock_minutes(precision);
        else if (format == "number") spec.scale = ValueScale::number(precision);
        else throw ConfigError("column '" + spec.name + "': unknown format '" + format + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("schema column: ") + e.what());
    }
    static const std::set<std::string> kinds{"id",       "binary",       "categorical", "chain",
                                             "taxonomy", "quantitative", "interval"};
    if (!kinds.count(spec.kind)) throw ConfigError("column '" + spec.name + "': unknown kind '" + spec.kind + "'");
    s.columns.push_back(std::move(spec));
  }
  return s;
}

Schema Schema::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open schema '" + path + "'");
  return from_json(f, std::filesystem::path(path).parent_path().string());
}

TransactionDB ingest(std::istream& csv, const Schema& schema) {
  const Table t = read_table(csv);
  std::map<std::string, const ColumnSpec*> spec_of;
  for (const auto& c : schema.columns) {
    if (!spec_of.emplace(c.name, &c).second) throw ConfigError("schema declares column '" + c.name + "' twice");
  }
  for (const auto& h : t.header)
    if (!spec_of.count(h)) throw IngestError("column not declared in schema", 1, h);
  for (const auto& c : schema.columns)
    if (std::find(t.header.begin(), t.header.end(), c.name) == t.header.end())
      throw IngestError("declared column missing from data", 1, c.name);

  const std::size_t m = t.cells.size();
  std::vector<FactorPoset> factors;
  std::vector<Attribute> attrs;
  std::vector<std::vector<NodeId>> columns;  // one per factor

  for (std::size_t col = 0; col < t.header.size(); ++col) {
    const ColumnSpec& spec = *spec_of.at(t.header[col]);
    const std::string& name = spec.name;
    auto cell = [&](std::size_t r) -> const std::string& { return t.cells[r][col]; };
    if (spec.kind == "id") continue;

    Attribute a;
    a.name = name;
    a.first_factor = factors.size();
    std::vector<NodeId> coord(m);

    if (spec.kind == "binary") {
      a.kind = AttributeKind::binary;
      for (std::size_t r = 0; r < m; ++r) {
        if (cell(r) == "1") coord[r] = 1;
        else if (cell(r) == "0" || cell(r).empty()) coord[r] = 0;
        else throw IngestError("binary cell must be 0 or 1, got '" + cell(r) + "'", r + 1, name);
      }
      factors.push_back(FactorPoset::chain({"0", "1"}));
    } else if (spec.kind == "categorical") {
      a.kind = AttributeKind::categorical;
      std::set<std::string> values;
      for (std::size_t r = 0; r < m; ++r)
        if (!is_absent(cell(r))) values.insert(cell(r));
      if (values.count("*")) throw IngestError("'*' is reserved for the categorical bottom", 0, name);
      std::vector<std::string> atoms(values.begin(), values.end());
      auto f = FactorPoset::bottomed_antichain("*", atoms);
      for (std::size_t r = 0; r < m; ++r) coord[r] = is_absent(cell(r)) ? f.bottom() : *f.find(cell(r));
      factors.push_back(std::move(f));
    } else if (spec.kind == "chain" || spec.kind == "taxonomy") {
      FactorPoset f;
      if (spec.kind == "chain") {
        a.kind = AttributeKind::chain;
        if (!spec.chain_levels.empty()) {
          f = FactorPoset::chain(spec.chain_levels);
        } else {
          std::istringstream in(read_file(spec.chain_path));
          f = read_chain(in);
        }
      } else {
        a.kind = AttributeKind::taxonomy;
        std::istringstream in(read_file(spec.taxonomy_path));
        f = read_taxonomy(in);
      }
      for (std::size_t r = 0; r < m; ++r) {
        if (spec.kind == "taxonomy" && is_absent(cell(r))) {
          coord[r] = f.bottom();
          continue;
        }
        const auto v = f.find(cell(r));
        if (!v) throw IngestError("unknown label '" + cell(r) + "'", r + 1, name);
        coord[r] = *v;
      }
      factors.push_back(std::move(f));
    } else if (spec.kind == "quantitative") {
      a.kind = AttributeKind::quantitative;
      std::vector<std::int64_t> vals(m);
      for (std::size_t r = 0; r < m; ++r) {
        const auto v = spec.scale.parse(cell(r));
        if (!v) throw IngestError("cannot parse '" + cell(r) + "' at the declared precision", r + 1, name);
        vals[r] = *v;
      }
      if (m == 0) throw IngestError("quantitative column has no values", 0, name);
      auto q = std::make_shared<const QuantitativeSemilattice>(vals, spec.scale);
      std::vector<NodeId> right(m);
      for (std::size_t r = 0; r < m; ++r) {
        const auto idx = *q->index_of(vals[r]);
        coord[r] = q->left_node(idx);
        right[r] = q->right_node(idx);
      }
      factors.push_back(q->left_chain());
      factors.push_back(q->right_chain());
      a.factor_count = 2;
      a.quantitative = std::move(q);
      columns.push_back(std::move(coord));
      columns.push_back(std::move(right));
      attrs.push_back(std::move(a));
      continue;
    } else if (spec.kind == "interval") {
      a.kind = AttributeKind::interval;
      std::vector<std::optional<Interval>> parsed(m);
      bool any_absent = false;
      for (std::size_t r = 0; r < m; ++r) {
        parsed[r] = parse_interval_cell(cell(r), spec.scale, r + 1, name);
        any_absent = any_absent || !parsed[r];
      }
      IntervalSet gens = elementary_intervals(parsed);
      for (const auto& p : parsed)
        if (p) gens.push_back(*p);
      auto lat = std::make_shared<const IntervalLattice>(build_lattice(gens, spec.scale, any_absent));
      for (std::size_t r = 0; r < m; ++r)
        coord[r] = parsed[r] ? *lat->node_of(*parsed[r]) : lat->poset.bottom();
      factors.push_back(lat->poset);
      a.intervals = std::move(lat);
    }
    columns.push_back(std::move(coord));
    attrs.push_back(std::move(a));
  }

  std::vector<ElementVector> rows(m);
  for (std::size_t r = 0; r < m; ++r) {
    rows[r].coords.resize(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) rows[r][i] = columns[i][r];
  }
  return TransactionDB(ProductPoset(std::move(factors)), std::move(rows), std::move(attrs));
}

namespace {

Schema schema_for_header(std::istream& csv, std::string& buffered, const std::string& kind) {
  std::string header;
  if (!std::getline(csv, header)) throw IngestError("missing header row");
  std::stringstream rest;
  rest << csv.rdbuf();
  buffered = header + "\n" + rest.str();
  Schema s;
  const auto names = split_csv_line(header);
  for (std::size_t c = 0; c < names.size(); ++c) {
    ColumnSpec spec;
    spec.name = names[c];
    spec.kind = (c == 0 && is_id_column(names[c])) ? "id" : kind;
    if (kind == "interval") spec.scale = ValueScale::clock_minutes();
    s.columns.push_back(std::move(spec));
  }
  return s;
}

}  // namespace

TransactionDB ingest_binary(std::istream& csv) {
  std::string buffered;
  Schema s = schema_for_header(csv, buffered, "binary");
  std::istringstream in(buffered);
  return ingest(in, s);
}

TransactionDB ingest_intervals(std::istream& csv, ValueScale scale) {
  std::string buffered;
  Schema s = schema_for_header(csv, buffered, "interval");
  for (auto& c : s.columns) c.scale = scale;
  std::istringstream in(buffered);
  return ingest(in, s);
}

TransactionDB ingest_taxonomy(std::istream& csv,
                              const std::vector<std::pair<std::string, std::string>>& taxonomy_files) {
  std::string buffered;
  Schema s = schema_for_header(csv, buffered, "taxonomy");
  for (auto& c : s.columns) {
    if (c.kind == "id") continue;
    auto it = std::find_if(taxonomy_files.begin(), taxonomy_files.end(),
                           [&](const auto& p) { return p.first == c.name; });
    if (it == taxonomy_files.end()) throw ConfigError("no taxonomy given for column '" + c.name + "'");
    c.taxonomy_path = it->second;
  }
  std::istringstream in(buffered);
  return ingest(in, s);
}

TransactionDB ingest_quantitative(std::istream& csv, const Schema& schema) { return ingest(csv, schema); }

TransactionDB load_dataset(const std::string& csv_path, const std::string& schema_path) {
  std::ifstream f(csv_path);
  if (!f) throw ConfigError("cannot open '" + csv_path + "'");
  if (schema_path.empty()) return ingest_binary(f);
  return ingest(f, Schema::load(schema_path));
}

TransactionDB negative_encode(const TransactionDB& binary) {
  const auto& P = binary.space();
  std::vector<FactorPoset> factors;
  for (std::size_t i = 0; i < P.dimension(); ++i) {
    const auto& f = P.factor(i);
    if (f.size() != 2 || f.kind() != PosetKind::chain || f.is_dual())
      throw PreconditionError("negative encoding needs binary factors");
    factors.push_back(FactorPoset::bottomed_antichain("*", {"+", "-"}));
  }
  std::vector<ElementVector> rows;
  for (const auto& row : binary.rows()) {
    ElementVector e;
    for (NodeId c : row) e.coords.push_back(c == 1 ? 1 : 2);
    rows.push_back(std::move(e));
  }
  std::vector<Attribute> attrs = binary.attributes();
  for (auto& a : attrs) a.kind = AttributeKind::signed_item;
  return TransactionDB(ProductPoset(std::move(factors)), std::move(rows), std::move(attrs));
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

void write_csv(const TransactionDB& db, std::ostream& out) {
  const auto& attrs = db.attributes();
  for (std::size_t k = 0; k < attrs.size(); ++k) out << (k ? "," : "") << quote(attrs[k].name);
  out << "\n";
  for (const auto& row : db.rows()) {
    for (std::size_t k = 0; k < attrs.size(); ++k) {
      const auto& a = attrs[k];
      const auto& f = db.space().factor(a.first_factor);
      const NodeId v = row[a.first_factor];
      std::string cell;
      switch (a.kind) {
        case AttributeKind::quantitative:
          cell = a.quantitative->scale().format(a.quantitative->left_value(v));
          break;
        case AttributeKind::interval: {
          const auto& iv = a.intervals->node_interval[v];
          cell = iv ? a.intervals->scale.format(iv->lo) + "-" + a.intervals->scale.format(iv->hi) : "-";
          break;
        }
        case AttributeKind::categorical:
        case AttributeKind::taxonomy:
          cell = v == f.bottom() ? "" : f.label(v);
          break;
        default:
          cell = f.label(v);
      }
      out << (k ? "," : "") << quote(cell);
    }
    out << "\n";
  }
}

}  // namespace pmine
