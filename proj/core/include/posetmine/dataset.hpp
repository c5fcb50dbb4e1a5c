#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posetmine/bitset.hpp"
#include "posetmine/interval_lattice.hpp"
#include "posetmine/poset.hpp"

namespace pmine {

enum class AttributeKind { binary, categorical, chain, taxonomy, quantitative, interval, signed_item };

const char* to_string(AttributeKind kind) noexcept;

/// A user-facing column and the factors it occupies in the product.
/// Quantitative columns occupy two chain factors (left and right endpoint).
struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::binary;
  std::size_t first_factor = 0;
  std::size_t factor_count = 1;
  std::shared_ptr<const QuantitativeSemilattice> quantitative;
  std::shared_ptr<const IntervalLattice> intervals;
};

struct SupportQueryResult {
  std::size_t count = 0;
  std::vector<std::size_t> witnesses;  // 0-based row ids, filled on request
};

/// A multiset of rows over a product poset, with per-factor row masks so that
/// support(p) is an AND of n bitsets followed by a popcount.
class TransactionDB {
 public:
  TransactionDB() = default;
  TransactionDB(ProductPoset space, std::vector<ElementVector> rows, std::vector<Attribute> attributes = {});

  const ProductPoset& space() const noexcept { return space_; }
  const std::vector<ElementVector>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::vector<Attribute>& attributes() const noexcept { return attributes_; }

  /// Rows q with q >= p, counted with multiplicity.
  SupportQueryResult support(const ElementVector& p, bool with_witnesses = false) const;
  std::size_t support_count(const ElementVector& p) const;
  /// Supports of a batch; `workers` > 1 splits the batch across threads.
  std::vector<std::size_t> support_counts(std::span<const ElementVector> batch, unsigned workers = 1) const;

  /// Rows q with q >= p and q != p.
  SupportQueryResult strict_support(const ElementVector& p, bool with_witnesses = false) const;
  /// Rows strictly above p in every coordinate.
  std::size_t interior_support(const ElementVector& p) const;
  /// Rows equal to p.
  std::size_t multiplicity(const ElementVector& p) const;

  Bitset support_mask(const ElementVector& p) const;
  /// Database restricted to the rows set in `keep`, same space.
  TransactionDB subset(const Bitset& keep) const;

  /// One display string per attribute (quantitative pairs rendered as intervals).
  std::vector<std::string> describe(const ElementVector& x) const;
  /// False when some quantitative chain pair encodes left > right.
  bool encodes_valid_intervals(const ElementVector& x) const;

 private:
  void build_masks();
  Bitset mask_and(const ElementVector& p, bool strict_every_coordinate) const;

  ProductPoset space_;
  std::vector<ElementVector> rows_;
  std::vector<Attribute> attributes_;
  std::vector<std::vector<Bitset>> at_least_;  // [factor][node] rows with coordinate >= node
  std::vector<std::vector<Bitset>> equal_;     // [factor][node] rows with coordinate == node
};

/// Absolute threshold for a support fraction: ceil(s * n), tolerant to decimal rounding.
std::size_t absolute_threshold(double fraction, std::size_t rows);

// ---------------------------------------------------------------------------
// Ingestion. CSV files have a header row; errors carry row and column.

struct ColumnSpec {
  std::string name;
  /// "id" (skipped), "binary", "categorical", "chain", "taxonomy", "quantitative", "interval".
  std::string kind;
  std::string taxonomy_path;              // taxonomy: child<TAB>parent file
  std::vector<std::string> chain_levels;  // chain: labels bottom first (inline)
  std::string chain_path;                 // chain: one label per line, bottom first
  ValueScale scale;                       // quantitative / interval
};

struct Schema {
  std::vector<ColumnSpec> columns;

  /// Parses the JSON sidecar. Relative file paths resolve against `base_dir`.
  static Schema from_json(std::istream& in, const std::string& base_dir = ".");
  static Schema load(const std::string& path);
};

/// Every column binary (0/1); a leading TID/ID column is skipped.
TransactionDB ingest_binary(std::istream& csv);
/// Columns whose cells name taxonomy nodes; empty or "-" cells map to the synthetic "Item" bottom.
TransactionDB ingest_taxonomy(std::istream& csv, const std::vector<std::pair<std::string, std::string>>& taxonomy_files);
/// Mixed quantitative / categorical / binary columns declared by the schema.
TransactionDB ingest_quantitative(std::istream& csv, const Schema& schema);
/// Interval cells "H:MM-H:MM", "-" for absent. All columns are intervals unless a TID column leads.
TransactionDB ingest_intervals(std::istream& csv, ValueScale scale = ValueScale::clock_minutes());
/// General schema-driven ingestion; all of the above route here.
TransactionDB ingest(std::istream& csv, const Schema& schema);
/// Loads a CSV file; with an empty schema path the data is read as binary.
TransactionDB load_dataset(const std::string& csv_path, const std::string& schema_path = {});

/// Taxonomy file: one `child<TAB>parent` edge per line. Adds a bottom "Item" below all roots.
FactorPoset read_taxonomy(std::istream& in);
/// Chain file: one label per line, bottom first.
FactorPoset read_chain(std::istream& in);

/// Replaces each binary factor by the star {*, +, -}: bit 1 -> +, bit 0 -> -.
TransactionDB negative_encode(const TransactionDB& binary);

/// Re-emits rows as CSV cells in ingestion syntax (normalized).
void write_csv(const TransactionDB& db, std::ostream& out);

/// Splits one CSV record (RFC 4180 quoting).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace pmine
