#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace infodep {

enum class ColumnKind { Numeric, Categorical };

struct Column {
  std::string name;
  std::variant<std::vector<double>, std::vector<std::string>> data;

  ColumnKind kind() const {
    return std::holds_alternative<std::vector<double>>(data) ? ColumnKind::Numeric : ColumnKind::Categorical;
  }
  std::size_t size() const;
  const std::vector<double>& numeric() const;
  const std::vector<std::string>& categorical() const;
};

/// Column-labeled tabular sample; every column has the same length n >= 1.
class SampleTable {
 public:
  void add_numeric(std::string name, std::vector<double> values);
  void add_categorical(std::string name, std::vector<std::string> values);

  std::size_t n() const { return n_; }
  const std::vector<Column>& columns() const { return columns_; }
  bool has(const std::string& name) const;
  /// Throws UnknownColumn.
  const Column& column(const std::string& name) const;

  bool operator==(const SampleTable& other) const;

 private:
  void add(Column column);

  std::vector<Column> columns_;
  std::size_t n_ = 0;
};

/// Category membership of every row: `codes[i]` indexes `labels`. Numeric
/// columns sort by value, categorical ones lexicographically.
struct Grouping {
  std::vector<std::size_t> codes;
  std::vector<std::string> labels;
  std::size_t groups() const { return labels.size(); }
};

Grouping categorize(const Column& column);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

}  // namespace infodep
