#include "infodep/sample_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "infodep/error.hpp"

namespace infodep {

std::size_t Column::size() const {
  return std::visit([](const auto& v) { return v.size(); }, data);
}

const std::vector<double>& Column::numeric() const {
  if (kind() != ColumnKind::Numeric) fail(ErrorKind::InvalidArgument, "column '" + name + "' is not numeric");
  return std::get<std::vector<double>>(data);
}

const std::vector<std::string>& Column::categorical() const {
  if (kind() != ColumnKind::Categorical)
    fail(ErrorKind::InvalidArgument, "column '" + name + "' is not categorical");
  return std::get<std::vector<std::string>>(data);
}

void SampleTable::add_numeric(std::string name, std::vector<double> values) {
  for (double v : values)
    if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "column '" + name + "' has a non-finite value");
  add(Column{std::move(name), std::move(values)});
}

void SampleTable::add_categorical(std::string name, std::vector<std::string> values) {
  add(Column{std::move(name), std::move(values)});
}

void SampleTable::add(Column column) {
  if (column.size() == 0) fail(ErrorKind::EmptyInput, "column '" + column.name + "' is empty");
  if (has(column.name)) fail(ErrorKind::InvalidArgument, "duplicate column '" + column.name + "'");
  if (!columns_.empty() && column.size() != n_)
    fail(ErrorKind::LengthMismatch, "column '" + column.name + "' has " + std::to_string(column.size()) +
                                        " rows, expected " + std::to_string(n_));
  n_ = column.size();
  columns_.push_back(std::move(column));
}

bool SampleTable::has(const std::string& name) const {
  return std::any_of(columns_.begin(), columns_.end(), [&](const Column& c) { return c.name == name; });
}

const Column& SampleTable::column(const std::string& name) const {
  for (const auto& c : columns_)
    if (c.name == name) return c;
  fail(ErrorKind::UnknownColumn, "no column named '" + name + "'");
}

bool SampleTable::operator==(const SampleTable& other) const {
  if (n_ != other.n_ || columns_.size() != other.columns_.size()) return false;
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].name != other.columns_[i].name || columns_[i].data != other.columns_[i].data) return false;
  return true;
}

Grouping categorize(const Column& column) {
  Grouping g;
  g.codes.resize(column.size());
  if (column.kind() == ColumnKind::Numeric) {
    const auto& v = column.numeric();
    std::map<double, std::size_t> index;
    for (double x : v) index.emplace(x, 0);
    for (auto& [value, code] : index) {
      code = g.labels.size();
      g.labels.push_back(format_number(value));
    }
    for (std::size_t i = 0; i < v.size(); ++i) g.codes[i] = index.at(v[i]);
  } else {
    const auto& v = column.categorical();
    std::map<std::string, std::size_t> index;
    for (const auto& x : v) index.emplace(x, 0);
    for (auto& [label, code] : index) {
      code = g.labels.size();
      g.labels.push_back(label);
    }
    for (std::size_t i = 0; i < v.size(); ++i) g.codes[i] = index.at(v[i]);
  }
  return g;
}

std::string format_number(double v) {
  char buf[40];
  for (int precision : {15, 16, 17}) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace infodep
