#include "infodep/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "infodep/error.hpp"

namespace infodep {

namespace {

std::string where(const std::string& source, std::size_t line, std::size_t col) {
  return source + ":" + std::to_string(line) + ":" + std::to_string(col);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  return in;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

CsvRecords parse_csv(std::istream& in, const std::string& source) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CsvRecords out;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false, field_quoted = false, row_has_content = false;
  std::size_t line = 1, row_line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_quoted = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.size() == 1 && row[0].empty() && !row_has_content;
    if (!blank) {
      out.rows.push_back(std::move(row));
      out.lines.push_back(row_line);
    }
    row.clear();
    row_has_content = false;
  };

  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (in_quotes) {
      if (c == '"') {
        if (k + 1 < text.size() && text[k + 1] == '"') {
          field += '"';
          ++k;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_quoted)
          fail(ErrorKind::ParseError, where(source, line, row.size() + 1) + ": stray quote");
        in_quotes = field_quoted = row_has_content = true;
        break;
      case ',':
        end_field();
        row_has_content = true;
        break;
      case '\r':
        if (k + 1 < text.size() && text[k + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        end_row();
        ++line;
        row_line = line;
        break;
      default:
        field += c;
        row_has_content = true;
    }
  }
  if (in_quotes) fail(ErrorKind::ParseError, where(source, line, row.size() + 1) + ": unterminated quote");
  if (!field.empty() || !row.empty() || row_has_content) end_row();
  return out;
}

bool parse_number(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = first + text.size();
  if (*first == '+') ++first;  // from_chars rejects an explicit plus sign
  if (first == last) return false;
  const auto res = std::from_chars(first, last, out, std::chars_format::general);
  return res.ec == std::errc() && res.ptr == last;
}

SampleTable read_table_csv(std::istream& in, const std::string& source, const TableHints& hints) {
  const auto rec = parse_csv(in, source);
  if (rec.rows.empty()) fail(ErrorKind::EmptyFile, source + ": file is empty");
  const auto& header = rec.rows[0];
  if (rec.rows.size() < 2) fail(ErrorKind::EmptyFile, source + ": header but no data rows");
  const std::size_t ncol = header.size();
  for (std::size_t c = 0; c < ncol; ++c)
    if (header[c].empty()) fail(ErrorKind::ParseError, where(source, rec.lines[0], c + 1) + ": empty column name");

  for (std::size_t r = 1; r < rec.rows.size(); ++r) {
    if (rec.rows[r].size() != ncol)
      fail(ErrorKind::ParseError, where(source, rec.lines[r], std::min(rec.rows[r].size(), ncol) + 1) + ": expected " +
                                      std::to_string(ncol) + " fields, found " + std::to_string(rec.rows[r].size()));
    for (std::size_t c = 0; c < ncol; ++c)
      if (rec.rows[r][c].empty()) fail(ErrorKind::ParseError, where(source, rec.lines[r], c + 1) + ": empty cell");
  }

  SampleTable table;
  for (std::size_t c = 0; c < ncol; ++c) {
    std::vector<double> nums;
    bool numeric = !hints.categorical.count(header[c]);
    for (std::size_t r = 1; numeric && r < rec.rows.size(); ++r) {
      double v;
      if (!parse_number(rec.rows[r][c], v)) numeric = false;
      else nums.push_back(v);
    }
    if (numeric) {
      for (std::size_t k = 0; k < nums.size(); ++k)
        if (!std::isfinite(nums[k]))
          fail(ErrorKind::ParseError, where(source, rec.lines[k + 1], c + 1) + ": non-finite value '" +
                                          rec.rows[k + 1][c] + "' in numeric column '" + header[c] + "'");
      table.add_numeric(header[c], std::move(nums));
    } else {
      std::vector<std::string> text;
      for (std::size_t r = 1; r < rec.rows.size(); ++r) text.push_back(rec.rows[r][c]);
      table.add_categorical(header[c], std::move(text));
    }
  }
  return table;
}

SampleTable ingest_table(const std::string& path, const TableHints& hints) {
  auto in = open_input(path);
  return read_table_csv(in, path, hints);
}

void write_table_csv(const SampleTable& table, std::ostream& out) {
  const auto& cols = table.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << quote_if_needed(cols[c].name);
  out << '\n';
  for (std::size_t i = 0; i < table.n(); ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out << ',';
      if (cols[c].kind() == ColumnKind::Numeric) out << format_number(cols[c].numeric()[i]);
      else out << quote_if_needed(cols[c].categorical()[i]);
    }
    out << '\n';
  }
}

CurveSetd read_curves_csv(std::istream& in, const std::string& source, const CurveReadOptions& options) {
  const auto rec = parse_csv(in, source);
  if (rec.rows.empty()) fail(ErrorKind::EmptyFile, source + ": file is empty");
  const std::size_t m = rec.rows[0].size();
  Eigen::MatrixXd rows(rec.rows.size(), m);
  for (std::size_t r = 0; r < rec.rows.size(); ++r) {
    if (rec.rows[r].size() != m)
      fail(ErrorKind::RaggedRows, where(source, rec.lines[r], 1) + ": row has " + std::to_string(rec.rows[r].size()) +
                                      " values, expected " + std::to_string(m));
    for (std::size_t a = 0; a < m; ++a) {
      double v;
      if (!parse_number(rec.rows[r][a], v) || !std::isfinite(v))
        fail(ErrorKind::ParseError, where(source, rec.lines[r], a + 1) + ": '" + rec.rows[r][a] + "' is not a finite number");
      rows(Eigen::Index(r), Eigen::Index(a)) = v;
    }
  }
  Eigen::VectorXd grid;
  Eigen::MatrixXd values;
  if (options.uniform_grid) {
    grid = CurveSetd::uniform_grid(Eigen::Index(m));
    values = rows;
  } else {
    if (rows.rows() < 2) fail(ErrorKind::EmptyFile, source + ": grid row but no curves");
    grid = rows.row(0).transpose();
    values = rows.bottomRows(rows.rows() - 1);
  }
  return CurveSetd(std::move(grid), std::move(values), source);
}

CurveSetd ingest_curves(const std::string& path, const CurveReadOptions& options) {
  auto in = open_input(path);
  return read_curves_csv(in, path, options);
}

void write_curves_csv(const CurveSetd& curves, std::ostream& out) {
  auto line = [&](const auto& v) {
    for (Eigen::Index a = 0; a < v.size(); ++a) out << (a ? "," : "") << format_number(v(a));
    out << '\n';
  };
  line(curves.grid());
  for (Eigen::Index i = 0; i < curves.n(); ++i) line(curves.values().row(i));
}

CurveSetd resample_linear(const CurveSetd& curves, const Eigen::VectorXd& grid) {
  const auto& src = curves.grid();
  const Eigen::Index m = src.size();
  Eigen::MatrixXd out(curves.n(), grid.size());
  for (Eigen::Index b = 0; b < grid.size(); ++b) {
    const double t = grid(b);
    // Segment [a, a+1] containing t, clamped to the end segments.
    const auto it = std::upper_bound(src.data(), src.data() + m, t);
    const Eigen::Index a = std::clamp<Eigen::Index>(Eigen::Index(it - src.data()) - 1, 0, m - 2);
    const double f = (t - src(a)) / (src(a + 1) - src(a));
    out.col(b) = (1.0 - f) * curves.values().col(a) + f * curves.values().col(a + 1);
  }
  return CurveSetd(grid, std::move(out), curves.name());
}

JointPmfd read_pmf_csv(std::istream& in, const std::string& source) {
  const auto rec = parse_csv(in, source);
  if (rec.rows.empty()) fail(ErrorKind::EmptyFile, source + ": file is empty");
  const auto& header = rec.rows[0];
  if (header.size() != 3 || header[0] != "x" || header[1] != "y" || (header[2] != "prob" && header[2] != "count"))
    fail(ErrorKind::ParseError, where(source, rec.lines[0], 1) + ": pmf header must be x,y,prob or x,y,count");
  if (rec.rows.size() < 2) fail(ErrorKind::EmptyFile, source + ": no pmf cells");
  const bool counts = header[2] == "count";

  struct Cell {
    std::string x, y;
    double p;
  };
  std::vector<Cell> cells;
  for (std::size_t r = 1; r < rec.rows.size(); ++r) {
    const auto& row = rec.rows[r];
    if (row.size() != 3)
      fail(ErrorKind::ParseError, where(source, rec.lines[r], 1) + ": expected 3 fields, found " + std::to_string(row.size()));
    double p;
    if (!parse_number(row[2], p) || !std::isfinite(p) || p < 0.0)
      fail(ErrorKind::ParseError, where(source, rec.lines[r], 3) + ": '" + row[2] + "' is not a nonnegative number");
    cells.push_back({row[0], row[1], p});
  }

  auto ordered = [](std::vector<std::string> labels) {
    bool numeric = true;
    double v;
    for (const auto& l : labels) numeric = numeric && parse_number(l, v);
    if (numeric) {
      std::stable_sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
        double va, vb;
        parse_number(a, va);
        parse_number(b, vb);
        return va < vb;
      });
    }
    return std::make_pair(labels, numeric);
  };
  std::vector<std::string> xs, ys;
  for (const auto& c : cells) {
    if (std::find(xs.begin(), xs.end(), c.x) == xs.end()) xs.push_back(c.x);
    if (std::find(ys.begin(), ys.end(), c.y) == ys.end()) ys.push_back(c.y);
  }
  const auto [x_labels, x_numeric] = ordered(xs);
  const auto [y_labels, y_numeric] = ordered(ys);
  (void)x_numeric;

  Eigen::MatrixXd probs = Eigen::MatrixXd::Zero(Eigen::Index(x_labels.size()), Eigen::Index(y_labels.size()));
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto i = std::find(x_labels.begin(), x_labels.end(), cells[k].x) - x_labels.begin();
    const auto j = std::find(y_labels.begin(), y_labels.end(), cells[k].y) - y_labels.begin();
    if (probs(i, j) != 0.0)
      fail(ErrorKind::ParseError, where(source, rec.lines[k + 1], 1) + ": duplicate cell (" + cells[k].x + "," + cells[k].y + ")");
    probs(i, j) = cells[k].p;
  }
  std::optional<Eigen::VectorXd> codes;
  if (y_numeric) {
    Eigen::VectorXd c(Eigen::Index(y_labels.size()));
    for (std::size_t j = 0; j < y_labels.size(); ++j) parse_number(y_labels[j], c(Eigen::Index(j)));
    codes = c;
  }
  if (counts) return JointPmfd::from_counts(x_labels, y_labels, probs, codes);
  return JointPmfd(x_labels, y_labels, probs, codes);
}

JointPmfd ingest_pmf(const std::string& path) {
  auto in = open_input(path);
  return read_pmf_csv(in, path);
}

void write_pmf_csv(const JointPmfd& joint, std::ostream& out) {
  out << "x,y,prob\n";
  for (Eigen::Index i = 0; i < joint.nx(); ++i)
    for (Eigen::Index j = 0; j < joint.ny(); ++j)
      out << quote_if_needed(joint.x_labels()[i]) << ',' << quote_if_needed(joint.y_labels()[j]) << ','
          << format_number(joint.probs()(i, j)) << '\n';
}

}  // namespace infodep
