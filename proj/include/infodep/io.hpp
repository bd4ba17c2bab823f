#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "infodep/functional.hpp"
#include "infodep/joint_pmf.hpp"
#include "infodep/sample_table.hpp"

namespace infodep {

/// Splits CSV text (comma separator, optional double quotes, LF or CRLF) into
/// records. Blank lines are skipped. `lines[r]` is the 1-based source line of
/// record r.
struct CsvRecords {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;
};
CsvRecords parse_csv(std::istream& in, const std::string& source);

/// Parses a complete decimal number (std::from_chars, general format).
bool parse_number(const std::string& text, double& out);

struct TableHints {
  std::set<std::string> categorical;  // keep these columns as text
};

/// Header row mandatory. A column is numeric when every cell parses as a
/// number; a non-finite number in such a column is a ParseError.
SampleTable read_table_csv(std::istream& in, const std::string& source, const TableHints& hints = {});
SampleTable ingest_table(const std::string& path, const TableHints& hints = {});
void write_table_csv(const SampleTable& table, std::ostream& out);

struct CurveReadOptions {
  /// No grid row: every row is a curve on the uniform grid over [0,1].
  bool uniform_grid = false;
};

/// Wide CSV. Without `uniform_grid` the first row holds the grid points.
CurveSetd read_curves_csv(std::istream& in, const std::string& source, const CurveReadOptions& options = {});
CurveSetd ingest_curves(const std::string& path, const CurveReadOptions& options = {});
void write_curves_csv(const CurveSetd& curves, std::ostream& out);

/// Linear interpolation onto `grid` (extrapolating from the end segments).
CurveSetd resample_linear(const CurveSetd& curves, const Eigen::VectorXd& grid);

/// Long format with header `x,y,prob` (or `x,y,count`, normalized). Labels keep
/// numeric order when every label is a number, else first-appearance order.
/// Numeric Y labels double as Y codes. Absent cells are 0.
JointPmfd read_pmf_csv(std::istream& in, const std::string& source);
JointPmfd ingest_pmf(const std::string& path);
void write_pmf_csv(const JointPmfd& joint, std::ostream& out);

}  // namespace infodep
