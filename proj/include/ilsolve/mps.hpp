#ifndef ILSOLVE_MPS_HPP_
#define ILSOLVE_MPS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ilsolve/model.hpp"

namespace ilsolve {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Raw records of a free-format MPS file, before normalization. Line numbers
/// are kept for diagnostics.
struct MpsDocument {
  std::string name;
  bool maximize = false;

  struct Row {
    char type;  // 'N', 'L', 'G', 'E'
    std::string name;
    int line;
  };
  struct Entry {
    std::string col, row;
    double value;
    int line;
  };
  struct RhsRec {
    std::string row;
    double value;
    int line;
  };
  struct RangeRec {
    std::string row;
    double value;
    int line;
  };
  struct BoundRec {
    std::string type, col;
    double value;
    bool has_value;
    int line;
  };

  std::vector<Row> rows;
  std::vector<Entry> entries;
  std::vector<RhsRec> rhs;
  std::vector<RangeRec> ranges;
  std::vector<BoundRec> bounds;

  std::vector<std::string> col_order;  // first appearance in COLUMNS
  std::unordered_map<std::string, bool> col_integer;  // via INTORG markers
};

/// Tokenizes the file into records. Throws ParseError on malformed lines and
/// UnsupportedError on sections outside the supported subset (SOS, indicator
/// rows, quadratic sections, semicontinuous bounds).
MpsDocument parse_document(std::string_view text);

/// Normalizes a document into A.x <= b form: G rows negated, E rows and
/// RANGES expanded into row pairs, MAX objectives negated (with the sense
/// recorded), duplicate coefficients summed, fractional bounds rounded
/// inward. Every variable must be integer, declared via markers or an
/// integer bound type (LI/UI/BV/FX); otherwise UnsupportedError.
Instance build_instance(const MpsDocument& doc);

Instance parse_mps(std::string_view text);
Instance parse_mps_file(const std::string& path);

/// Solution text: an "=obj= <value>" header (objective in the instance's
/// original sense) followed by one "name value" line per variable.
std::string write_solution(const Instance& inst, const Assignment& a,
                           double internal_obj);

}  // namespace ilsolve

#endif  // ILSOLVE_MPS_HPP_
