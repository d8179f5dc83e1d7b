#include "ilsolve/mps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "ilsolve/numeric.hpp"

namespace ilsolve {

namespace {

// Magnitudes at or above this are the customary "infinity" in MPS data.
constexpr double kMpsInf = 1e20;

std::string upper(std::string s) {
  for (char& c : s) c = (char)std::toupper((unsigned char)c);
  return s;
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '\'' && s.back() == '\'')
    return s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

double parse_number(const std::string& tok, int line) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == nullptr || *end != '\0' || end == tok.c_str())
    throw ParseError(line, "expected a number, got '" + tok + "'");
  return v;
}

enum class Section {
  none, name, objsense, rows, columns, rhs, ranges, bounds, endata
};

Section section_of(const std::string& word, int line) {
  std::string w = upper(word);
  if (w == "NAME") return Section::name;
  if (w == "OBJSENSE") return Section::objsense;
  if (w == "ROWS") return Section::rows;
  if (w == "COLUMNS") return Section::columns;
  if (w == "RHS") return Section::rhs;
  if (w == "RANGES") return Section::ranges;
  if (w == "BOUNDS") return Section::bounds;
  if (w == "ENDATA") return Section::endata;
  if (w == "SOS" || w == "INDICATORS" || w == "QUADOBJ" || w == "QMATRIX" ||
      w == "QCMATRIX" || w == "CSECTION" || w == "QSECTION")
    throw UnsupportedError("unsupported MPS section '" + word + "'");
  throw ParseError(line, "unknown section '" + word + "'");
}

bool is_sense_word(const std::string& w, bool& maximize) {
  std::string u = upper(w);
  if (u == "MAX" || u == "MAXIMIZE") {
    maximize = true;
    return true;
  }
  if (u == "MIN" || u == "MINIMIZE") {
    maximize = false;
    return true;
  }
  return false;
}

}  // namespace

MpsDocument parse_document(std::string_view text) {
  MpsDocument doc;
  Section section = Section::none;
  bool in_integers = false;
  std::unordered_map<std::string, bool> seen_col;

  std::istringstream stream{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(stream, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw[0] == '*') continue;

    if (!std::isspace((unsigned char)raw[0])) {
      std::vector<std::string> toks = tokenize(raw);
      section = section_of(toks[0], lineno);
      if (section == Section::name) {
        if (toks.size() > 1) doc.name = toks[1];
        continue;
      }
      if (section == Section::objsense && toks.size() > 1) {
        if (!is_sense_word(toks[1], doc.maximize))
          throw ParseError(lineno, "bad objective sense '" + toks[1] + "'");
        section = Section::none;
      }
      if (section == Section::endata) break;
      continue;
    }

    std::vector<std::string> toks = tokenize(raw);
    if (toks.empty()) continue;

    switch (section) {
      case Section::objsense: {
        if (!is_sense_word(toks[0], doc.maximize))
          throw ParseError(lineno, "bad objective sense '" + toks[0] + "'");
        break;
      }
      case Section::rows: {
        if (toks.size() != 2)
          throw ParseError(lineno, "ROWS record needs a type and a name");
        std::string t = upper(toks[0]);
        if (t != "N" && t != "L" && t != "G" && t != "E")
          throw ParseError(lineno, "unknown row type '" + toks[0] + "'");
        doc.rows.push_back({t[0], toks[1], lineno});
        break;
      }
      case Section::columns: {
        bool marker = false;
        for (const std::string& t : toks)
          if (unquote(t) == "MARKER") marker = true;
        if (marker) {
          for (const std::string& t : toks) {
            std::string m = unquote(t);
            if (m == "INTORG") in_integers = true;
            if (m == "INTEND") in_integers = false;
          }
          break;
        }
        if (toks.size() != 3 && toks.size() != 5)
          throw ParseError(lineno, "COLUMNS record needs 1 or 2 row/value pairs");
        const std::string& col = toks[0];
        if (!seen_col.count(col)) {
          seen_col[col] = true;
          doc.col_order.push_back(col);
        }
        if (in_integers) doc.col_integer[col] = true;
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2)
          doc.entries.push_back(
              {col, toks[k], parse_number(toks[k + 1], lineno), lineno});
        break;
      }
      case Section::rhs:
      case Section::ranges: {
        // A leading set name is present when the pair count leaves one spare
        // token; tolerate records written without one.
        std::size_t start = (toks.size() % 2 == 1) ? 1 : 0;
        if (toks.size() < start + 2)
          throw ParseError(lineno, "record needs row/value pairs");
        for (std::size_t k = start; k + 1 < toks.size(); k += 2) {
          double v = parse_number(toks[k + 1], lineno);
          if (section == Section::rhs)
            doc.rhs.push_back({toks[k], v, lineno});
          else
            doc.ranges.push_back({toks[k], v, lineno});
        }
        break;
      }
      case Section::bounds: {
        std::string type = upper(toks[0]);
        bool valued = type == "LO" || type == "UP" || type == "FX" ||
                      type == "LI" || type == "UI";
        bool valueless = type == "FR" || type == "MI" || type == "PL" ||
                         type == "BV";
        if (type == "SC")
          throw UnsupportedError("semicontinuous bounds are not supported");
        if (!valued && !valueless)
          throw ParseError(lineno, "unknown bound type '" + toks[0] + "'");
        if (valued) {
          if (toks.size() == 4)
            doc.bounds.push_back(
                {type, toks[2], parse_number(toks[3], lineno), true, lineno});
          else if (toks.size() == 3)  // set name omitted
            doc.bounds.push_back(
                {type, toks[1], parse_number(toks[2], lineno), true, lineno});
          else
            throw ParseError(lineno, "bound record needs a column and a value");
        } else {
          if (toks.size() == 3)
            doc.bounds.push_back({type, toks[2], 0.0, false, lineno});
          else if (toks.size() == 2)
            doc.bounds.push_back({type, toks[1], 0.0, false, lineno});
          else
            throw ParseError(lineno, "bound record needs a column");
        }
        break;
      }
      case Section::name:
        if (doc.name.empty()) doc.name = toks[0];
        break;
      case Section::none:
        throw ParseError(lineno, "data before any section header");
      case Section::endata:
        break;
    }
  }
  return doc;
}

namespace {

Value inward_lower(double v, int line) {
  if (v <= -kMpsInf) return kNegInf;
  if (v >= kMpsInf) throw ParseError(line, "infinite lower bound on the wrong side");
  return (Value)std::llround(snapped_ceil(v));
}

Value inward_upper(double v, int line) {
  if (v >= kMpsInf) return kPosInf;
  if (v <= -kMpsInf) throw ParseError(line, "infinite upper bound on the wrong side");
  return (Value)std::llround(snapped_floor(v));
}

}  // namespace

Instance build_instance(const MpsDocument& doc) {
  // Objective row and row indices.
  int obj_row = -1;
  std::unordered_map<std::string, int> row_index;
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const MpsDocument::Row& row = doc.rows[r];
    if (row_index.count(row.name))
      throw ParseError(row.line, "duplicate row name '" + row.name + "'");
    row_index[row.name] = (int)r;
    if (row.type == 'N') {
      if (obj_row >= 0)
        throw ParseError(row.line, "more than one objective row");
      obj_row = (int)r;
    }
  }
  if (obj_row < 0) throw ParseError(0, "no objective row");

  // Variable order: COLUMNS appearance, then bound-only columns.
  std::unordered_map<std::string, int> var_index;
  std::vector<std::string> var_names = doc.col_order;
  for (std::size_t j = 0; j < var_names.size(); ++j)
    var_index[var_names[j]] = (int)j;
  for (const MpsDocument::BoundRec& b : doc.bounds)
    if (!var_index.count(b.col)) {
      var_index[b.col] = (int)var_names.size();
      var_names.push_back(b.col);
    }
  int n = (int)var_names.size();

  // Integrality: markers or an integer-typed bound record.
  std::vector<bool> integral(n, false);
  for (const auto& [col, flag] : doc.col_integer)
    if (flag && var_index.count(col)) integral[var_index[col]] = true;
  for (const MpsDocument::BoundRec& b : doc.bounds) {
    if (b.type == "LI" || b.type == "UI" || b.type == "BV" || b.type == "FX")
      integral[var_index[b.col]] = true;
  }
  for (int j = 0; j < n; ++j)
    if (!integral[j])
      throw UnsupportedError("continuous variable '" + var_names[j] +
                             "': only pure-integer programs are supported");

  // Coefficients, duplicates summed.
  std::vector<std::map<int, double>> row_coeffs(doc.rows.size());
  for (const MpsDocument::Entry& e : doc.entries) {
    auto rit = row_index.find(e.row);
    if (rit == row_index.end())
      throw ParseError(e.line, "unknown row '" + e.row + "'");
    row_coeffs[rit->second][var_index.at(e.col)] += e.value;
  }

  // Right-hand sides and ranges; a repeated record overrides.
  std::vector<double> rhs_of(doc.rows.size(), 0.0);
  std::vector<bool> has_range(doc.rows.size(), false);
  std::vector<double> range_of(doc.rows.size(), 0.0);
  double obj_rhs = 0.0;
  for (const MpsDocument::RhsRec& r : doc.rhs) {
    auto rit = row_index.find(r.row);
    if (rit == row_index.end())
      throw ParseError(r.line, "unknown row '" + r.row + "'");
    if (rit->second == obj_row)
      obj_rhs = r.value;
    else
      rhs_of[rit->second] = r.value;
  }
  for (const MpsDocument::RangeRec& r : doc.ranges) {
    auto rit = row_index.find(r.row);
    if (rit == row_index.end())
      throw ParseError(r.line, "unknown row '" + r.row + "'");
    if (rit->second == obj_row)
      throw ParseError(r.line, "range on the objective row");
    if (doc.rows[rit->second].type == 'N')
      throw ParseError(r.line, "range on a free row");
    has_range[rit->second] = true;
    range_of[rit->second] = r.value;
  }

  Instance inst;
  inst.num_vars = n;
  inst.var_names = var_names;
  inst.obj.assign(n, 0.0);
  for (const auto& [j, c] : row_coeffs[obj_row]) inst.obj[j] = c;

  inst.maximize = doc.maximize;
  inst.obj_constant = 0.0 - obj_rhs;  // 0.0 - 0.0 avoids a negative zero
  if (doc.maximize)
    for (double& c : inst.obj) c = -c;

  // Each row becomes the interval lo_b <= a.x <= hi_b, emitted as one or two
  // <=-rows. An absent side is infinite.
  auto emit = [&inst](const std::map<int, double>& coeffs, double bound,
                      bool upper_side, const std::string& name, int line) {
    Constraint con;
    for (const auto& [j, c] : coeffs) {
      if (c == 0.0) continue;
      con.terms.push_back({j, upper_side ? c : -c});
    }
    con.rhs = upper_side ? bound : -bound;
    if (con.terms.empty()) {
      if (con.rhs < 0.0)
        throw ParseError(line, "row '" + name + "' has no coefficients and is infeasible");
      return;  // trivially true
    }
    inst.rows.push_back(std::move(con));
    inst.con_names.push_back(name);
  };

  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const MpsDocument::Row& row = doc.rows[r];
    if ((int)r == obj_row) continue;
    if (row.type == 'N')
      throw ParseError(row.line, "more than one objective row");
    double b = rhs_of[r];
    double lo_b, hi_b;
    bool has_lo, has_hi;
    switch (row.type) {
      case 'L':
        hi_b = b; has_hi = true;
        has_lo = has_range[r];
        lo_b = b - std::fabs(range_of[r]);
        break;
      case 'G':
        lo_b = b; has_lo = true;
        has_hi = has_range[r];
        hi_b = b + std::fabs(range_of[r]);
        break;
      default:  // 'E'
        has_lo = has_hi = true;
        if (has_range[r] && range_of[r] >= 0.0) {
          lo_b = b; hi_b = b + range_of[r];
        } else if (has_range[r]) {
          lo_b = b + range_of[r]; hi_b = b;
        } else {
          lo_b = hi_b = b;
        }
        break;
    }
    if (has_hi) emit(row_coeffs[r], hi_b, true, row.name, row.line);
    if (has_lo)
      emit(row_coeffs[r], lo_b, false,
           has_hi ? row.name + "#ge" : row.name, row.line);
  }

  // Bounds, applied in file order over the integer default [0, +inf).
  inst.lower.assign(n, 0);
  inst.upper.assign(n, kPosInf);
  for (const MpsDocument::BoundRec& b : doc.bounds) {
    int j = var_index.at(b.col);
    const std::string& t = b.type;
    if (t == "LO" || t == "LI") {
      inst.lower[j] = inward_lower(b.value, b.line);
    } else if (t == "UP" || t == "UI") {
      inst.upper[j] = inward_upper(b.value, b.line);
    } else if (t == "FX") {
      inst.lower[j] = inward_lower(b.value, b.line);
      inst.upper[j] = inward_upper(b.value, b.line);
    } else if (t == "FR") {
      inst.lower[j] = kNegInf;
      inst.upper[j] = kPosInf;
    } else if (t == "MI") {
      inst.lower[j] = kNegInf;
    } else if (t == "PL") {
      inst.upper[j] = kPosInf;
    } else if (t == "BV") {
      inst.lower[j] = 0;
      inst.upper[j] = 1;
    }
    if (is_finite(inst.lower[j]) && is_finite(inst.upper[j]) &&
        inst.lower[j] > inst.upper[j])
      throw ParseError(b.line, "empty domain for '" + b.col + "'");
  }

  inst.finalize();
  return inst;
}

Instance parse_mps(std::string_view text) {
  return build_instance(parse_document(text));
}

Instance parse_mps_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mps(buf.str());
}

std::string write_solution(const Instance& inst, const Assignment& a,
                           double internal_obj) {
  char num[64];
  std::snprintf(num, sizeof num, "%.10g", inst.reported_objective(internal_obj));
  std::string out = "=obj= ";
  out += num;
  out += '\n';
  for (int j = 0; j < inst.num_vars; ++j) {
    out += inst.var_names[j];
    out += ' ';
    out += std::to_string(a[j]);
    out += '\n';
  }
  return out;
}

}  // namespace ilsolve
