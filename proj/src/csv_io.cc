#include "gtcorr/csv_io.h"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <vector>

#include "gtcorr/errors.h"

namespace gtcorr {
namespace {

constexpr std::array<const char*, 6> kColumns = {"x_algo",   "y_algo", "x_marked",
                                                 "y_marked", "x_real", "y_real"};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string at_line(long line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const char* first = t.data();
  const char* last = first + t.size();
  if (!t.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (t.empty() || ec != std::errc() || ptr != last) {
    throw ParseError("not a number: '" + t + "'");
  }
  if (!std::isfinite(value)) throw ParseError("non-finite value: '" + t + "'");
  return value;
}

Dataset parse_dataset_csv(std::istream& in) {
  std::string line;
  long line_no = 0;
  // Column slot (index into kColumns) for each header position.
  std::vector<int> slots;
  bool with_real = false;
  std::vector<Record> records;
  std::optional<bool> rows_have_real;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const std::vector<std::string> cells = split(content);

    if (slots.empty()) {
      std::array<bool, 6> seen{};
      for (const std::string& name : cells) {
        int slot = -1;
        for (int i = 0; i < 6; ++i) {
          if (name == kColumns[i]) slot = i;
        }
        if (slot < 0) throw ParseError(at_line(line_no) + "unknown column '" + name + "'", line_no);
        if (seen[slot]) throw ParseError(at_line(line_no) + "duplicate column '" + name + "'", line_no);
        seen[slot] = true;
        slots.push_back(slot);
      }
      for (int i = 0; i < 4; ++i) {
        if (!seen[i]) {
          throw ParseError(at_line(line_no) + "missing column '" + kColumns[i] + "'", line_no);
        }
      }
      if (seen[4] != seen[5]) {
        throw ParseError(at_line(line_no) + "x_real and y_real must appear together", line_no);
      }
      with_real = seen[4];
      continue;
    }

    if (cells.size() != slots.size()) {
      throw ParseError(at_line(line_no) + "expected " + std::to_string(slots.size()) +
                           " cells, found " + std::to_string(cells.size()),
                       line_no);
    }
    std::array<std::optional<double>, 6> values;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].empty() && slots[i] >= 4) continue;
      try {
        values[slots[i]] = parse_real(cells[i]);
      } catch (const ParseError& e) {
        throw ParseError(at_line(line_no) + "column " + kColumns[slots[i]] + ": " + e.what(),
                         line_no);
      }
    }
    const bool row_real = with_real && values[4] && values[5];
    if (with_real && (values[4].has_value() != values[5].has_value())) {
      throw ParseError(at_line(line_no) + "x_real and y_real must both be set or both empty",
                       line_no);
    }
    if (rows_have_real && *rows_have_real != row_real) {
      throw ParseError(at_line(line_no) + "real ground truth must be present on all rows or none",
                       line_no);
    }
    rows_have_real = row_real;
    Record r;
    r.algo = {*values[0], *values[1]};
    r.marked_gt = {*values[2], *values[3]};
    if (row_real) r.real_gt = Vec2{*values[4], *values[5]};
    records.push_back(r);
  }
  if (slots.empty()) throw ParseError("missing header line", line_no);
  return Dataset(std::move(records));
}

Dataset ingest_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return parse_dataset_csv(in);
}

void write_dataset_csv(std::ostream& out, const Dataset& d) {
  const bool with_real = d.has_real_gt();
  out << "x_algo,y_algo,x_marked,y_marked";
  if (with_real) out << ",x_real,y_real";
  out << '\n';
  char buf[32];
  auto put = [&](double v, bool last) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << (last ? '\n' : ',');
  };
  for (const Record& r : d.records()) {
    put(r.algo.x, false);
    put(r.algo.y, false);
    put(r.marked_gt.x, false);
    put(r.marked_gt.y, !with_real);
    if (with_real) {
      put(r.real_gt->x, false);
      put(r.real_gt->y, true);
    }
  }
}

}  // namespace gtcorr
