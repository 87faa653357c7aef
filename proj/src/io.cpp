#include "qiline/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace qiline {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

std::string serialize(const FinitePLMap& f) {
  std::ostringstream os;
  os << "left_slope = " << f.left_slope() << '\n';
  os << "right_slope = " << f.right_slope() << '\n';
  if (f.is_affine()) os << "intercept = " << f.intercept() << '\n';
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i)
    os << '(' << f.breakpoints()[i] << ", " << f.values()[i] << ")\n";
  return os.str();
}

namespace {

std::size_t first_non_blank(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

std::string_view strip_comment(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
    line.remove_suffix(1);
  return line;
}

Rational parse_at(std::string_view token, std::size_t line, std::size_t column) {
  try {
    return Rational::parse(token);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, column, e.what());
  }
}

}  // namespace

FinitePLMap parse_pl_map(std::string_view text) {
  std::optional<Rational> left, right, intercept;
  std::vector<Rational> xs, ys;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    const std::string_view line = strip_comment(raw);
    const std::size_t start = first_non_blank(line);
    if (start == line.size()) continue;
    const std::string_view body = line.substr(start);
    const std::size_t col = start + 1;

    if (body.front() == '(') {
      if (body.back() != ')') throw ParseError(line_no, col + body.size() - 1, "expected ')'");
      const std::string_view inner = body.substr(1, body.size() - 2);
      const auto comma = inner.find(',');
      if (comma == std::string_view::npos)
        throw ParseError(line_no, col + 1, "expected '(x, y)' point");
      xs.push_back(parse_at(inner.substr(0, comma), line_no, col + 1));
      ys.push_back(parse_at(inner.substr(comma + 1), line_no, col + comma + 2));
      continue;
    }

    const auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(line_no, col, "expected 'key = value' or '(x, y)'");
    std::string_view key = body.substr(0, eq);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.remove_suffix(1);
    const Rational value = parse_at(body.substr(eq + 1), line_no, col + eq + 1);
    std::optional<Rational>* slot = nullptr;
    if (key == "left_slope")
      slot = &left;
    else if (key == "right_slope")
      slot = &right;
    else if (key == "intercept")
      slot = &intercept;
    else
      throw ParseError(line_no, col, "unknown key '" + std::string(key) + "'");
    if (slot->has_value()) throw ParseError(line_no, col, "duplicate key '" + std::string(key) + "'");
    *slot = value;
  }

  if (!left) throw ParseError(line_no + 1, 1, "missing left_slope");
  if (!right) throw ParseError(line_no + 1, 1, "missing right_slope");
  if (xs.empty()) {
    if (!intercept) throw ParseError(line_no + 1, 1, "map without points needs an intercept");
    if (*left != *right) throw InvariantError("affine map needs left_slope == right_slope");
    return FinitePLMap::affine(*left, *intercept);
  }
  if (intercept) throw InvariantError("intercept is only allowed for maps without points");
  return FinitePLMap::from_points(std::move(xs), std::move(ys), *left, *right);
}

std::vector<RationalPair> parse_pairs(std::string_view text) {
  std::vector<RationalPair> out;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string line(strip_comment(text.substr(0, nl)));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    for (char& c : line)
      if (c == ',' || c == '\t') c = ' ';
    std::istringstream is(line);
    std::string a, b, extra;
    if (!(is >> a)) continue;
    if (!(is >> b) || (is >> extra)) {
      if (!seen_data) {
        seen_data = true;
        continue;
      }
      throw ParseError(line_no, 1, "expected exactly two columns");
    }
    try {
      out.emplace_back(Rational::parse(a), Rational::parse(b));
    } catch (const std::invalid_argument& e) {
      if (!seen_data) {
        seen_data = true;  // header row
        continue;
      }
      throw ParseError(line_no, 1, e.what());
    }
    seen_data = true;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
}

}  // namespace qiline
