#include "walks/io.hpp"

#include <json.hpp>

#include <cctype>
#include <istream>
#include <sstream>

namespace walks {

namespace {

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

int parse_int(const std::string& s) {
  size_t pos = 0;
  int v;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw io_error("bad integer: " + s);
  }
  if (pos != s.size()) throw io_error("bad integer: " + s);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string counts_csv(const std::vector<Rat>& counts) {
  std::ostringstream out;
  out << "n,count\n";
  for (size_t n = 0; n < counts.size(); ++n) out << n << "," << counts[n].get_str() << "\n";
  return out.str();
}

std::vector<Rat> descale(const std::vector<Int>& counts, long scale) {
  std::vector<Rat> out;
  out.reserve(counts.size());
  for (const Int& c : counts) {
    Rat r(c, Int(scale));
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

std::vector<Rat> parse_counts_csv(std::istream& in) {
  std::vector<Rat> out;
  std::string line;
  bool first_data = true;
  while (std::getline(in, line)) {
    std::string t = trimmed(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> cells = split(t, ',');
    std::string value = trimmed(cells.back());
    if (first_data) {
      first_data = false;
      // skip a header row such as "n,count"
      bool header = false;
      for (char c : value)
        if (!(std::isdigit((unsigned char)c) || c == '-' || c == '/')) header = true;
      if (header) continue;
    }
    if (cells.size() > 2) throw io_error("too many columns: " + t);
    if (cells.size() == 2) {
      int n = parse_int(trimmed(cells[0]));
      if (n != (int)out.size()) throw io_error("rows must be consecutive from n=0");
    }
    out.push_back(rat_of_string(value));
  }
  if (out.empty()) throw io_error("no data rows in input");
  return out;
}

std::string series_json(const SQ& s) {
  nlohmann::json j = nlohmann::json::array();
  for (int n = 0; n <= s.order; ++n) j.push_back(s.c[n].get_str());
  return j.dump();
}

std::string series_json(const SLX& s) {
  nlohmann::json j = nlohmann::json::array();
  for (int n = 0; n <= s.order; ++n) {
    nlohmann::json row = nlohmann::json::array();
    const LX& l = s.c[n];
    for (int e = l.deg_lo(); e <= l.deg_hi(); ++e)
      if (!is_zero(l.coeff(e))) row.push_back({{"i", e}, {"c", l.coeff(e).get_str()}});
    j.push_back(std::move(row));
  }
  return j.dump();
}

StartDistribution parse_start(const std::string& text) {
  std::vector<std::tuple<int, int, Rat>> pts;
  Int den(1);
  for (const std::string& raw : split(text, ';')) {
    std::string entry = trimmed(raw);
    if (entry.empty()) continue;
    std::vector<std::string> head = split(entry, ':');
    if (head.size() > 2) throw io_error("bad start entry: " + entry);
    std::vector<std::string> ij = split(head[0], ',');
    if (ij.size() != 2) throw io_error("bad start point: " + head[0]);
    Rat w(1);
    if (head.size() == 2) w = rat_of_string(trimmed(head[1]));
    pts.emplace_back(parse_int(trimmed(ij[0])), parse_int(trimmed(ij[1])), w);
    den = lcm(den, Int(w.get_den()));
  }
  if (pts.empty()) throw io_error("empty start distribution");
  if (!den.fits_slong_p()) throw io_error("start scale too large");
  StartDistribution d;
  d.scale = den.get_si();
  for (auto& [i, j, w] : pts) {
    Rat scaled = w * Rat(den);
    Int num(scaled.get_num());
    if (!num.fits_slong_p()) throw io_error("start weight too large");
    d.entries.emplace_back(i, j, num.get_si());
  }
  return d;
}

std::pair<int, int> parse_point(const std::string& text) {
  std::vector<std::string> ij = split(trimmed(text), ',');
  if (ij.size() != 2) throw io_error("bad point: " + text);
  return {parse_int(trimmed(ij[0])), parse_int(trimmed(ij[1]))};
}

}  // namespace walks
