#pragma once
// Textual formats shared by the CLI: CSV count sequences, JSON series dumps,
// and parsers for start distributions and coefficient files.

#include <iosfwd>
#include <string>
#include <vector>

#include "walks/enumerate.hpp"

namespace walks {

struct io_error : ring_error {
  using ring_error::ring_error;
};

// header "n,count", one exact value per line ("p" or "p/q", no exponents)
std::string counts_csv(const std::vector<Rat>& counts);
// scaled integer counts divided by the start-distribution scale
std::vector<Rat> descale(const std::vector<Int>& counts, long scale);

// Accepts '#' comment lines, an optional "n,count"-style header, and rows
// that are either "n,value" or a bare value per line.
std::vector<Rat> parse_counts_csv(std::istream& in);

// JSON array of exact coefficient strings ["1", "-2/3", ...]
std::string series_json(const SQ& s);
// JSON array (one entry per t-order) of {"i": exponent, "c": "p/q"} lists
std::string series_json(const SLX& s);

// "a,b[:w/s]" entries separated by ';', e.g. "0,0:2/3;-2,0:-1/3".
// Weights default to 1; the common denominator becomes the scale.
StartDistribution parse_start(const std::string& text);

// "i,j" -> endpoint pair
std::pair<int, int> parse_point(const std::string& text);

}  // namespace walks
