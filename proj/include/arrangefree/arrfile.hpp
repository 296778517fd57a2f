#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "arrangefree/lattice.hpp"

namespace arrangefree {

// Text format:
//   arrangement <l> [affine]
//   <l rationals per line>            (l+1 with trailing constant in affine mode)
// '#' starts a comment; blank lines are skipped.
struct ParsedArrangement {
  int ambient_dim = 0;
  bool affine = false;
  std::vector<Hyperplane> central_rows;
  std::vector<AffineHyperplane> affine_rows;

  Arrangement central() const {
    if (affine) throw Error("affine input must be coned before central operations");
    return Arrangement(ambient_dim, central_rows);
  }

  // Central arrangement for analysis: the identity for central input, the
  // cone for affine input.
  Arrangement coned() const {
    if (!affine) return central();
    return cone(affine_rows, ambient_dim);
  }
};

inline ParsedArrangement parse_arrangement_text(std::istream& in) {
  ParsedArrangement out;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<std::pair<std::string, int>> seen;  // canonical key -> first line

  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;

    if (!header_seen) {
      if (toks[0] != "arrangement" || toks.size() < 2 || toks.size() > 3)
        throw ParseError(line_no, "expected header 'arrangement <l> [affine]'");
      try {
        out.ambient_dim = std::stoi(toks[1]);
      } catch (...) {
        throw ParseError(line_no, "invalid ambient dimension '" + toks[1] + "'");
      }
      if (out.ambient_dim < 1) throw ParseError(line_no, "ambient dimension must be positive");
      if (toks.size() == 3) {
        if (toks[2] != "affine") throw ParseError(line_no, "unknown header flag '" + toks[2] + "'");
        out.affine = true;
      }
      header_seen = true;
      continue;
    }

    const size_t want = static_cast<size_t>(out.ambient_dim) + (out.affine ? 1 : 0);
    if (toks.size() != want)
      throw ParseError(line_no, "expected " + std::to_string(want) + " entries, got " +
                                    std::to_string(toks.size()));
    std::vector<Rat> vals;
    vals.reserve(toks.size());
    for (const auto& tok : toks) {
      try {
        vals.push_back(parse_rat(tok));
      } catch (const Error&) {
        throw ParseError(line_no, "cannot parse rational '" + tok + "'");
      }
    }

    if (out.affine) {
      std::vector<Rat> normal(vals.begin(), vals.end() - 1);
      std::vector<Int> cleared = clear_denominators(vals);
      bool normal_zero = true;
      for (size_t i = 0; i + 1 < vals.size(); ++i)
        if (vals[i] != 0) normal_zero = false;
      if (normal_zero)
        throw ZeroNormalError("line " + std::to_string(line_no) + ": zero normal");
      std::ostringstream key;
      for (const Int& x : cleared) key << x.get_str() << ' ';
      for (const auto& [k, ln] : seen)
        if (k == key.str())
          throw DuplicateHyperplaneError("lines " + std::to_string(ln) + " and " +
                                         std::to_string(line_no) + " define the same hyperplane");
      seen.emplace_back(key.str(), line_no);
      out.affine_rows.push_back({std::move(normal), vals.back()});
    } else {
      bool zero = true;
      for (const Rat& v : vals)
        if (v != 0) zero = false;
      if (zero) throw ZeroNormalError("line " + std::to_string(line_no) + ": zero normal");
      Hyperplane h = Hyperplane::from_rational(vals);
      for (const auto& [k, ln] : seen)
        if (k == h.key())
          throw DuplicateHyperplaneError("lines " + std::to_string(ln) + " and " +
                                         std::to_string(line_no) + " define the same hyperplane");
      seen.emplace_back(h.key(), line_no);
      out.central_rows.push_back(std::move(h));
    }
  }
  if (!header_seen) throw ParseError(line_no, "missing 'arrangement' header");
  return out;
}

inline ParsedArrangement parse_arrangement_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_arrangement_text(in);
}

inline std::string write_arrangement_text(const Arrangement& a) {
  std::ostringstream os;
  os << "arrangement " << a.ambient_dim() << "\n";
  for (const auto& h : a.hyperplanes()) {
    bool first = true;
    for (const Int& x : h.normal()) {
      if (!first) os << ' ';
      os << x.get_str();
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

// Stable content digest of the canonical hyperplane multiset (FNV-1a).
inline std::string arrangement_digest(const Arrangement& a) {
  const std::string& key = a.key();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace arrangefree
